#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace intellichain::text {

// Lowercases ASCII letters, maps ASCII punctuation to a space, collapses
// whitespace runs to one space and trims both ends. Bytes >= 0x80 (UTF-8
// continuation and lead bytes) pass through unchanged.
std::string normalize(std::string_view input);

// Splits already-normalized text on single spaces.
std::vector<std::string> tokens(std::string_view normalized);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool ends_with_question(std::string_view utterance);

}  // namespace intellichain::text
