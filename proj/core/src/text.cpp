#include "intellichain/text.hpp"

#include <cctype>

namespace intellichain::text {

namespace {

bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string normalize(std::string_view input) {
  std::string out;
  out.reserve(input.size());
  bool pending_space = false;
  for (char ch : input) {
    auto c = static_cast<unsigned char>(ch);
    if (c < 0x80 && (is_ascii_space(c) || std::ispunct(c))) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : ch);
  }
  return out;
}

std::vector<std::string> tokens(std::string_view normalized) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < normalized.size()) {
    auto end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) out.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

bool ends_with_question(std::string_view utterance) {
  auto end = utterance.find_last_not_of(" \t\r\n");
  return end != std::string_view::npos && utterance[end] == '?';
}

}  // namespace intellichain::text
