#pragma once

#include <iosfwd>

namespace intellichain::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

//   kg validate <file>
//   kg query <file> --point <text> [--hops N] [--cap M]
//   tutor [--config F] [--graph F] [--problem F] [--mode agent_kg|agent_no_kg|no_agent]
//   ablate --graph F --problem F --script F --out F [--backend F] [--arms F]
//   serve --config F [--host H] [--port P]
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace intellichain::cli
