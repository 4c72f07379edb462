#include "intellichain/assessment.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <string>
#include <vector>

#include "intellichain/error.hpp"

namespace intellichain {

void validate_problem(const ProblemInstance& problem) {
  auto blank = std::all_of(problem.statement.begin(), problem.statement.end(),
                           [](unsigned char c) { return std::isspace(c) != 0; });
  if (blank) throw Error(ErrorCode::InvalidProblem, "problem statement is empty");
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Correct: return "correct";
    case Verdict::Partial: return "partial";
    case Verdict::Incorrect: return "incorrect";
    case Verdict::NoAttempt: return "no_attempt";
  }
  return "no_attempt";
}

std::optional<HeadsLegsSolution> solve_heads_legs(std::uint64_t heads, std::uint64_t legs) {
  // 2c + 4r = legs and c + r = heads give r = legs / 2 - heads, which must
  // lie in [0, heads]. Written without 2 * heads so it cannot overflow.
  if (legs % 2 != 0) return std::nullopt;
  const std::uint64_t half = legs / 2;
  if (half < heads || half - heads > heads) return std::nullopt;
  const std::uint64_t rabbits = half - heads;
  return HeadsLegsSolution{heads - rabbits, rabbits};
}

namespace {

// Digit runs; values too large for 64 bits saturate and never match.
std::vector<std::uint64_t> extract_integers(std::string_view s) {
  std::vector<std::uint64_t> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
      ++i;
      continue;
    }
    std::uint64_t value = 0;
    bool overflow = false;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      auto digit = static_cast<std::uint64_t>(s[i] - '0');
      if (value > (UINT64_MAX - digit) / 10) overflow = true;
      if (!overflow) value = value * 10 + digit;
      ++i;
    }
    out.push_back(overflow ? UINT64_MAX : value);
  }
  return out;
}

std::uint64_t coefficient(const std::string& digits) {
  if (digits.empty()) return 1;
  if (digits.size() > 18) return UINT64_MAX;
  return std::stoull(digits);
}

}  // namespace

bool states_constraint_equation(std::string_view turn_text, const ProblemInstance& problem) {
  std::string lowered;
  lowered.reserve(turn_text.size());
  for (char c : turn_text) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  static const std::regex kLinear(
      R"((\d*)\s*\*?\s*([a-z]+)\s*\+\s*(\d*)\s*\*?\s*([a-z]+)\s*=\s*(\d+))");
  for (auto it = std::sregex_iterator(lowered.begin(), lowered.end(), kLinear);
       it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[2].str() == m[4].str()) continue;
    const auto a = coefficient(m[1].str());
    const auto b = coefficient(m[3].str());
    const auto rhs = m[5].str().size() > 18 ? UINT64_MAX : std::stoull(m[5].str());
    if (a == 1 && b == 1 && rhs == problem.heads) return true;
    if (((a == 2 && b == 4) || (a == 4 && b == 2)) && rhs == problem.legs) return true;
  }
  return false;
}

EvaluationSignal evaluate_learner(std::string_view turn_text, const ProblemInstance& problem) {
  const auto solution = solve_heads_legs(problem.heads, problem.legs);
  if (!solution) {
    throw Error(ErrorCode::InfeasibleProblem, "problem with " + std::to_string(problem.heads) +
                                                  " heads and " + std::to_string(problem.legs) +
                                                  " legs has no solution");
  }
  EvaluationSignal signal;
  const auto numbers = extract_integers(turn_text);
  if (numbers.empty()) return signal;  // 0.0, NoAttempt

  int matches = 0;
  if (numbers.size() >= 2) {
    HeadsLegsSolution candidate{numbers[numbers.size() - 2], numbers.back()};
    signal.extracted_answer = candidate;
    matches = (candidate.chickens == solution->chickens) + (candidate.rabbits == solution->rabbits);
  }
  if (matches == 2) {
    signal.score = 1.0;
    signal.verdict = Verdict::Correct;
  } else if (matches == 1 || states_constraint_equation(turn_text, problem)) {
    signal.score = 0.5;
    signal.verdict = Verdict::Partial;
  } else {
    signal.score = 0.0;
    signal.verdict = Verdict::Incorrect;
  }
  return signal;
}

}  // namespace intellichain
