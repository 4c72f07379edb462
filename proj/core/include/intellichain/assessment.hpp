#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "intellichain/problem.hpp"

namespace intellichain {

enum class Verdict { Correct, Partial, Incorrect, NoAttempt };

std::string_view to_string(Verdict verdict);

struct HeadsLegsSolution {
  std::uint64_t chickens = 0;
  std::uint64_t rabbits = 0;

  friend bool operator==(const HeadsLegsSolution&, const HeadsLegsSolution&) = default;
};

struct EvaluationSignal {
  double score = 0.0;
  Verdict verdict = Verdict::NoAttempt;
  std::optional<HeadsLegsSolution> extracted_answer;

  friend bool operator==(const EvaluationSignal&, const EvaluationSignal&) = default;
};

// Unique non-negative (chickens, rabbits) with c + r = heads and
// 2c + 4r = legs; nullopt when no such pair exists.
std::optional<HeadsLegsSolution> solve_heads_legs(std::uint64_t heads, std::uint64_t legs);

/// Scores a learner utterance against the problem's solution.
///
/// The last two integers in the text are read positionally as (chickens,
/// rabbits). Both right scores 1.0; one right, or a correct constraint
/// equation in the text ("c + r = heads" or "2c + 4r = legs" with any two
/// distinct variable names and the problem's numbers), scores 0.5; anything
/// else 0.0. Text with no integers at all is NoAttempt. Throws
/// InfeasibleProblem.
EvaluationSignal evaluate_learner(std::string_view turn_text, const ProblemInstance& problem);

// Does the text state one of the two constraint equations of the problem?
bool states_constraint_equation(std::string_view turn_text, const ProblemInstance& problem);

}  // namespace intellichain
