#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace intellichain {

// A heads-and-legs word problem (chickens have 2 legs, rabbits 4).
struct ProblemInstance {
  std::string id;
  std::string title;
  std::string statement;
  std::uint64_t heads = 0;
  std::uint64_t legs = 0;
  std::vector<std::string> knowledge_point_hints;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

// Throws InvalidProblem when the statement is blank.
void validate_problem(const ProblemInstance& problem);

}  // namespace intellichain
