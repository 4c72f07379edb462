#include "intellichain/assessment.hpp"

#include <gtest/gtest.h>

#include "intellichain/error.hpp"
#include "oracles.hpp"

namespace intellichain {
namespace {

ProblemInstance problem(std::uint64_t heads, std::uint64_t legs) {
  ProblemInstance p;
  p.id = "p";
  p.statement = "heads and legs";
  p.heads = heads;
  p.legs = legs;
  return p;
}

TEST(Solve, Examples) {
  EXPECT_EQ(solve_heads_legs(35, 94), (HeadsLegsSolution{23, 12}));
  EXPECT_EQ(solve_heads_legs(0, 0), (HeadsLegsSolution{0, 0}));
  EXPECT_FALSE(solve_heads_legs(3, 5).has_value());
  EXPECT_EQ(solve_heads_legs(10, 20), (HeadsLegsSolution{10, 0}));
  EXPECT_EQ(solve_heads_legs(10, 40), (HeadsLegsSolution{0, 10}));
  EXPECT_FALSE(solve_heads_legs(10, 42).has_value());
  EXPECT_FALSE(solve_heads_legs(10, 18).has_value());
}

TEST(Solve, AgreesWithBruteForce) {
  for (std::uint64_t h = 0; h <= 60; ++h) {
    for (std::uint64_t l = 0; l <= 240; ++l) {
      auto got = solve_heads_legs(h, l);
      auto want = oracle::brute_force_heads_legs(h, l);
      ASSERT_EQ(got.has_value(), want.has_value()) << h << "/" << l;
      if (got) {
        EXPECT_EQ(got->chickens, want->first);
        EXPECT_EQ(got->rabbits, want->second);
      }
    }
  }
}

TEST(Solve, NoOverflowNearLimits) {
  const std::uint64_t big = UINT64_MAX / 2;
  EXPECT_FALSE(solve_heads_legs(big, UINT64_MAX).has_value());
  auto s = solve_heads_legs(big / 2, big);
  EXPECT_FALSE(s.has_value());  // big is odd
  auto even = solve_heads_legs(UINT64_MAX / 4, (UINT64_MAX / 4) * 2);
  ASSERT_TRUE(even.has_value());
  EXPECT_EQ(even->rabbits, 0u);
}

TEST(Evaluate, CorrectAnswer) {
  auto s = evaluate_learner("I think 23 chickens and 12 rabbits", problem(35, 94));
  EXPECT_EQ(s.score, 1.0);
  EXPECT_EQ(s.verdict, Verdict::Correct);
  EXPECT_EQ(s.extracted_answer, (HeadsLegsSolution{23, 12}));
}

TEST(Evaluate, NoIntegersIsNoAttempt) {
  auto s = evaluate_learner("no idea", problem(35, 94));
  EXPECT_EQ(s.score, 0.0);
  EXPECT_EQ(s.verdict, Verdict::NoAttempt);
  EXPECT_FALSE(s.extracted_answer.has_value());
  EXPECT_EQ(evaluate_learner("", problem(35, 94)).verdict, Verdict::NoAttempt);
}

TEST(Evaluate, SwappedAnswerIsIncorrect) {
  auto s = evaluate_learner("maybe 12 chickens and 23 rabbits", problem(35, 94));
  EXPECT_EQ(s.score, 0.0);
  EXPECT_EQ(s.verdict, Verdict::Incorrect);
}

TEST(Evaluate, OnePositionRightIsPartial) {
  auto s = evaluate_learner("23 chickens and 10 rabbits", problem(35, 94));
  EXPECT_EQ(s.score, 0.5);
  EXPECT_EQ(s.verdict, Verdict::Partial);
}

TEST(Evaluate, SingleIntegerIsIncorrectUnlessEquation) {
  EXPECT_EQ(evaluate_learner("there are 35 heads", problem(35, 94)).verdict, Verdict::Incorrect);
}

TEST(Evaluate, ConstraintEquationsArePartial) {
  for (const char* text : {"x + y = 35", "c+r=35", "2c + 4r = 94", "4*r + 2*c = 94",
                           "So chickens + rabbits = 35?"}) {
    auto s = evaluate_learner(text, problem(35, 94));
    EXPECT_EQ(s.verdict, Verdict::Partial) << text;
    EXPECT_EQ(s.score, 0.5) << text;
  }
  for (const char* text : {"x + x = 35", "x + y = 36", "2c + 2r = 94", "3c + 4r = 94"}) {
    EXPECT_FALSE(states_constraint_equation(text, problem(35, 94))) << text;
  }
}

TEST(Evaluate, InfeasibleProblemThrows) {
  try {
    evaluate_learner("1 2", problem(3, 5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InfeasibleProblem);
  }
}

TEST(Evaluate, HugeNumbersDoNotMatch) {
  auto s = evaluate_learner("99999999999999999999999 and 12", problem(35, 94));
  EXPECT_EQ(s.verdict, Verdict::Partial);
}

TEST(ValidateProblem, BlankStatement) {
  auto p = problem(1, 2);
  p.statement = "\t\n ";
  EXPECT_THROW(validate_problem(p), Error);
}

}  // namespace
}  // namespace intellichain
