#include "intellichain/bandit.hpp"

#include <random>

#include <gtest/gtest.h>

#include "intellichain/assessment.hpp"
#include "intellichain/error.hpp"

namespace intellichain {
namespace {

BanditState arms(std::size_t n) {
  std::vector<StrategyArm> a;
  for (std::size_t i = 0; i < n; ++i) a.push_back({"arm" + std::to_string(i), "do " + std::to_string(i)});
  return make_bandit(std::move(a));
}

BanditState with_stats(std::vector<std::uint64_t> counts, std::vector<double> sums) {
  auto s = arms(counts.size());
  s.counts = std::move(counts);
  s.sums = std::move(sums);
  for (auto c : s.counts) s.total_pulls += c;
  return s;
}

TEST(SelectArm, ColdStartPicksFirstUnpulled) {
  EXPECT_EQ(select_arm(arms(3)), "arm0");
  EXPECT_EQ(select_arm(with_stats({1, 0, 0}, {1.0, 0, 0})), "arm1");
  EXPECT_EQ(select_arm(with_stats({4, 2, 0}, {4.0, 2.0, 0})), "arm2");
}

TEST(SelectArm, EqualBonusHigherMeanWins) {
  // Both bonuses are sqrt(2 ln 2) = 1.1774; means are 0 and 1.
  EXPECT_EQ(select_arm(with_stats({1, 1}, {0.0, 1.0})), "arm1");
}

TEST(SelectArm, ExplorationBonusBeatsExploitedArm) {
  // Hand evaluation with ln 6 = 1.791759:
  //   arm0: 5.0/5 + sqrt(2 * 1.791759 / 5) = 1.0 + 0.846577 = 1.846577
  //   arm1: 0.9/1 + sqrt(2 * 1.791759 / 1) = 0.9 + 1.893018 = 2.793018
  EXPECT_EQ(select_arm(with_stats({5, 1}, {5.0, 0.9})), "arm1");
}

TEST(SelectArm, TiesGoToLowestIndex) {
  EXPECT_EQ(select_arm(with_stats({2, 2, 2}, {1.0, 1.0, 1.0})), "arm0");
}

TEST(SelectArm, EmptyArmSet) {
  try {
    select_arm(make_bandit({}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyArmSet);
  }
}

TEST(Update, SingleIncrement) {
  auto s = arms(2);
  update(s, "arm0", 1.0);
  EXPECT_EQ(s.counts, (std::vector<std::uint64_t>{1, 0}));
  EXPECT_EQ(s.sums, (std::vector<double>{1.0, 0.0}));
  EXPECT_EQ(s.total_pulls, 1u);
}

TEST(Update, Accumulation) {
  auto s = arms(2);
  for (int i = 0; i < 100; ++i) update(s, "arm1", 0.0);
  EXPECT_EQ(s.counts[1], 100u);
  EXPECT_EQ(s.sums[1], 0.0);
  EXPECT_EQ(mean_reward(s, 1), 0.0);
}

TEST(Update, Errors) {
  auto s = arms(2);
  auto code = [&](const std::string& id, double r) {
    try {
      update(s, id, r);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::IoError;
  };
  EXPECT_EQ(code("arm0", 1.5), ErrorCode::RewardOutOfRange);
  EXPECT_EQ(code("arm0", -0.1), ErrorCode::RewardOutOfRange);
  EXPECT_EQ(code("arm0", std::nan("")), ErrorCode::RewardOutOfRange);
  EXPECT_EQ(code("nope", 0.5), ErrorCode::UnknownArm);
  EXPECT_EQ(s.total_pulls, 0u);
}

TEST(MakeBandit, RejectsDuplicateIds) {
  EXPECT_THROW(make_bandit({{"a", "x"}, {"a", "y"}}), Error);
  EXPECT_THROW(make_bandit({{"", "x"}}), Error);
}

TEST(Reward, FromScores) {
  EXPECT_EQ(reward_from_scores(0.2, 0.9), 1.0);
  EXPECT_EQ(reward_from_scores(0.5, 0.5), 0.5);
  EXPECT_EQ(reward_from_scores(0.9, 0.1), 0.0);
  EvaluationSignal lo{0.0, Verdict::Incorrect, std::nullopt};
  EvaluationSignal hi{1.0, Verdict::Correct, std::nullopt};
  EXPECT_EQ(reward_from_signals(lo, hi), 1.0);
}

TEST(Bandit, ConservationAndConvergence) {
  const double p[] = {0.2, 0.8};
  auto s = arms(2);
  std::mt19937_64 rng(42);
  std::bernoulli_distribution coin[] = {std::bernoulli_distribution(p[0]),
                                        std::bernoulli_distribution(p[1])};
  const int rounds = 10000;
  int best_in_tail = 0;
  for (int t = 0; t < rounds; ++t) {
    const auto id = select_arm(s);
    const std::size_t i = id == "arm0" ? 0 : 1;
    update(s, id, coin[i](rng) ? 1.0 : 0.0);
    ASSERT_TRUE(satisfies_invariants(s)) << "round " << t;
    if (t >= rounds - 1000 && i == 1) ++best_in_tail;
  }
  EXPECT_GE(best_in_tail, 900);
}

TEST(Bandit, InvariantCatchesCorruption) {
  auto s = with_stats({2, 1}, {1.0, 1.0});
  EXPECT_TRUE(satisfies_invariants(s));
  s.total_pulls = 4;
  EXPECT_FALSE(satisfies_invariants(s));
  s = with_stats({1}, {2.0});
  EXPECT_FALSE(satisfies_invariants(s));
}

TEST(Bandit, DefaultArmSet) {
  auto a = default_arm_set();
  ASSERT_EQ(a.size(), 4u);
  EXPECT_EQ(a[0].id, "hint-first");
  EXPECT_EQ(arm_by_id(make_bandit(a), "recap-first").id, "recap-first");
}

}  // namespace
}  // namespace intellichain
