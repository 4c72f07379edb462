#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace intellichain {

struct StrategyArm {
  std::string id;
  std::string directive_text;

  friend bool operator==(const StrategyArm&, const StrategyArm&) = default;
};

/// UCB1 statistics over a fixed, ordered arm set. Lives inside one session.
struct BanditState {
  std::vector<StrategyArm> arms;
  std::vector<std::uint64_t> counts;
  std::vector<double> sums;
  std::uint64_t total_pulls = 0;

  friend bool operator==(const BanditState&, const BanditState&) = default;
};

// hint-first, question-first, worked-example-first, recap-first.
std::vector<StrategyArm> default_arm_set();

// Throws InvalidArgument on duplicate or empty arm ids.
BanditState make_bandit(std::vector<StrategyArm> arms);

const StrategyArm& arm_by_id(const BanditState& state, const std::string& id);

double mean_reward(const BanditState& state, std::size_t arm);

// Unpulled arms first (lowest index), otherwise argmax of
// mean + sqrt(2 ln(total) / count) with ties to the lowest index.
// Throws EmptyArmSet.
const std::string& select_arm(const BanditState& state);

// Throws UnknownArm, RewardOutOfRange (reward outside [0, 1] or NaN).
void update(BanditState& state, const std::string& arm_id, double reward);

bool satisfies_invariants(const BanditState& state);

struct EvaluationSignal;

// 1 when the score rose, 0.5 when unchanged, 0 when it fell.
double reward_from_signals(const EvaluationSignal& previous, const EvaluationSignal& current);
double reward_from_scores(double previous, double current);

}  // namespace intellichain
