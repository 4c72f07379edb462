#include "intellichain/bandit.hpp"

#include <cmath>
#include <set>

#include "intellichain/assessment.hpp"
#include "intellichain/error.hpp"

namespace intellichain {

std::vector<StrategyArm> default_arm_set() {
  return {
      {"hint-first",
       "Open with a small hint that points at the relevant relationship, then ask the learner to "
       "take the next step."},
      {"question-first",
       "Open with a probing question about what the learner already knows before offering any "
       "guidance."},
      {"worked-example-first",
       "Briefly walk through an analogous smaller example, then ask the learner to apply the same "
       "reasoning."},
      {"recap-first",
       "Recap what has been established so far in one sentence, then ask what should follow."},
  };
}

BanditState make_bandit(std::vector<StrategyArm> arms) {
  std::set<std::string> seen;
  for (const auto& arm : arms) {
    if (arm.id.empty()) throw Error(ErrorCode::InvalidArgument, "strategy arm id is empty");
    if (!seen.insert(arm.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate strategy arm id '" + arm.id + "'");
    }
  }
  BanditState s;
  s.counts.assign(arms.size(), 0);
  s.sums.assign(arms.size(), 0.0);
  s.arms = std::move(arms);
  return s;
}

namespace {

std::size_t index_of(const BanditState& state, const std::string& id) {
  for (std::size_t i = 0; i < state.arms.size(); ++i) {
    if (state.arms[i].id == id) return i;
  }
  throw Error(ErrorCode::UnknownArm, "no strategy arm '" + id + "'");
}

}  // namespace

const StrategyArm& arm_by_id(const BanditState& state, const std::string& id) {
  return state.arms[index_of(state, id)];
}

double mean_reward(const BanditState& state, std::size_t arm) {
  return state.counts[arm] == 0 ? 0.0 : state.sums[arm] / static_cast<double>(state.counts[arm]);
}

const std::string& select_arm(const BanditState& state) {
  if (state.arms.empty()) throw Error(ErrorCode::EmptyArmSet, "bandit has no strategy arms");
  for (std::size_t i = 0; i < state.arms.size(); ++i) {
    if (state.counts[i] == 0) return state.arms[i].id;
  }
  const double log_total = std::log(static_cast<double>(state.total_pulls));
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < state.arms.size(); ++i) {
    const double n = static_cast<double>(state.counts[i]);
    const double value = mean_reward(state, i) + std::sqrt(2.0 * log_total / n);
    if (value > best_value) {
      best_value = value;
      best = i;
    }
  }
  return state.arms[best].id;
}

void update(BanditState& state, const std::string& arm_id, double reward) {
  auto i = index_of(state, arm_id);
  if (!(reward >= 0.0 && reward <= 1.0)) {
    throw Error(ErrorCode::RewardOutOfRange, "reward " + std::to_string(reward) + " not in [0, 1]");
  }
  state.counts[i] += 1;
  state.sums[i] += reward;
  state.total_pulls += 1;
}

bool satisfies_invariants(const BanditState& state) {
  if (state.counts.size() != state.arms.size() || state.sums.size() != state.arms.size()) {
    return false;
  }
  std::uint64_t pulls = 0;
  for (std::size_t i = 0; i < state.arms.size(); ++i) {
    pulls += state.counts[i];
    if (state.sums[i] < 0.0 || state.sums[i] > static_cast<double>(state.counts[i])) return false;
  }
  return pulls == state.total_pulls;
}

double reward_from_scores(double previous, double current) {
  if (current > previous) return 1.0;
  if (current == previous) return 0.5;
  return 0.0;
}

double reward_from_signals(const EvaluationSignal& previous, const EvaluationSignal& current) {
  return reward_from_scores(previous.score, current.score);
}

}  // namespace intellichain
