#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "intellichain/agents.hpp"
#include "intellichain/assessment.hpp"
#include "intellichain/bandit.hpp"
#include "intellichain/completion.hpp"
#include "intellichain/dialogue.hpp"
#include "intellichain/knowledge_graph.hpp"

namespace intellichain {

struct SessionMetrics {
  SystemConfig config = SystemConfig::NoAgent;
  std::size_t turn_count = 0;       // instructor turns
  double grounding_coverage = 0.0;  // instructor turns citing >= 1 fact
  double question_ratio = 0.0;      // instructor turns ending in '?'
  std::vector<Stage> stage_coverage;  // chain order
  bool completed = false;

  friend bool operator==(const SessionMetrics&, const SessionMetrics&) = default;
};

SessionMetrics compute_metrics(const DialogueSession& session);

struct AblationReport {
  std::vector<SessionMetrics> records;  // one per configuration, kAllConfigs order

  const SessionMetrics& record(SystemConfig config) const;

  friend bool operator==(const AblationReport&, const AblationReport&) = default;
};

struct SessionRun {
  DialogueSession session;
  std::vector<EvaluationSignal> signals;
};

/// Opener, then learner/instructor exchanges until the session completes.
/// `graph` is consulted only for AgentWithKG. Throws ScriptExhausted if the
/// learner script runs out first.
SessionRun run_session_to_completion(SystemConfig config, const ProblemInstance& problem,
                                     const KnowledgeGraph* graph, CompletionBackend& backend,
                                     LearnerScript& learner_script,
                                     const std::vector<StrategyArm>& arm_set,
                                     const DialogueSettings& settings = {},
                                     StepTrace* trace = nullptr);

struct AblationRun {
  AblationReport report;
  std::vector<SessionRun> runs;  // kAllConfigs order
};

// All three configurations with the same learner script; each run gets a
// fresh backend from the factory.
AblationRun run_ablation_with_transcripts(const ProblemInstance& problem,
                                          const KnowledgeGraph& graph,
                                          const BackendFactory& backend_factory,
                                          const std::vector<std::string>& learner_script,
                                          const std::vector<StrategyArm>& arm_set,
                                          const DialogueSettings& settings = {});

AblationReport run_ablation(const ProblemInstance& problem, const KnowledgeGraph& graph,
                            const BackendFactory& backend_factory,
                            const std::vector<std::string>& learner_script,
                            const std::vector<StrategyArm>& arm_set,
                            const DialogueSettings& settings = {});

}  // namespace intellichain
