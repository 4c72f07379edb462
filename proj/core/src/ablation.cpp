#include "intellichain/ablation.hpp"

#include <set>

#include "intellichain/error.hpp"
#include "intellichain/text.hpp"

namespace intellichain {

SessionMetrics compute_metrics(const DialogueSession& session) {
  SessionMetrics m;
  m.config = session.config;
  m.completed = !session.active();
  std::size_t grounded = 0;
  std::size_t questions = 0;
  std::set<int> visited;
  for (const auto& turn : session.transcript) {
    if (turn.role == Role::System) continue;
    visited.insert(stage_rank(turn.stage));
    if (turn.role != Role::Instructor) continue;
    ++m.turn_count;
    if (!turn.cited_facts.empty()) ++grounded;
    if (text::ends_with_question(turn.text)) ++questions;
  }
  if (m.turn_count > 0) {
    m.grounding_coverage = static_cast<double>(grounded) / static_cast<double>(m.turn_count);
    m.question_ratio = static_cast<double>(questions) / static_cast<double>(m.turn_count);
  }
  for (int rank : visited) m.stage_coverage.push_back(kAllStages[static_cast<std::size_t>(rank)]);
  return m;
}

const SessionMetrics& AblationReport::record(SystemConfig config) const {
  for (const auto& r : records) {
    if (r.config == config) return r;
  }
  throw Error(ErrorCode::InvalidArgument,
              "report has no record for " + std::string(to_string(config)));
}

SessionRun run_session_to_completion(SystemConfig config, const ProblemInstance& problem,
                                     const KnowledgeGraph* graph, CompletionBackend& backend,
                                     LearnerScript& learner_script,
                                     const std::vector<StrategyArm>& arm_set,
                                     const DialogueSettings& settings, StepTrace* trace) {
  SessionOptions options;
  options.id = std::string(to_string(config));
  options.settings = settings;
  options.arms = arm_set;
  SessionRun run{create_session(config, problem, std::move(options)), {}};
  auto& session = run.session;
  const KnowledgeGraph* kg = uses_knowledge(config) ? graph : nullptr;
  if (uses_knowledge(config) && kg == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "agent_kg run needs a knowledge graph");
  }

  take_instructor_turn(session, kg, backend, trace);
  while (session.active()) {
    auto learner = scripted_learner_step(learner_script, session);
    auto outcome = respond_to_learner(session, std::move(learner.text), kg, backend, trace);
    run.signals.push_back(outcome.signal);
  }
  return run;
}

AblationRun run_ablation_with_transcripts(const ProblemInstance& problem,
                                          const KnowledgeGraph& graph,
                                          const BackendFactory& backend_factory,
                                          const std::vector<std::string>& learner_script,
                                          const std::vector<StrategyArm>& arm_set,
                                          const DialogueSettings& settings) {
  AblationRun out;
  for (auto config : kAllConfigs) {
    auto backend = backend_factory();
    if (!backend) throw Error(ErrorCode::InvalidArgument, "backend factory returned null");
    LearnerScript script(learner_script);
    out.runs.push_back(
        run_session_to_completion(config, problem, &graph, *backend, script, arm_set, settings));
    out.report.records.push_back(compute_metrics(out.runs.back().session));
  }
  return out;
}

AblationReport run_ablation(const ProblemInstance& problem, const KnowledgeGraph& graph,
                            const BackendFactory& backend_factory,
                            const std::vector<std::string>& learner_script,
                            const std::vector<StrategyArm>& arm_set,
                            const DialogueSettings& settings) {
  return run_ablation_with_transcripts(problem, graph, backend_factory, learner_script, arm_set,
                                       settings)
      .report;
}

}  // namespace intellichain
