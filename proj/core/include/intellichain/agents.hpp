#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intellichain/assessment.hpp"
#include "intellichain/completion.hpp"
#include "intellichain/dialogue.hpp"
#include "intellichain/knowledge_graph.hpp"

namespace intellichain {

enum class AgentKind { Instructor, LearnerSim, Evaluator };

struct AgentRole {
  AgentKind kind = AgentKind::Instructor;
  std::string persona_text;
};

// Default persona per kind. Throws InvalidArgument if persona is empty.
AgentRole make_agent_role(AgentKind kind);
AgentRole make_agent_role(AgentKind kind, std::string persona_text);

// Counts calls into retrieval, the bandit and the backend. Optional; passed
// down by pointer so NoAgent runs can be checked for what they never touch.
struct StepTrace {
  std::size_t retrievals = 0;
  std::size_t arm_selections = 0;
  std::size_t bandit_updates = 0;
  std::size_t completions = 0;
};

// Seeds are the knowledge points linked from the most recent learner turn
// followed by the problem's hint ids that exist in the graph (duplicates
// dropped). Hints missing from the graph are skipped.
std::vector<std::string> retrieval_seeds(const DialogueSession& session,
                                         const KnowledgeGraph& graph);

ContextBundle retrieve_for_turn(const DialogueSession& session, const KnowledgeGraph& graph);

/// Produces (does not append) the next instructor turn.
///
/// AgentWithKG: link, query, render, then prompt. NoAgent ignores the
/// directive. The returned turn cites exactly the retrieved bundle's facts
/// in AgentWithKG and nothing otherwise. `graph` must be non-null exactly
/// when the session runs AgentWithKG (InvalidArgument otherwise).
Turn instructor_step(const DialogueSession& session, const KnowledgeGraph* graph,
                     CompletionBackend& backend, const StrategyArm* directive,
                     StepTrace* trace = nullptr);

class LearnerScript {
 public:
  LearnerScript() = default;
  explicit LearnerScript(std::vector<std::string> utterances)
      : utterances_(std::move(utterances)) {}

  bool has_next() const { return cursor_ < utterances_.size(); }
  std::size_t cursor() const { return cursor_; }
  const std::vector<std::string>& utterances() const { return utterances_; }

  // Throws ScriptExhausted.
  const std::string& next();

 private:
  std::vector<std::string> utterances_;
  std::size_t cursor_ = 0;
};

// Learner turn at the session's current stage. Throws ScriptExhausted,
// SessionCompleted.
Turn scripted_learner_step(LearnerScript& script, const DialogueSession& session);

// Picks a strategy arm (agent configs), runs instructor_step and appends
// the result.
const Turn& take_instructor_turn(DialogueSession& session, const KnowledgeGraph* graph,
                                 CompletionBackend& backend, StepTrace* trace = nullptr);

struct ExchangeOutcome {
  EvaluationSignal signal;
  std::optional<Turn> instructor_turn;  // empty once the session completes
};

/// One learner message end to end: append, evaluate, reward the arm behind
/// the last instructor turn (agent configs), advance the stage and, while
/// the session is still active, generate the next instructor turn.
ExchangeOutcome respond_to_learner(DialogueSession& session, std::string learner_text,
                                   const KnowledgeGraph* graph, CompletionBackend& backend,
                                   StepTrace* trace = nullptr);

// The graph to hand to instructor_step for this session's configuration.
inline const KnowledgeGraph* graph_for(const DialogueSession& session, const KnowledgeGraph* graph) {
  return uses_knowledge(session.config) ? graph : nullptr;
}

}  // namespace intellichain
