#include "intellichain/agents.hpp"

#include <algorithm>

#include "intellichain/error.hpp"

namespace intellichain {

AgentRole make_agent_role(AgentKind kind, std::string persona_text) {
  if (persona_text.empty()) throw Error(ErrorCode::InvalidArgument, "agent persona is empty");
  return {kind, std::move(persona_text)};
}

AgentRole make_agent_role(AgentKind kind) {
  switch (kind) {
    case AgentKind::Instructor:
      return make_agent_role(kind, std::string(instructor_persona()));
    case AgentKind::LearnerSim:
      return make_agent_role(kind,
                             "You are a middle-school learner working on a word problem. Answer "
                             "the instructor's question briefly and show your reasoning.");
    case AgentKind::Evaluator:
      return make_agent_role(kind,
                             "You check a learner's answer against the known solution and "
                             "report whether it is correct, partially correct or wrong.");
  }
  throw Error(ErrorCode::InvalidArgument, "unknown agent kind");
}

std::vector<std::string> retrieval_seeds(const DialogueSession& session,
                                         const KnowledgeGraph& graph) {
  std::string_view learner_text;
  for (auto it = session.transcript.rbegin(); it != session.transcript.rend(); ++it) {
    if (it->role == Role::Learner) {
      learner_text = it->text;
      break;
    }
  }
  auto seeds = link_knowledge_points(learner_text, graph);
  for (const auto& hint : session.problem.knowledge_point_hints) {
    if (graph.contains(hint) && std::find(seeds.begin(), seeds.end(), hint) == seeds.end()) {
      seeds.push_back(hint);
    }
  }
  return seeds;
}

ContextBundle retrieve_for_turn(const DialogueSession& session, const KnowledgeGraph& graph) {
  return query_context(graph, retrieval_seeds(session, graph), session.settings.hop_limit,
                       session.settings.fact_cap);
}

Turn instructor_step(const DialogueSession& session, const KnowledgeGraph* graph,
                     CompletionBackend& backend, const StrategyArm* directive, StepTrace* trace) {
  if (!session.active()) {
    throw Error(ErrorCode::SessionCompleted, "session '" + session.id + "' is completed");
  }
  if ((graph != nullptr) != uses_knowledge(session.config)) {
    throw Error(ErrorCode::InvalidArgument,
                "a knowledge graph must be supplied exactly for agent_kg sessions");
  }

  Turn turn;
  turn.role = Role::Instructor;
  turn.stage = session.stage;

  std::string context;
  if (graph != nullptr) {
    if (trace) ++trace->retrievals;
    auto bundle = retrieve_for_turn(session, *graph);
    context = render_facts(bundle, *graph);
    turn.cited_facts = bundle.fact_refs();
  }
  std::string_view directive_text;
  if (uses_agents(session.config) && directive != nullptr) {
    directive_text = directive->directive_text;
    turn.strategy_arm = directive->id;
  }

  CompletionRequest request;
  request.temperature = session.settings.temperature;
  request.max_tokens = session.settings.max_tokens;
  request.messages.push_back({MessageRole::System, std::string(instructor_persona())});
  request.messages.push_back(
      {MessageRole::User, assemble_prompt(session, context, directive_text)});

  if (trace) ++trace->completions;
  try {
    turn.text = backend.complete(request);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::BackendFailure, e.what());
  }
  return turn;
}

const std::string& LearnerScript::next() {
  if (!has_next()) {
    throw Error(ErrorCode::ScriptExhausted, "learner script exhausted after " +
                                                std::to_string(utterances_.size()) + " entries");
  }
  return utterances_[cursor_++];
}

Turn scripted_learner_step(LearnerScript& script, const DialogueSession& session) {
  if (!session.active()) {
    throw Error(ErrorCode::SessionCompleted, "session '" + session.id + "' is completed");
  }
  Turn turn;
  turn.role = Role::Learner;
  turn.stage = session.stage;
  turn.text = script.next();
  return turn;
}

const Turn& take_instructor_turn(DialogueSession& session, const KnowledgeGraph* graph,
                                 CompletionBackend& backend, StepTrace* trace) {
  const StrategyArm* directive = nullptr;
  if (uses_agents(session.config) && !session.bandit.arms.empty()) {
    if (trace) ++trace->arm_selections;
    directive = &arm_by_id(session.bandit, select_arm(session.bandit));
  }
  auto turn = instructor_step(session, graph_for(session, graph), backend, directive, trace);
  return append_turn(session, std::move(turn));
}

ExchangeOutcome respond_to_learner(DialogueSession& session, std::string learner_text,
                                   const KnowledgeGraph* graph, CompletionBackend& backend,
                                   StepTrace* trace) {
  if (!session.active()) {
    throw Error(ErrorCode::SessionCompleted, "session '" + session.id + "' is completed");
  }
  // Work on a copy so a failing backend leaves the session untouched.
  DialogueSession next = session;
  std::optional<std::string> rewarded_arm;
  if (next.transcript.back().role == Role::Instructor) {
    rewarded_arm = next.transcript.back().strategy_arm;
  }

  Turn learner;
  learner.role = Role::Learner;
  learner.stage = next.stage;
  learner.text = std::move(learner_text);
  append_turn(next, std::move(learner));

  ExchangeOutcome outcome;
  outcome.signal = evaluate_learner(next.transcript.back().text, next.problem);
  if (uses_agents(next.config) && rewarded_arm) {
    if (trace) ++trace->bandit_updates;
    update(next.bandit, *rewarded_arm, reward_from_scores(next.last_score, outcome.signal.score));
  }
  next.last_score = outcome.signal.score;
  advance_stage(next, outcome.signal);
  if (next.active()) {
    outcome.instructor_turn = take_instructor_turn(next, graph, backend, trace);
  }
  session = std::move(next);
  return outcome;
}

}  // namespace intellichain
