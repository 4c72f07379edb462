#include "intellichain/dialogue.hpp"

#include <algorithm>

#include "intellichain/assessment.hpp"
#include "intellichain/error.hpp"

namespace intellichain {

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::ProblemFraming: return "problem_framing";
    case Stage::GuidedQuestioning: return "guided_questioning";
    case Stage::SequentialReasoning: return "sequential_reasoning";
    case Stage::IterativeFeedback: return "iterative_feedback";
    case Stage::ExploratoryInquiry: return "exploratory_inquiry";
    case Stage::Closure: return "closure";
  }
  return "problem_framing";
}

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Instructor: return "instructor";
    case Role::Learner: return "learner";
    case Role::System: return "system";
  }
  return "system";
}

std::string_view to_string(SystemConfig config) {
  switch (config) {
    case SystemConfig::NoAgent: return "no_agent";
    case SystemConfig::AgentNoKG: return "agent_no_kg";
    case SystemConfig::AgentWithKG: return "agent_kg";
  }
  return "no_agent";
}

std::string_view to_string(SessionStatus status) {
  return status == SessionStatus::Active ? "active" : "completed";
}

std::optional<Stage> parse_stage(std::string_view name) {
  for (auto s : kAllStages) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<Role> parse_role(std::string_view name) {
  for (auto r : {Role::Instructor, Role::Learner, Role::System}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::optional<SystemConfig> parse_config(std::string_view name) {
  for (auto c : kAllConfigs) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

std::optional<SessionStatus> parse_status(std::string_view name) {
  if (name == "active") return SessionStatus::Active;
  if (name == "completed") return SessionStatus::Completed;
  return std::nullopt;
}

int stage_rank(Stage stage) { return static_cast<int>(stage); }

std::string_view stage_goal(Stage stage) {
  switch (stage) {
    case Stage::ProblemFraming:
      return "Have the learner restate the problem and separate what is known from what is asked.";
    case Stage::GuidedQuestioning:
      return "Ask targeted questions that lead the learner to name the unknowns and how they are "
             "related.";
    case Stage::SequentialReasoning:
      return "Guide the learner one step at a time from the relationships to a system of equations "
             "and its solution.";
    case Stage::IterativeFeedback:
      return "Respond to the learner's latest attempt, show which conditions it meets or misses, "
             "and ask for a revision.";
    case Stage::ExploratoryInquiry:
      return "Invite the learner to generalize, for example what would change if legs were "
             "counted differently.";
    case Stage::Closure:
      return "Ask the learner to summarize the method and confirm the final answer in their own "
             "words.";
  }
  return "";
}

std::string_view instructor_persona() {
  return "You are a Socratic mathematics instructor. Never reveal the final answer outright; "
         "lead the learner to derive every step through questions. Keep each turn short and "
         "always end it with a question.";
}

void validate_settings(const DialogueSettings& s) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!unit(s.advance_threshold) || !unit(s.remediate_threshold) ||
      s.remediate_threshold > s.advance_threshold) {
    throw Error(ErrorCode::InvalidArgument,
                "thresholds must satisfy 0 <= remediate <= advance <= 1");
  }
  if (s.max_turns_per_stage == 0) {
    throw Error(ErrorCode::InvalidArgument, "max_turns_per_stage must be positive");
  }
  if (s.fact_cap == 0) throw Error(ErrorCode::InvalidArgument, "fact cap must be positive");
  if (!(s.temperature >= 0.0 && s.temperature <= 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "temperature must lie in [0, 2]");
  }
  if (s.max_tokens == 0) throw Error(ErrorCode::InvalidArgument, "max_tokens must be positive");
}

DialogueSession create_session(SystemConfig config, ProblemInstance problem,
                               SessionOptions options) {
  validate_problem(problem);
  validate_settings(options.settings);
  DialogueSession s;
  s.id = std::move(options.id);
  s.config = config;
  s.settings = options.settings;
  s.bandit = make_bandit(std::move(options.arms));
  s.problem = std::move(problem);
  Turn opening;
  opening.role = Role::System;
  opening.text = s.problem.statement;
  opening.stage = Stage::ProblemFraming;
  append_turn(s, std::move(opening));
  return s;
}

namespace {

std::optional<Stage> successor(Stage stage) {
  if (stage == Stage::Closure) return std::nullopt;
  return static_cast<Stage>(stage_rank(stage) + 1);
}

// Finishing Closure, directly or from a detour it started, ends the session
// in Closure.
StagePosition move_to(std::optional<Stage> target) {
  if (!target) return {Stage::Closure, std::nullopt, true, true};
  return {*target, std::nullopt, false, true};
}

}  // namespace

StagePosition next_position(Stage stage, std::optional<Stage> remediation_origin, double score,
                            std::size_t stage_turn_count, const DialogueSettings& settings) {
  const bool advance =
      score >= settings.advance_threshold || stage_turn_count >= settings.max_turns_per_stage;
  if (remediation_origin) {
    if (advance) return move_to(successor(*remediation_origin));
    return {stage, remediation_origin, false, false};
  }
  if (advance) return move_to(successor(stage));
  if (score >= settings.remediate_threshold || stage == Stage::IterativeFeedback) {
    return {stage, std::nullopt, false, false};
  }
  return {Stage::IterativeFeedback, stage, false, false};
}

Stage advance_stage(DialogueSession& session, double score) {
  if (!session.active()) {
    throw Error(ErrorCode::SessionCompleted, "session '" + session.id + "' is completed");
  }
  auto next = next_position(session.stage, session.remediation_origin, score,
                            session.stage_turn_count, session.settings);
  session.stage = next.stage;
  session.remediation_origin = next.remediation_origin;
  if (next.reset_count) session.stage_turn_count = 0;
  if (next.completed) session.status = SessionStatus::Completed;
  return session.stage;
}

Stage advance_stage(DialogueSession& session, const EvaluationSignal& signal) {
  return advance_stage(session, signal.score);
}

std::string assemble_prompt(const DialogueSession& session, std::string_view context_text,
                            std::string_view directive) {
  std::string stage_line(to_string(session.stage));
  stage_line += ": ";
  stage_line += stage_goal(session.stage);

  std::string history;
  const auto& t = session.transcript;
  const auto window = std::min(session.settings.history_window, t.size());
  for (auto i = t.size() - window; i < t.size(); ++i) {
    if (!history.empty()) history.push_back('\n');
    history += to_string(t[i].role);
    history += ": ";
    history += t[i].text;
  }

  const std::pair<std::string_view, std::string_view> sections[] = {
      {"[ROLE]", instructor_persona()},
      {"[STAGE]", stage_line},
      {"[STRATEGY]", uses_agents(session.config) ? directive : std::string_view{}},
      {"[KNOWLEDGE]", uses_knowledge(session.config) ? context_text : std::string_view{}},
      {"[HISTORY]", history},
  };
  std::string prompt;
  for (const auto& [header, body] : sections) {
    if (!prompt.empty()) prompt.push_back('\n');
    prompt += header;
    prompt.push_back('\n');
    if (!body.empty()) {
      prompt += body;
      prompt.push_back('\n');
    }
  }
  return prompt;
}

const Turn& append_turn(DialogueSession& session, Turn turn) {
  if (!session.active()) {
    throw Error(ErrorCode::SessionCompleted, "session '" + session.id + "' is completed");
  }
  const auto& t = session.transcript;
  if (t.empty()) {
    if (turn.role != Role::System) {
      throw Error(ErrorCode::RoleOrderViolation, "transcript must open with a system turn");
    }
  } else if (turn.role == Role::System) {
    throw Error(ErrorCode::RoleOrderViolation, "only the opening turn may be a system turn");
  } else if (t.back().role == turn.role) {
    throw Error(ErrorCode::RoleOrderViolation,
                std::string(to_string(turn.role)) + " turn cannot follow another " +
                    std::string(to_string(turn.role)) + " turn");
  }
  if (!turn.cited_facts.empty() &&
      (turn.role != Role::Instructor || !uses_knowledge(session.config))) {
    throw Error(ErrorCode::InvalidArgument,
                "cited facts are only allowed on instructor turns of agent_kg sessions");
  }
  turn.index = t.size();
  turn.timestamp = session.clock++;
  if (turn.role == Role::Instructor) session.stage_turn_count += 1;
  session.transcript.push_back(std::move(turn));
  return session.transcript.back();
}

}  // namespace intellichain
