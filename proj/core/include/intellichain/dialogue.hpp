#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "intellichain/bandit.hpp"
#include "intellichain/knowledge_graph.hpp"
#include "intellichain/problem.hpp"

namespace intellichain {

struct EvaluationSignal;

enum class Stage {
  ProblemFraming,
  GuidedQuestioning,
  SequentialReasoning,
  IterativeFeedback,
  ExploratoryInquiry,
  Closure,
};

inline constexpr std::array<Stage, 6> kAllStages = {
    Stage::ProblemFraming,     Stage::GuidedQuestioning,  Stage::SequentialReasoning,
    Stage::IterativeFeedback,  Stage::ExploratoryInquiry, Stage::Closure,
};

enum class Role { Instructor, Learner, System };

// The three ablation configurations.
enum class SystemConfig { NoAgent, AgentNoKG, AgentWithKG };

inline constexpr std::array<SystemConfig, 3> kAllConfigs = {
    SystemConfig::NoAgent, SystemConfig::AgentNoKG, SystemConfig::AgentWithKG};

enum class SessionStatus { Active, Completed };

std::string_view to_string(Stage stage);
std::string_view to_string(Role role);
std::string_view to_string(SystemConfig config);
std::string_view to_string(SessionStatus status);
std::optional<Stage> parse_stage(std::string_view name);
std::optional<Role> parse_role(std::string_view name);
std::optional<SystemConfig> parse_config(std::string_view name);
std::optional<SessionStatus> parse_status(std::string_view name);

// Position along the forward chain, 0..5.
int stage_rank(Stage stage);
std::string_view stage_goal(Stage stage);

// Persona and Socratic rules for the [ROLE] section.
std::string_view instructor_persona();

inline bool uses_agents(SystemConfig c) { return c != SystemConfig::NoAgent; }
inline bool uses_knowledge(SystemConfig c) { return c == SystemConfig::AgentWithKG; }

struct Turn {
  std::size_t index = 0;
  Role role = Role::System;
  std::string text;
  Stage stage = Stage::ProblemFraming;
  std::optional<std::string> strategy_arm;
  std::vector<FactRef> cited_facts;
  std::uint64_t timestamp = 0;

  friend bool operator==(const Turn&, const Turn&) = default;
};

struct DialogueSettings {
  double advance_threshold = 0.8;
  double remediate_threshold = 0.3;
  std::size_t max_turns_per_stage = 4;
  std::size_t history_window = 8;
  std::size_t hop_limit = kDefaultHopLimit;
  std::size_t fact_cap = kDefaultFactCap;
  double temperature = 0.2;
  std::size_t max_tokens = 512;

  friend bool operator==(const DialogueSettings&, const DialogueSettings&) = default;
};

// Throws InvalidArgument on thresholds outside [0, 1], remediate > advance,
// zero turn budget, zero fact cap or temperature outside [0, 2].
void validate_settings(const DialogueSettings& settings);

/// One tutoring dialogue: a single-writer state machine.
///
/// `remediation_origin` is set while an IterativeFeedback detour is in
/// progress and names the stage that was interrupted. A detour shares the
/// interrupted stage's turn budget: stage_turn_count carries over on entry
/// and resets when the detour ends.
struct DialogueSession {
  std::string id;
  SystemConfig config = SystemConfig::AgentWithKG;
  ProblemInstance problem;
  Stage stage = Stage::ProblemFraming;
  std::optional<Stage> remediation_origin;
  std::vector<Turn> transcript;
  BanditState bandit;
  std::size_t stage_turn_count = 0;
  SessionStatus status = SessionStatus::Active;
  DialogueSettings settings;
  double last_score = 0.0;
  std::uint64_t clock = 0;

  bool active() const { return status == SessionStatus::Active; }

  friend bool operator==(const DialogueSession&, const DialogueSession&) = default;
};

struct SessionOptions {
  std::string id = "session";
  DialogueSettings settings;
  std::vector<StrategyArm> arms = default_arm_set();
};

// Stage ProblemFraming, one System turn carrying the statement, fresh bandit.
// Throws InvalidProblem.
DialogueSession create_session(SystemConfig config, ProblemInstance problem,
                               SessionOptions options = {});

struct StagePosition {
  Stage stage = Stage::ProblemFraming;
  std::optional<Stage> remediation_origin;
  bool completed = false;
  bool reset_count = false;

  friend bool operator==(const StagePosition&, const StagePosition&) = default;
};

/// Transition table for advance_stage, free of session state.
///
///   score >= advance or count >= max  -> successor (Closure -> completed,
///                                        stage left at Closure)
///   remediate <= score < advance      -> stay
///   score < remediate                 -> IterativeFeedback detour
///
/// Inside a detour the successor is the interrupted stage's successor and a
/// low score keeps the detour going.
StagePosition next_position(Stage stage, std::optional<Stage> remediation_origin, double score,
                            std::size_t stage_turn_count, const DialogueSettings& settings);

// Applies next_position. Throws SessionCompleted.
Stage advance_stage(DialogueSession& session, const EvaluationSignal& signal);
Stage advance_stage(DialogueSession& session, double score);

/// Five labeled sections in fixed order:
///   [ROLE] [STAGE] [STRATEGY] [KNOWLEDGE] [HISTORY]
/// [STRATEGY] is blank for NoAgent and [KNOWLEDGE] is blank unless the
/// session runs AgentWithKG. [HISTORY] holds the last history_window turns,
/// oldest first, one "<role>: <text>" line each.
std::string assemble_prompt(const DialogueSession& session, std::string_view context_text,
                            std::string_view directive);

// Assigns index and timestamp, bumps stage_turn_count on Instructor turns.
// Throws RoleOrderViolation, SessionCompleted, InvalidArgument (citations on
// a non-KG or non-instructor turn).
const Turn& append_turn(DialogueSession& session, Turn turn);

}  // namespace intellichain
