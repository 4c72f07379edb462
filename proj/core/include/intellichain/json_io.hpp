#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "intellichain/ablation.hpp"
#include "intellichain/assessment.hpp"
#include "intellichain/bandit.hpp"
#include "intellichain/completion.hpp"
#include "intellichain/dialogue.hpp"
#include "intellichain/error.hpp"
#include "intellichain/knowledge_graph.hpp"
#include "intellichain/problem.hpp"

// JSON mappings for every type that crosses a file or HTTP boundary. Field
// names match the C++ member names; enums use their snake_case wire names.
namespace intellichain {

using json = nlohmann::json;

void to_json(json& j, const FactRef& v);
void from_json(const json& j, FactRef& v);
void to_json(json& j, const ContextBundle& v);
void to_json(json& j, const Turn& v);
void from_json(const json& j, Turn& v);
void to_json(json& j, const ProblemInstance& v);
void from_json(const json& j, ProblemInstance& v);
void to_json(json& j, const StrategyArm& v);
void from_json(const json& j, StrategyArm& v);
void to_json(json& j, const BanditState& v);
void from_json(const json& j, BanditState& v);
void to_json(json& j, const DialogueSettings& v);
void from_json(const json& j, DialogueSettings& v);
void to_json(json& j, const DialogueSession& v);
void from_json(const json& j, DialogueSession& v);
void to_json(json& j, const EvaluationSignal& v);
void to_json(json& j, const SessionMetrics& v);
void to_json(json& j, const AblationReport& v);
void to_json(json& j, const ScriptedBackendSpec& v);
void from_json(const json& j, ScriptedBackendSpec& v);

// Parses text as JSON, rethrowing parse failures as MalformedDocument.
json parse_json(std::string_view text, std::string_view what);
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

// Decodes `j` into T, rethrowing type and key errors as MalformedDocument.
template <typename T>
T decode(const json& j, std::string_view what) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string(what) + ": " + e.what());
  }
}

// One line per turn with index, role, stage, strategy_arm, cited_facts, text.
std::string export_transcript(const DialogueSession& session);

// Pretty report text shared by the library and the `ablate` command.
std::string report_to_string(const AblationReport& report);

ProblemInstance load_problem_file(const std::string& path);

// Accepts either a bare array of strings or {"utterances": [...]}.
std::vector<std::string> parse_learner_script(const json& j);
std::vector<std::string> load_learner_script_file(const std::string& path);

}  // namespace intellichain
