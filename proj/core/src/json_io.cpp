#include "intellichain/json_io.hpp"

#include <fstream>
#include <sstream>

namespace intellichain {

namespace {

template <typename Enum, typename Parser>
Enum parse_enum(const json& j, Parser parse, std::string_view what) {
  auto name = j.get<std::string>();
  auto value = parse(name);
  if (!value) {
    throw Error(ErrorCode::MalformedDocument, "unknown " + std::string(what) + " '" + name + "'");
  }
  return *value;
}

template <typename T>
void read_optional(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end() && !it->is_null()) it->get_to(out);
}

}  // namespace

void to_json(json& j, const FactRef& v) {
  j = {{"subject", v.subject}, {"relation", to_string(v.relation)}, {"object", v.object}};
}

void from_json(const json& j, FactRef& v) {
  j.at("subject").get_to(v.subject);
  v.relation = parse_enum<Relation>(j.at("relation"), parse_relation, "relation");
  j.at("object").get_to(v.object);
}

void to_json(json& j, const ContextBundle& v) {
  json facts = json::array();
  for (const auto& f : v.facts) {
    json jf = f.ref;
    jf["hop"] = f.hop;
    jf["sentence"] = f.sentence;
    facts.push_back(std::move(jf));
  }
  j = {{"seeds", v.seeds}, {"facts", std::move(facts)}, {"hop_limit", v.hop_limit},
       {"truncated", v.truncated}};
}

void to_json(json& j, const Turn& v) {
  j = {{"index", v.index},
       {"role", to_string(v.role)},
       {"text", v.text},
       {"stage", to_string(v.stage)},
       {"strategy_arm", v.strategy_arm ? json(*v.strategy_arm) : json(nullptr)},
       {"cited_facts", v.cited_facts},
       {"timestamp", v.timestamp}};
}

void from_json(const json& j, Turn& v) {
  j.at("index").get_to(v.index);
  v.role = parse_enum<Role>(j.at("role"), parse_role, "role");
  j.at("text").get_to(v.text);
  v.stage = parse_enum<Stage>(j.at("stage"), parse_stage, "stage");
  v.strategy_arm.reset();
  if (auto it = j.find("strategy_arm"); it != j.end() && !it->is_null()) {
    v.strategy_arm = it->get<std::string>();
  }
  v.cited_facts.clear();
  read_optional(j, "cited_facts", v.cited_facts);
  v.timestamp = 0;
  read_optional(j, "timestamp", v.timestamp);
}

void to_json(json& j, const ProblemInstance& v) {
  j = {{"id", v.id},
       {"title", v.title},
       {"statement", v.statement},
       {"heads", v.heads},
       {"legs", v.legs},
       {"knowledge_point_hints", v.knowledge_point_hints}};
}

void from_json(const json& j, ProblemInstance& v) {
  v = ProblemInstance{};
  read_optional(j, "id", v.id);
  read_optional(j, "title", v.title);
  j.at("statement").get_to(v.statement);
  j.at("heads").get_to(v.heads);
  j.at("legs").get_to(v.legs);
  read_optional(j, "knowledge_point_hints", v.knowledge_point_hints);
}

void to_json(json& j, const StrategyArm& v) {
  j = {{"id", v.id}, {"directive_text", v.directive_text}};
}

void from_json(const json& j, StrategyArm& v) {
  j.at("id").get_to(v.id);
  j.at("directive_text").get_to(v.directive_text);
}

void to_json(json& j, const BanditState& v) {
  j = {{"arms", v.arms}, {"counts", v.counts}, {"sums", v.sums}, {"total_pulls", v.total_pulls}};
}

void from_json(const json& j, BanditState& v) {
  j.at("arms").get_to(v.arms);
  j.at("counts").get_to(v.counts);
  j.at("sums").get_to(v.sums);
  j.at("total_pulls").get_to(v.total_pulls);
  if (!satisfies_invariants(v)) {
    throw Error(ErrorCode::MalformedDocument, "bandit statistics violate their invariants");
  }
}

void to_json(json& j, const DialogueSettings& v) {
  j = {{"advance_threshold", v.advance_threshold},
       {"remediate_threshold", v.remediate_threshold},
       {"max_turns_per_stage", v.max_turns_per_stage},
       {"history_window", v.history_window},
       {"hop_limit", v.hop_limit},
       {"fact_cap", v.fact_cap},
       {"temperature", v.temperature},
       {"max_tokens", v.max_tokens}};
}

// Missing keys keep their defaults so configuration files can be sparse.
void from_json(const json& j, DialogueSettings& v) {
  v = DialogueSettings{};
  read_optional(j, "advance_threshold", v.advance_threshold);
  read_optional(j, "remediate_threshold", v.remediate_threshold);
  read_optional(j, "max_turns_per_stage", v.max_turns_per_stage);
  read_optional(j, "history_window", v.history_window);
  read_optional(j, "hop_limit", v.hop_limit);
  read_optional(j, "fact_cap", v.fact_cap);
  read_optional(j, "temperature", v.temperature);
  read_optional(j, "max_tokens", v.max_tokens);
  validate_settings(v);
}

void to_json(json& j, const DialogueSession& v) {
  j = {{"id", v.id},
       {"config", to_string(v.config)},
       {"problem", v.problem},
       {"stage", to_string(v.stage)},
       {"remediation_origin",
        v.remediation_origin ? json(to_string(*v.remediation_origin)) : json(nullptr)},
       {"transcript", v.transcript},
       {"bandit", v.bandit},
       {"stage_turn_count", v.stage_turn_count},
       {"status", to_string(v.status)},
       {"settings", v.settings},
       {"last_score", v.last_score},
       {"clock", v.clock}};
}

void from_json(const json& j, DialogueSession& v) {
  j.at("id").get_to(v.id);
  v.config = parse_enum<SystemConfig>(j.at("config"), parse_config, "config");
  j.at("problem").get_to(v.problem);
  v.stage = parse_enum<Stage>(j.at("stage"), parse_stage, "stage");
  v.remediation_origin.reset();
  if (auto it = j.find("remediation_origin"); it != j.end() && !it->is_null()) {
    v.remediation_origin = parse_enum<Stage>(*it, parse_stage, "stage");
  }
  j.at("transcript").get_to(v.transcript);
  j.at("bandit").get_to(v.bandit);
  j.at("stage_turn_count").get_to(v.stage_turn_count);
  v.status = parse_enum<SessionStatus>(j.at("status"), parse_status, "status");
  j.at("settings").get_to(v.settings);
  j.at("last_score").get_to(v.last_score);
  j.at("clock").get_to(v.clock);
  for (std::size_t i = 0; i < v.transcript.size(); ++i) {
    if (v.transcript[i].index != i) {
      throw Error(ErrorCode::MalformedDocument, "transcript indices are not 0..n-1");
    }
  }
}

void to_json(json& j, const EvaluationSignal& v) {
  j = {{"score", v.score},
       {"verdict", to_string(v.verdict)},
       {"extracted_answer",
        v.extracted_answer ? json{{"chickens", v.extracted_answer->chickens},
                                  {"rabbits", v.extracted_answer->rabbits}}
                           : json(nullptr)}};
}

void to_json(json& j, const SessionMetrics& v) {
  json stages = json::array();
  for (auto s : v.stage_coverage) stages.push_back(to_string(s));
  j = {{"config", to_string(v.config)},
       {"turn_count", v.turn_count},
       {"grounding_coverage", v.grounding_coverage},
       {"question_ratio", v.question_ratio},
       {"stage_coverage", std::move(stages)},
       {"completed", v.completed}};
}

void to_json(json& j, const AblationReport& v) { j = {{"records", v.records}}; }

void to_json(json& j, const ScriptedBackendSpec& v) {
  json rules = json::array();
  for (const auto& r : v.rules) rules.push_back({{"keyword", r.keyword}, {"response", r.response}});
  j = {{"script", v.script}, {"rules", std::move(rules)}};
}

void from_json(const json& j, ScriptedBackendSpec& v) {
  v = ScriptedBackendSpec{};
  read_optional(j, "script", v.script);
  if (auto it = j.find("rules"); it != j.end() && !it->is_null()) {
    for (const auto& r : *it) {
      v.rules.push_back({r.at("keyword").get<std::string>(), r.at("response").get<std::string>()});
    }
  }
}

json parse_json(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, std::string(what) + ": " + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path);
}

void write_text_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw Error(ErrorCode::IoError, "short write to '" + path + "'");
}

std::string export_transcript(const DialogueSession& session) {
  std::string out;
  for (const auto& turn : session.transcript) {
    json line = {{"index", turn.index},
                 {"role", to_string(turn.role)},
                 {"stage", to_string(turn.stage)},
                 {"strategy_arm", turn.strategy_arm ? json(*turn.strategy_arm) : json(nullptr)},
                 {"cited_facts", turn.cited_facts},
                 {"text", turn.text}};
    out += line.dump();
    out.push_back('\n');
  }
  return out;
}

std::string report_to_string(const AblationReport& report) {
  return json(report).dump(2) + "\n";
}

ProblemInstance load_problem_file(const std::string& path) {
  auto problem = decode<ProblemInstance>(read_json_file(path), path);
  validate_problem(problem);
  return problem;
}

std::vector<std::string> parse_learner_script(const json& j) {
  if (j.is_object() && j.contains("utterances")) {
    return decode<std::vector<std::string>>(j.at("utterances"), "learner script");
  }
  return decode<std::vector<std::string>>(j, "learner script");
}

std::vector<std::string> load_learner_script_file(const std::string& path) {
  return parse_learner_script(read_json_file(path));
}

}  // namespace intellichain
