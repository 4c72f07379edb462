#include "intellichain/ablation.hpp"

#include <gtest/gtest.h>

#include "intellichain/error.hpp"
#include "intellichain/json_io.hpp"

namespace intellichain {
namespace {

struct Demo {
  KnowledgeGraph graph = load_graph_file(INTELLICHAIN_DATA_DIR "/demo_graph.json");
  ProblemInstance problem = load_problem_file(INTELLICHAIN_DATA_DIR "/chicken_rabbit.json");
  std::vector<std::string> script = load_learner_script_file(INTELLICHAIN_DATA_DIR "/learner.json");
  BackendFactory factory = [] { return std::make_shared<ScriptedBackend>(demo_backend_spec()); };
};

SessionRun run(const Demo& d, SystemConfig config, std::vector<std::string> script,
               StepTrace* trace = nullptr) {
  ScriptedBackend backend(demo_backend_spec());
  LearnerScript learner(std::move(script));
  return run_session_to_completion(config, d.problem, &d.graph, backend, learner, default_arm_set(),
                                   {}, trace);
}

TEST(RunSession, ReplayIsByteIdentical) {
  Demo d;
  auto a = run(d, SystemConfig::AgentWithKG, d.script);
  auto b = run(d, SystemConfig::AgentWithKG, d.script);
  EXPECT_FALSE(a.session.active());
  EXPECT_EQ(export_transcript(a.session), export_transcript(b.session));
  EXPECT_EQ(json(a.session).dump(), json(b.session).dump());
  EXPECT_EQ(a.signals, b.signals);
}

TEST(RunSession, DemoScriptVisitsEveryStage) {
  Demo d;
  auto r = run(d, SystemConfig::AgentWithKG, d.script);
  auto m = compute_metrics(r.session);
  EXPECT_TRUE(m.completed);
  EXPECT_EQ(m.stage_coverage.size(), 6u);
  // First answer is wrong, so a remediation detour happens early.
  EXPECT_EQ(r.signals.front().verdict, Verdict::Incorrect);
  EXPECT_EQ(r.session.transcript[2].stage, Stage::ProblemFraming);
  EXPECT_EQ(r.session.transcript[3].stage, Stage::IterativeFeedback);
}

TEST(RunSession, NoAgentHasNoCitations) {
  Demo d;
  StepTrace trace;
  auto r = run(d, SystemConfig::NoAgent, d.script, &trace);
  EXPECT_FALSE(r.session.active());
  for (const auto& t : r.session.transcript) EXPECT_TRUE(t.cited_facts.empty());
  EXPECT_EQ(trace.retrievals, 0u);
  EXPECT_EQ(trace.arm_selections, 0u);
  EXPECT_EQ(trace.bandit_updates, 0u);
}

TEST(RunSession, NeverCorrectScriptStillTerminates) {
  Demo d;
  std::vector<std::string> wrong(100, "1 and 2");
  auto r = run(d, SystemConfig::AgentWithKG, wrong);
  EXPECT_FALSE(r.session.active());
  auto m = compute_metrics(r.session);
  EXPECT_LE(m.turn_count, r.session.settings.max_turns_per_stage * 6);
}

TEST(RunSession, ShortScriptIsExhausted) {
  Demo d;
  try {
    run(d, SystemConfig::AgentNoKG, {"no idea"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScriptExhausted);
  }
}

TEST(Ablation, DemoOrdering) {
  Demo d;
  auto report = run_ablation(d.problem, d.graph, d.factory, d.script, default_arm_set());
  ASSERT_EQ(report.records.size(), 3u);
  EXPECT_EQ(report.records[0].config, SystemConfig::NoAgent);
  EXPECT_EQ(report.records[1].config, SystemConfig::AgentNoKG);
  EXPECT_EQ(report.records[2].config, SystemConfig::AgentWithKG);
  EXPECT_GT(report.record(SystemConfig::AgentWithKG).grounding_coverage, 0.0);
  EXPECT_EQ(report.record(SystemConfig::AgentNoKG).grounding_coverage, 0.0);
  EXPECT_EQ(report.record(SystemConfig::NoAgent).grounding_coverage, 0.0);
  for (const auto& r : report.records) EXPECT_TRUE(r.completed);
  EXPECT_EQ(report, run_ablation(d.problem, d.graph, d.factory, d.script, default_arm_set()));
}

TEST(Ablation, HintsAloneSeedRetrieval) {
  Demo d;
  std::vector<std::string> plain(30, "I am not sure, 1 or 2");
  auto report = run_ablation(d.problem, d.graph, d.factory, plain, default_arm_set());
  EXPECT_GT(report.record(SystemConfig::AgentWithKG).grounding_coverage, 0.0);
}

TEST(Ablation, EmptyGraphCompletesWithoutGrounding) {
  Demo d;
  auto empty = load_graph(R"({"nodes": [], "edges": []})");
  auto report = run_ablation(d.problem, empty, d.factory, d.script, default_arm_set());
  EXPECT_EQ(report.record(SystemConfig::AgentWithKG).grounding_coverage, 0.0);
  EXPECT_TRUE(report.record(SystemConfig::AgentWithKG).completed);
}

TEST(Metrics, HandBuiltTranscript) {
  Demo d;
  auto s = create_session(SystemConfig::AgentWithKG, d.problem);
  Turn i1{0, Role::Instructor, "What is known?", Stage::ProblemFraming, "hint-first",
          {{"a", Relation::RelatedTo, "b"}}, 0};
  Turn l1{0, Role::Learner, "35 heads", Stage::ProblemFraming, std::nullopt, {}, 0};
  Turn i2{0, Role::Instructor, "Good.", Stage::GuidedQuestioning, "hint-first", {}, 0};
  append_turn(s, i1);
  append_turn(s, l1);
  append_turn(s, i2);
  auto m = compute_metrics(s);
  EXPECT_EQ(m.turn_count, 2u);
  EXPECT_EQ(m.grounding_coverage, 0.5);
  EXPECT_EQ(m.question_ratio, 0.5);
  EXPECT_EQ(m.stage_coverage,
            (std::vector<Stage>{Stage::ProblemFraming, Stage::GuidedQuestioning}));
  EXPECT_FALSE(m.completed);
}

TEST(Export, TranscriptLinesHaveSixFields) {
  Demo d;
  auto r = run(d, SystemConfig::AgentWithKG, d.script);
  auto text = export_transcript(r.session);
  std::size_t lines = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    auto line = json::parse(text.substr(pos, end - pos));
    EXPECT_EQ(line.size(), 6u);
    for (const char* key : {"index", "role", "stage", "strategy_arm", "cited_facts", "text"}) {
      EXPECT_TRUE(line.contains(key)) << key;
    }
    EXPECT_EQ(line["index"], lines);
    ++lines;
    pos = end + 1;
  }
  EXPECT_EQ(lines, r.session.transcript.size());
}

}  // namespace
}  // namespace intellichain
