#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "intellichain/ablation.hpp"
#include "intellichain/agents.hpp"
#include "intellichain/error.hpp"
#include "intellichain/json_io.hpp"
#include "intellichain/knowledge_graph.hpp"
#include "intellichain/service.hpp"
#include "intellichain/service_config.hpp"

namespace intellichain::cli {

namespace fs = std::filesystem;

namespace {

struct KgQueryArgs {
  std::string file;
  std::string point;
  std::size_t hops = kDefaultHopLimit;
  std::size_t cap = kDefaultFactCap;
};

struct TutorArgs {
  std::string config;
  std::string graph;
  std::string problem;
  std::string mode = "agent_kg";
};

struct AblateArgs {
  std::string graph;
  std::string problem;
  std::string script;
  std::string out;
  std::string backend;
  std::string arms;
};

struct ServeArgs {
  std::string config;
  std::string host;
  int port = -1;
};

int kg_validate(const std::string& file, std::ostream& out) {
  auto graph = load_graph_file(file);
  out << file << ": ok (" << graph.nodes().size() << " nodes, " << graph.edges().size()
      << " edges, " << graph.alias_index().size() << " aliases)\n";
  return kOk;
}

int kg_query(const KgQueryArgs& args, std::ostream& out) {
  auto graph = load_graph_file(args.file);
  auto seeds = link_knowledge_points(args.point, graph);
  auto bundle = query_context(graph, seeds, args.hops, args.cap);
  out << json(bundle).dump(2) << "\n";
  return kOk;
}

void print_turn(const Turn& turn, const KnowledgeGraph* graph, std::ostream& out) {
  out << "[" << to_string(turn.role);
  if (turn.role != Role::System) out << " | " << to_string(turn.stage);
  if (turn.strategy_arm) out << " | " << *turn.strategy_arm;
  out << "] " << turn.text << "\n";
  if (graph != nullptr) {
    for (const auto& fact : turn.cited_facts) out << "    cites: " << render_fact(fact, *graph) << "\n";
  }
}

int tutor(const TutorArgs& args, std::istream& in, std::ostream& out) {
  auto mode = parse_config(args.mode);
  if (!mode) throw Error(ErrorCode::InvalidArgument, "unknown mode '" + args.mode + "'");

  ServiceConfig cfg;
  BackendFactory factory = default_backend_factory();
  if (!args.config.empty()) {
    cfg = load_service_config(args.config);
    factory = make_backend_factory(cfg);
  }
  if (!args.graph.empty()) cfg.graph_path = args.graph;
  ProblemInstance problem;
  if (!args.problem.empty()) {
    problem = load_problem_file(args.problem);
  } else if (!cfg.problems.empty()) {
    problem = cfg.problems.front();
  } else {
    throw Error(ErrorCode::InvalidArgument, "tutor needs --problem or a configuration with problems");
  }
  std::optional<KnowledgeGraph> graph;
  if (!cfg.graph_path.empty()) graph = load_graph_file(cfg.graph_path);
  if (uses_knowledge(*mode) && !graph) {
    throw Error(ErrorCode::InvalidArgument, "agent_kg mode needs --graph or a configured graph");
  }
  const KnowledgeGraph* kg = graph ? &*graph : nullptr;

  SessionOptions opts;
  opts.id = "tutor";
  opts.settings = cfg.settings;
  opts.arms = cfg.arms;
  auto session = create_session(*mode, problem, std::move(opts));
  auto backend = factory();
  print_turn(session.transcript.front(), kg, out);
  if (uses_agents(session.config)) print_turn(take_instructor_turn(session, kg, *backend), kg, out);

  std::string line;
  while (session.active()) {
    out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    auto outcome = respond_to_learner(session, line, kg, *backend);
    out << "    (" << to_string(outcome.signal.verdict) << ", score " << outcome.signal.score
        << ", stage " << to_string(session.stage) << ")\n";
    if (outcome.instructor_turn) print_turn(*outcome.instructor_turn, kg, out);
  }
  out << (session.active() ? "session left active\n" : "session completed\n");
  return kOk;
}

std::string transcript_path(const std::string& report_path, SystemConfig config) {
  fs::path p(report_path);
  auto name = p.stem().string() + "." + std::string(to_string(config)) + ".jsonl";
  return (p.parent_path() / name).string();
}

int ablate(const AblateArgs& args, std::ostream& out) {
  auto graph = load_graph_file(args.graph);
  auto problem = load_problem_file(args.problem);
  auto script = load_learner_script_file(args.script);
  auto spec = args.backend.empty() ? demo_backend_spec()
                                   : decode<ScriptedBackendSpec>(read_json_file(args.backend),
                                                                 args.backend);
  auto arms = args.arms.empty() ? default_arm_set()
                                : decode<std::vector<StrategyArm>>(read_json_file(args.arms), args.arms);
  BackendFactory factory = [spec]() -> std::shared_ptr<CompletionBackend> {
    return std::make_shared<ScriptedBackend>(spec);
  };

  auto result = run_ablation_with_transcripts(problem, graph, factory, script, arms);
  write_text_file(args.out, report_to_string(result.report));
  for (const auto& run : result.runs) {
    write_text_file(transcript_path(args.out, run.session.config), export_transcript(run.session));
  }
  for (const auto& r : result.report.records) {
    out << to_string(r.config) << ": turns=" << r.turn_count
        << " grounding=" << r.grounding_coverage << " questions=" << r.question_ratio
        << " stages=" << r.stage_coverage.size() << " completed=" << (r.completed ? "yes" : "no")
        << "\n";
  }
  out << "report written to " << args.out << "\n";
  return kOk;
}

int serve(const ServeArgs& args, std::ostream& out, std::ostream& err) {
  auto cfg = load_service_config(args.config);
  if (!args.host.empty()) cfg.host = args.host;
  if (args.port >= 0) cfg.port = args.port;
  TutorService service(options_from_config(cfg));
  const int port = service.bind(cfg.host, cfg.port);
  if (port < 0) {
    err << "error: cannot bind " << cfg.host << ":" << cfg.port << "\n";
    return kDomainError;
  }
  out << "listening on http://" << cfg.host << ":" << port << "\n" << std::flush;
  return service.listen_after_bind() ? kOk : kDomainError;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Knowledge-graph grounded Socratic tutoring engine", "intellichain"};
  app.require_subcommand(1);

  auto* kg = app.add_subcommand("kg", "Knowledge graph utilities");
  kg->require_subcommand(1);
  std::string validate_file;
  auto* kg_validate_cmd = kg->add_subcommand("validate", "Load and validate a graph file");
  kg_validate_cmd->add_option("file", validate_file, "Graph JSON file")->required();

  KgQueryArgs query;
  auto* kg_query_cmd = kg->add_subcommand("query", "Link a knowledge point and print its context");
  kg_query_cmd->add_option("file", query.file, "Graph JSON file")->required();
  kg_query_cmd->add_option("--point", query.point, "Free text naming a knowledge point")->required();
  kg_query_cmd->add_option("--hops", query.hops, "Hop limit")->capture_default_str();
  kg_query_cmd->add_option("--cap", query.cap, "Maximum number of facts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  TutorArgs tutor_args;
  auto* tutor_cmd = app.add_subcommand("tutor", "Interactive tutoring session on stdin/stdout");
  tutor_cmd->add_option("--config", tutor_args.config, "Service configuration file");
  tutor_cmd->add_option("--graph", tutor_args.graph, "Graph JSON file");
  tutor_cmd->add_option("--problem", tutor_args.problem, "Problem JSON file");
  tutor_cmd->add_option("--mode", tutor_args.mode, "no_agent, agent_no_kg or agent_kg")
      ->capture_default_str();

  AblateArgs ablate_args;
  auto* ablate_cmd = app.add_subcommand("ablate", "Run the three-configuration comparison");
  ablate_cmd->add_option("--graph", ablate_args.graph, "Graph JSON file")->required();
  ablate_cmd->add_option("--problem", ablate_args.problem, "Problem JSON file")->required();
  ablate_cmd->add_option("--script", ablate_args.script, "Learner script JSON file")->required();
  ablate_cmd->add_option("--out", ablate_args.out, "Report JSON output path")->required();
  ablate_cmd->add_option("--backend", ablate_args.backend, "Scripted backend JSON (default: demo)");
  ablate_cmd->add_option("--arms", ablate_args.arms, "Strategy arm set JSON");

  ServeArgs serve_args;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", serve_args.config, "Service configuration file")->required();
  serve_cmd->add_option("--host", serve_args.host, "Bind address");
  serve_cmd->add_option("--port", serve_args.port, "Port (0 picks a free one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e, out, err) == 0) return kOk;  // --help
    err << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (*kg_validate_cmd) return kg_validate(validate_file, out);
    if (*kg_query_cmd) return kg_query(query, out);
    if (*tutor_cmd) return tutor(tutor_args, in, out);
    if (*ablate_cmd) return ablate(ablate_args, out);
    if (*serve_cmd) return serve(serve_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomainError;
  }
  err << app.help();
  return kUsageError;
}

}  // namespace intellichain::cli
