#include "intellichain/service.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include <httplib.h>

#include "intellichain/ablation.hpp"
#include "intellichain/agents.hpp"
#include "intellichain/error.hpp"
#include "intellichain/json_io.hpp"
#include "intellichain/text.hpp"

namespace intellichain {

struct TutorService::Http {
  httplib::Server server;
};

ServiceOptions options_from_config(const ServiceConfig& config) {
  ServiceOptions o;
  if (!config.graph_path.empty()) {
    o.graph = std::make_shared<const KnowledgeGraph>(load_graph_file(config.graph_path));
  }
  o.problems = config.problems;
  o.arms = config.arms;
  o.settings = config.settings;
  o.backend_factory = make_backend_factory(config);
  o.persist_log = config.persist_log;
  o.static_dir = config.static_dir;
  return o;
}

namespace {

ApiResponse error_response(int status, const std::string& message) {
  return {status, {{"error", message}}};
}

ApiResponse error_response(const Error& e) {
  int status = 500;
  switch (e.code()) {
    case ErrorCode::BackendFailure:
    case ErrorCode::MalformedResponse: status = 503; break;
    case ErrorCode::SessionCompleted: status = 409; break;
    case ErrorCode::MalformedDocument:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidProblem:
    case ErrorCode::InfeasibleProblem:
    case ErrorCode::RoleOrderViolation:
    case ErrorCode::UnknownSeed: status = 400; break;
    default: break;
  }
  return {status, {{"error", e.what()}, {"code", to_string(e.code())}}};
}

std::optional<json> parse_body(const std::string& body) {
  try {
    auto j = json::parse(body.empty() ? std::string("{}") : body);
    if (j.is_object()) return j;
  } catch (const json::parse_error&) {
  }
  return std::nullopt;
}

std::optional<std::size_t> parse_size(const std::string& s) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

json session_view(const DialogueSession& s) {
  return {{"id", s.id},
          {"config", to_string(s.config)},
          {"problem", s.problem},
          {"stage", to_string(s.stage)},
          {"status", to_string(s.status)},
          {"remediation_origin",
           s.remediation_origin ? json(to_string(*s.remediation_origin)) : json(nullptr)},
          {"stage_turn_count", s.stage_turn_count},
          {"transcript", s.transcript},
          {"bandit", s.bandit},
          {"metrics", compute_metrics(s)}};
}

}  // namespace

TutorService::TutorService(ServiceOptions options)
    : graph_(options.graph ? std::move(options.graph) : std::make_shared<const KnowledgeGraph>()),
      problems_(std::move(options.problems)),
      arms_(std::move(options.arms)),
      settings_(options.settings),
      backend_factory_(std::move(options.backend_factory)),
      static_dir_(std::move(options.static_dir)),
      store_(std::move(options.persist_log)),
      http_(std::make_unique<Http>()) {
  validate_settings(settings_);
  make_bandit(arms_);
  if (!backend_factory_) {
    backend_factory_ = [] { return std::make_shared<ScriptedBackend>(demo_backend_spec()); };
  }
  install_routes();
}

TutorService::~TutorService() { stop(); }

std::shared_ptr<CompletionBackend> TutorService::backend_for(SessionStore::Entry& entry) {
  if (!entry.backend) {
    entry.backend = backend_factory_();
    if (auto* scripted = dynamic_cast<ScriptedBackend*>(entry.backend.get());
        scripted != nullptr && entry.restored_cursor) {
      scripted->seek(*entry.restored_cursor);
    }
  }
  return entry.backend;
}

ApiResponse TutorService::create_session(const std::string& request_body) {
  auto body = parse_body(request_body);
  if (!body) return error_response(400, "request body must be a JSON object");

  auto config_it = body->find("config");
  if (config_it == body->end() || !config_it->is_string()) {
    return error_response(400, "\"config\" must be one of no_agent, agent_no_kg, agent_kg");
  }
  auto config = parse_config(config_it->get<std::string>());
  if (!config) {
    return error_response(400, "unknown config '" + config_it->get<std::string>() + "'");
  }

  ProblemInstance problem;
  auto problem_it = body->find("problem");
  if (problem_it == body->end()) return error_response(400, "\"problem\" is required");
  if (problem_it->is_string()) {
    const auto wanted = problem_it->get<std::string>();
    auto found = std::find_if(problems_.begin(), problems_.end(),
                              [&](const ProblemInstance& p) { return p.id == wanted; });
    if (found == problems_.end()) return error_response(400, "unknown problem '" + wanted + "'");
    problem = *found;
  } else if (problem_it->is_object()) {
    try {
      problem = decode<ProblemInstance>(*problem_it, "problem");
    } catch (const Error& e) {
      return error_response(e);
    }
  } else {
    return error_response(400, "\"problem\" must be an id or an inline problem object");
  }
  try {
    validate_problem(problem);
  } catch (const Error& e) {
    return error_response(e);
  }
  if (!solve_heads_legs(problem.heads, problem.legs)) {
    return error_response(400, "problem with " + std::to_string(problem.heads) + " heads and " +
                                   std::to_string(problem.legs) + " legs has no solution");
  }

  try {
    SessionOptions opts;
    opts.id = store_.next_id();
    opts.settings = settings_;
    opts.arms = arms_;
    auto session = intellichain::create_session(*config, std::move(problem), std::move(opts));
    auto backend = backend_factory_();
    if (uses_agents(session.config)) {
      take_instructor_turn(session, graph_.get(), *backend);
    }
    auto entry = store_.insert(std::move(session), std::move(backend));
    std::lock_guard lock(entry->mutex);
    store_.persist(*entry);
    const auto& s = entry->session;
    return {201,
            {{"id", s.id},
             {"config", to_string(s.config)},
             {"stage", to_string(s.stage)},
             {"status", to_string(s.status)},
             {"turn", s.transcript.back()}}};
  } catch (const Error& e) {
    return error_response(e);
  }
}

ApiResponse TutorService::post_message(const std::string& session_id,
                                       const std::string& request_body) {
  auto entry = store_.find(session_id);
  if (!entry) return error_response(404, "no session '" + session_id + "'");
  auto body = parse_body(request_body);
  if (!body) return error_response(400, "request body must be a JSON object");
  std::string text;
  if (auto it = body->find("text"); it != body->end() && !it->is_null()) {
    if (!it->is_string()) return error_response(400, "\"text\" must be a string");
    text = it->get<std::string>();
  }

  std::lock_guard lock(entry->mutex);
  auto& session = entry->session;
  if (!session.active()) return error_response(409, "session '" + session_id + "' is completed");
  try {
    auto backend = backend_for(*entry);
    auto outcome = respond_to_learner(session, std::move(text), graph_.get(), *backend);
    store_.persist(*entry);
    return {200,
            {{"turn", outcome.instructor_turn ? json(*outcome.instructor_turn) : json(nullptr)},
             {"stage", to_string(session.stage)},
             {"status", to_string(session.status)},
             {"signal", outcome.signal}}};
  } catch (const Error& e) {
    return error_response(e);
  }
}

ApiResponse TutorService::get_session(const std::string& session_id) const {
  auto entry = store_.find(session_id);
  if (!entry) return error_response(404, "no session '" + session_id + "'");
  std::lock_guard lock(entry->mutex);
  return {200, session_view(entry->session)};
}

ApiResponse TutorService::query_kg(const std::optional<std::string>& point,
                                   const std::optional<std::string>& hops,
                                   const std::optional<std::string>& cap) const {
  if (!point || text::normalize(*point).empty()) {
    return error_response(400, "\"point\" must be non-empty");
  }
  std::size_t hop_limit = settings_.hop_limit;
  std::size_t fact_cap = settings_.fact_cap;
  if (hops) {
    auto v = parse_size(*hops);
    if (!v) return error_response(400, "\"hops\" must be a non-negative integer");
    hop_limit = *v;
  }
  if (cap) {
    auto v = parse_size(*cap);
    if (!v || *v == 0) return error_response(400, "\"cap\" must be a positive integer");
    fact_cap = *v;
  }
  auto seeds = link_knowledge_points(*point, *graph_);
  return {200, query_context(*graph_, seeds, hop_limit, fact_cap)};
}

ApiResponse TutorService::list_problems() const { return {200, {{"problems", problems_}}}; }

ApiResponse TutorService::health() const {
  return {200, {{"status", "ok"}, {"sessions", store_.size()}}};
}

void TutorService::install_routes() {
  auto& srv = http_->server;
  auto send = [](httplib::Response& res, const ApiResponse& api) {
    res.status = api.status;
    res.set_content(api.body.dump(), "application/json");
  };
  auto param = [](const httplib::Request& req, const char* key) -> std::optional<std::string> {
    if (!req.has_param(key)) return std::nullopt;
    return req.get_param_value(key);
  };

  srv.Post("/api/sessions", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, create_session(req.body));
  });
  srv.Post(R"(/api/sessions/([^/]+)/messages)",
           [this, send](const httplib::Request& req, httplib::Response& res) {
             send(res, post_message(req.matches[1], req.body));
           });
  srv.Get(R"(/api/sessions/([^/]+))",
          [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, get_session(req.matches[1]));
          });
  srv.Get("/api/kg/query",
          [this, send, param](const httplib::Request& req, httplib::Response& res) {
            send(res, query_kg(param(req, "point"), param(req, "hops"), param(req, "cap")));
          });
  srv.Get("/api/problems", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, list_problems());
  });
  srv.Get("/api/health", [this, send](const httplib::Request&, httplib::Response& res) {
    send(res, health());
  });
  srv.set_exception_handler(
      [send](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        send(res, error_response(500, what));
      });
  if (!static_dir_.empty() && std::filesystem::is_directory(static_dir_)) {
    srv.set_mount_point("/", static_dir_);
  }
}

int TutorService::bind(const std::string& host, int port) {
  if (port == 0) return http_->server.bind_to_any_port(host);
  return http_->server.bind_to_port(host, port) ? port : -1;
}

bool TutorService::listen_after_bind() { return http_->server.listen_after_bind(); }

void TutorService::wait_until_ready() const { http_->server.wait_until_ready(); }

void TutorService::stop() {
  if (http_ && http_->server.is_running()) http_->server.stop();
}

}  // namespace intellichain
