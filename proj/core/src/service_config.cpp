#include "intellichain/service_config.hpp"

#include <cstdlib>
#include <filesystem>

#include "intellichain/error.hpp"
#include "intellichain/json_io.hpp"

namespace intellichain {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_dir) / p).lexically_normal().string();
}

}  // namespace

ServiceConfig parse_service_config(const std::string& text, const std::string& base_dir) {
  const auto doc = parse_json(text, "service configuration");
  if (!doc.is_object()) {
    throw Error(ErrorCode::MalformedDocument, "service configuration must be a JSON object");
  }
  ServiceConfig cfg;
  if (auto it = doc.find("graph"); it != doc.end()) {
    cfg.graph_path = resolve(base_dir, decode<std::string>(*it, "graph"));
  }
  if (auto it = doc.find("problems"); it != doc.end()) {
    for (const auto& entry : *it) {
      auto problem = entry.is_string()
                         ? load_problem_file(resolve(base_dir, entry.get<std::string>()))
                         : decode<ProblemInstance>(entry, "problems[]");
      validate_problem(problem);
      if (problem.id.empty()) {
        throw Error(ErrorCode::MalformedDocument, "configured problems need an \"id\"");
      }
      cfg.problems.push_back(std::move(problem));
    }
  }
  if (auto it = doc.find("arms"); it != doc.end()) {
    cfg.arms = decode<std::vector<StrategyArm>>(*it, "arms");
    make_bandit(cfg.arms);  // validates ids
  }
  if (auto it = doc.find("backend"); it != doc.end()) {
    const auto kind = decode<std::string>(it->value("kind", json("scripted")), "backend.kind");
    if (kind == "scripted") {
      cfg.backend = BackendKind::Scripted;
      auto spec = decode<ScriptedBackendSpec>(*it, "backend");
      if (!spec.script.empty() || !spec.rules.empty()) cfg.scripted = std::move(spec);
    } else if (kind == "remote") {
      cfg.backend = BackendKind::Remote;
      cfg.remote.base_url = it->value("base_url", std::string());
      cfg.remote.model = it->value("model", cfg.remote.model);
      cfg.remote.timeout_seconds = it->value("timeout_seconds", cfg.remote.timeout_seconds);
    } else {
      throw Error(ErrorCode::MalformedDocument, "backend.kind must be scripted or remote");
    }
  }
  if (auto it = doc.find("dialogue"); it != doc.end()) {
    cfg.settings = decode<DialogueSettings>(*it, "dialogue");
  }
  if (auto it = doc.find("persist_log"); it != doc.end()) {
    cfg.persist_log = resolve(base_dir, decode<std::string>(*it, "persist_log"));
  }
  if (auto it = doc.find("static_dir"); it != doc.end()) {
    cfg.static_dir = resolve(base_dir, decode<std::string>(*it, "static_dir"));
  }
  cfg.host = doc.value("host", cfg.host);
  cfg.port = doc.value("port", cfg.port);
  return cfg;
}

ServiceConfig load_service_config(const std::string& path) {
  const auto doc = read_json_file(path);
  auto base = fs::path(path).parent_path().string();
  return parse_service_config(doc.dump(), base.empty() ? "." : base);
}

BackendFactory make_backend_factory(const ServiceConfig& config) {
  if (config.backend == BackendKind::Scripted) {
    return [spec = config.scripted]() -> std::shared_ptr<CompletionBackend> {
      return std::make_shared<ScriptedBackend>(spec);
    };
  }
  auto remote = config.remote;
  if (remote.base_url.empty()) {
    auto env = remote_config_from_environment(remote.model);
    if (!env) {
      throw Error(ErrorCode::InvalidArgument,
                  "remote backend needs base_url in the configuration or INTELLICHAIN_BASE_URL");
    }
    remote.base_url = env->base_url;
  }
  if (const char* key = std::getenv("INTELLICHAIN_API_KEY")) remote.api_key = key;
  auto shared = std::make_shared<RemoteBackend>(std::move(remote));
  return [shared]() -> std::shared_ptr<CompletionBackend> { return shared; };
}

BackendFactory default_backend_factory() {
  if (auto env = remote_config_from_environment()) {
    auto shared = std::make_shared<RemoteBackend>(std::move(*env));
    return [shared]() -> std::shared_ptr<CompletionBackend> { return shared; };
  }
  return []() -> std::shared_ptr<CompletionBackend> {
    return std::make_shared<ScriptedBackend>(demo_backend_spec());
  };
}

}  // namespace intellichain
