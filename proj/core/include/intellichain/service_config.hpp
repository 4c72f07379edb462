#pragma once

#include <memory>
#include <string>
#include <vector>

#include "intellichain/bandit.hpp"
#include "intellichain/completion.hpp"
#include "intellichain/dialogue.hpp"
#include "intellichain/knowledge_graph.hpp"
#include "intellichain/problem.hpp"

namespace intellichain {

enum class BackendKind { Scripted, Remote };

/// Service configuration file (JSON):
///
///   {
///     "graph": "demo_graph.json",
///     "problems": ["chicken_rabbit.json", {...inline problem...}],
///     "arms": [{"id": "...", "directive_text": "..."}],
///     "backend": {"kind": "scripted", "script": [...], "rules": [...]}
///              | {"kind": "remote", "model": "...", "base_url": "...", "timeout_seconds": 60},
///     "dialogue": {"advance_threshold": 0.8, "remediate_threshold": 0.3,
///                  "max_turns_per_stage": 4, "history_window": 8,
///                  "hop_limit": 1, "fact_cap": 12, "temperature": 0.2, "max_tokens": 512},
///     "persist_log": "sessions.log",
///     "static_dir": "web",
///     "host": "127.0.0.1", "port": 8080
///   }
///
/// Relative paths resolve against the configuration file's directory. A
/// scripted backend without script or rules uses the built-in demo rules.
/// The remote credential always comes from INTELLICHAIN_API_KEY; the base
/// URL from the file or, failing that, INTELLICHAIN_BASE_URL.
struct ServiceConfig {
  std::string graph_path;
  std::vector<ProblemInstance> problems;
  std::vector<StrategyArm> arms = default_arm_set();
  BackendKind backend = BackendKind::Scripted;
  ScriptedBackendSpec scripted = demo_backend_spec();
  RemoteBackendConfig remote;
  DialogueSettings settings;
  std::string persist_log;
  std::string static_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
};

ServiceConfig parse_service_config(const std::string& text, const std::string& base_dir = ".");
ServiceConfig load_service_config(const std::string& path);

// Scripted: a fresh backend (own cursor) per call. Remote: one shared client.
BackendFactory make_backend_factory(const ServiceConfig& config);

// Remote when INTELLICHAIN_BASE_URL is set, otherwise the scripted demo.
BackendFactory default_backend_factory();

}  // namespace intellichain
