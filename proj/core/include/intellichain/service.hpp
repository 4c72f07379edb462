#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "intellichain/completion.hpp"
#include "intellichain/dialogue.hpp"
#include "intellichain/knowledge_graph.hpp"
#include "intellichain/service_config.hpp"
#include "intellichain/session_store.hpp"

namespace intellichain {

struct ApiResponse {
  int status = 200;
  nlohmann::json body;
};

struct ServiceOptions {
  std::shared_ptr<const KnowledgeGraph> graph;  // null means an empty graph
  std::vector<ProblemInstance> problems;
  std::vector<StrategyArm> arms = default_arm_set();
  DialogueSettings settings;
  BackendFactory backend_factory;
  std::string persist_log;
  std::string static_dir;
};

ServiceOptions options_from_config(const ServiceConfig& config);

/// Tutoring sessions over HTTP.
///
///   POST /api/sessions                 {"config", "problem": id | {...}}
///   POST /api/sessions/{id}/messages   {"text"}
///   GET  /api/sessions/{id}
///   GET  /api/kg/query?point=&hops=&cap=
///   GET  /api/problems
///   GET  /api/health
///
/// Each handler is also callable directly and returns the status and body
/// the HTTP route would send.
class TutorService {
 public:
  explicit TutorService(ServiceOptions options);
  ~TutorService();

  TutorService(const TutorService&) = delete;
  TutorService& operator=(const TutorService&) = delete;

  ApiResponse create_session(const std::string& request_body);
  ApiResponse post_message(const std::string& session_id, const std::string& request_body);
  ApiResponse get_session(const std::string& session_id) const;
  ApiResponse query_kg(const std::optional<std::string>& point,
                       const std::optional<std::string>& hops,
                       const std::optional<std::string>& cap) const;
  ApiResponse list_problems() const;
  ApiResponse health() const;

  const KnowledgeGraph& graph() const { return *graph_; }
  const SessionStore& store() const { return store_; }

  // Binds (port 0 picks a free port) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Blocks serving requests until stop().
  bool listen_after_bind();
  // Blocks until listen_after_bind is serving.
  void wait_until_ready() const;
  void stop();

 private:
  struct Http;

  std::shared_ptr<CompletionBackend> backend_for(SessionStore::Entry& entry);
  void install_routes();

  std::shared_ptr<const KnowledgeGraph> graph_;
  std::vector<ProblemInstance> problems_;
  std::vector<StrategyArm> arms_;
  DialogueSettings settings_;
  BackendFactory backend_factory_;
  std::string static_dir_;
  SessionStore store_;
  std::unique_ptr<Http> http_;
};

}  // namespace intellichain
