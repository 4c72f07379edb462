#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace intellichain {

enum class MessageRole { System, User, Assistant };

std::string_view to_string(MessageRole role);

struct ChatMessage {
  MessageRole role = MessageRole::User;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct CompletionRequest {
  std::vector<ChatMessage> messages;
  double temperature = 0.2;
  std::size_t max_tokens = 512;
};

// Throws InvalidArgument: empty messages, first message not system,
// temperature outside [0, 2], max_tokens == 0.
void validate_request(const CompletionRequest& request);

/// Anything that turns a chat request into one reply.
class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  // Validates the request, then delegates. Failures surface as Error with
  // BackendFailure or MalformedResponse.
  std::string complete(const CompletionRequest& request);

 private:
  virtual std::string do_complete(const CompletionRequest& request) = 0;
};

using BackendFactory = std::function<std::shared_ptr<CompletionBackend>()>;

struct KeywordRule {
  std::string keyword;
  std::string response;

  friend bool operator==(const KeywordRule&, const KeywordRule&) = default;
};

struct ScriptedBackendSpec {
  std::vector<std::string> script;
  std::vector<KeywordRule> rules;

  friend bool operator==(const ScriptedBackendSpec&, const ScriptedBackendSpec&) = default;
};

/// Deterministic backend for tests and offline demos.
///
/// Rules are tried first, in declaration order, against the last user
/// message (ASCII case-insensitive substring; an empty keyword always
/// matches). Without a matching rule the next script entry is returned.
/// Running out of script is a BackendFailure.
class ScriptedBackend final : public CompletionBackend {
 public:
  explicit ScriptedBackend(ScriptedBackendSpec spec) : spec_(std::move(spec)) {}
  explicit ScriptedBackend(std::vector<std::string> script)
      : spec_{std::move(script), {}} {}

  std::size_t cursor() const { return cursor_; }
  void seek(std::size_t cursor) { cursor_ = cursor; }
  std::size_t calls() const { return calls_; }
  const ScriptedBackendSpec& spec() const { return spec_; }

 private:
  std::string do_complete(const CompletionRequest& request) override;

  ScriptedBackendSpec spec_;
  std::size_t cursor_ = 0;
  std::size_t calls_ = 0;
};

// Stage-keyed Socratic replies covering the heads-and-legs demo; never runs
// out because the last rule has an empty keyword.
ScriptedBackendSpec demo_backend_spec();

struct RemoteBackendConfig {
  std::string base_url;
  std::string model = "gpt-4o-mini";
  std::string api_key;
  int timeout_seconds = 60;
};

// INTELLICHAIN_BASE_URL and INTELLICHAIN_API_KEY; nullopt unless the base
// URL is set.
std::optional<RemoteBackendConfig> remote_config_from_environment(std::string model = "gpt-4o-mini");

// {"model", "messages": [{"role","content"}...], "temperature", "max_tokens"}
// serialized in exactly that key order.
std::string build_request_body(const std::string& model, const CompletionRequest& request);

// choices[0].message.content; throws MalformedResponse.
std::string parse_completion_response(std::string_view body);

/// Chat-completions client: POST <base_url>/chat/completions with a bearer
/// credential. One fresh connection per call, so instances may be shared
/// between sessions and threads.
class RemoteBackend final : public CompletionBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);

  const RemoteBackendConfig& config() const { return config_; }

 private:
  std::string do_complete(const CompletionRequest& request) override;

  RemoteBackendConfig config_;
  std::string origin_;       // scheme://host[:port]
  std::string path_prefix_;  // e.g. "/v1"
};

}  // namespace intellichain
