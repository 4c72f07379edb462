#include "intellichain/completion.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "intellichain/error.hpp"

namespace intellichain {

std::string_view to_string(MessageRole role) {
  switch (role) {
    case MessageRole::System: return "system";
    case MessageRole::User: return "user";
    case MessageRole::Assistant: return "assistant";
  }
  return "user";
}

void validate_request(const CompletionRequest& request) {
  if (request.messages.empty()) {
    throw Error(ErrorCode::InvalidArgument, "completion request has no messages");
  }
  if (request.messages.front().role != MessageRole::System) {
    throw Error(ErrorCode::InvalidArgument, "first completion message must have role system");
  }
  if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
    throw Error(ErrorCode::InvalidArgument, "temperature must lie in [0, 2]");
  }
  if (request.max_tokens == 0) {
    throw Error(ErrorCode::InvalidArgument, "max_tokens must be positive");
  }
}

std::string CompletionBackend::complete(const CompletionRequest& request) {
  validate_request(request);
  return do_complete(request);
}

namespace {

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string ScriptedBackend::do_complete(const CompletionRequest& request) {
  ++calls_;
  std::string_view last_user;
  for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
    if (it->role == MessageRole::User) {
      last_user = it->content;
      break;
    }
  }
  const auto haystack = ascii_lower(last_user);
  for (const auto& rule : spec_.rules) {
    if (haystack.find(ascii_lower(rule.keyword)) != std::string::npos) return rule.response;
  }
  if (cursor_ >= spec_.script.size()) {
    throw Error(ErrorCode::BackendFailure,
                "scripted backend exhausted after " + std::to_string(spec_.script.size()) +
                    " responses");
  }
  return spec_.script[cursor_++];
}

ScriptedBackendSpec demo_backend_spec() {
  ScriptedBackendSpec spec;
  spec.rules = {
      {"problem_framing:",
       "Before we calculate anything, what does the problem tell us, and what exactly are we "
       "asked to find?"},
      {"guided_questioning:",
       "Every animal has exactly one head. What does the total number of heads tell you about "
       "the number of chickens plus the number of rabbits?"},
      {"sequential_reasoning:",
       "Call the chickens c and the rabbits r. How would you write the total number of legs "
       "using c and r, and what happens if you subtract twice the heads equation from it?"},
      {"iterative_feedback:",
       "Let's test that attempt against both conditions. Does it give the right number of heads, "
       "and does it give the right number of legs?"},
      {"exploratory_inquiry:",
       "Suppose the farm also kept ducks with two legs each. What extra information would you "
       "need to pin down all three numbers?"},
      {"closure:",
       "Can you summarize the steps you took and say how many chickens and how many rabbits "
       "there are?"},
      {"", "What do you notice about the problem so far?"},
  };
  return spec;
}

std::optional<RemoteBackendConfig> remote_config_from_environment(std::string model) {
  const char* base = std::getenv("INTELLICHAIN_BASE_URL");
  if (base == nullptr || *base == '\0') return std::nullopt;
  RemoteBackendConfig cfg;
  cfg.base_url = base;
  cfg.model = std::move(model);
  if (const char* key = std::getenv("INTELLICHAIN_API_KEY")) cfg.api_key = key;
  return cfg;
}

std::string build_request_body(const std::string& model, const CompletionRequest& request) {
  nlohmann::ordered_json messages = nlohmann::ordered_json::array();
  for (const auto& m : request.messages) {
    nlohmann::ordered_json jm;
    jm["role"] = to_string(m.role);
    jm["content"] = m.content;
    messages.push_back(std::move(jm));
  }
  nlohmann::ordered_json body;
  body["model"] = model;
  body["messages"] = std::move(messages);
  body["temperature"] = request.temperature;
  body["max_tokens"] = request.max_tokens;
  return body.dump();
}

std::string parse_completion_response(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedResponse, std::string("response is not JSON: ") + e.what());
  }
  try {
    const auto& content = doc.at("choices").at(0).at("message").at("content");
    if (!content.is_string()) {
      throw Error(ErrorCode::MalformedResponse, "choices[0].message.content is not a string");
    }
    return content.get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedResponse,
                std::string("missing choices[0].message.content: ") + e.what());
  }
}

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  const auto& url = config_.base_url;
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument, "base URL '" + url + "' has no scheme");
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::InvalidArgument, "unsupported URL scheme '" + scheme + "'");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (scheme == "https") {
    throw Error(ErrorCode::InvalidArgument, "built without TLS support; https unavailable");
  }
#endif
  const auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_prefix_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string RemoteBackend::do_complete(const CompletionRequest& request) {
  httplib::Client client(origin_);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  client.set_write_timeout(config_.timeout_seconds, 0);

  httplib::Headers headers;
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  const auto path = path_prefix_ + "/chat/completions";
  auto result = client.Post(path, headers, build_request_body(config_.model, request),
                            "application/json");
  if (!result) {
    throw Error(ErrorCode::BackendFailure,
                "POST " + origin_ + path + " failed: " + httplib::to_string(result.error()));
  }
  if (result->status < 200 || result->status >= 300) {
    auto snippet = result->body.substr(0, 256);
    throw Error(ErrorCode::BackendFailure, "POST " + origin_ + path + " returned HTTP " +
                                               std::to_string(result->status) + ": " + snippet);
  }
  return parse_completion_response(result->body);
}

}  // namespace intellichain
