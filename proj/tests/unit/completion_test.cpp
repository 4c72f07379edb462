#include "intellichain/completion.hpp"

#include <mutex>
#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "intellichain/error.hpp"

namespace intellichain {
namespace {

CompletionRequest request(std::string user_text) {
  CompletionRequest r;
  r.messages = {{MessageRole::System, "persona"}, {MessageRole::User, std::move(user_text)}};
  return r;
}

ErrorCode code_of(CompletionBackend& backend, const CompletionRequest& r) {
  try {
    backend.complete(r);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::IoError;
}

TEST(ScriptedBackend, KeywordRuleMatches) {
  ScriptedBackend b(ScriptedBackendSpec{{}, {{"legs", "How many legs does each animal have?"}}});
  EXPECT_EQ(b.complete(request("There are 94 LEGS in total")),
            "How many legs does each animal have?");
  EXPECT_EQ(b.cursor(), 0u);
}

TEST(ScriptedBackend, RulesInDeclarationOrderThenScript) {
  ScriptedBackend b(ScriptedBackendSpec{{"one", "two"}, {{"heads", "H"}, {"head", "h"}}});
  EXPECT_EQ(b.complete(request("heads?")), "H");
  EXPECT_EQ(b.complete(request("nothing")), "one");
  EXPECT_EQ(b.complete(request("nothing")), "two");
  EXPECT_EQ(code_of(b, request("nothing")), ErrorCode::BackendFailure);
  EXPECT_EQ(b.calls(), 4u);
}

TEST(ScriptedBackend, EmptyScriptFails) {
  ScriptedBackend b(std::vector<std::string>{});
  EXPECT_EQ(code_of(b, request("hi")), ErrorCode::BackendFailure);
}

TEST(ScriptedBackend, MatchesLastUserMessageOnly) {
  ScriptedBackend b(ScriptedBackendSpec{{"fallback"}, {{"legs", "rule"}}});
  CompletionRequest r;
  r.messages = {{MessageRole::System, "legs"},
                {MessageRole::User, "legs"},
                {MessageRole::Assistant, "ok"},
                {MessageRole::User, "heads"}};
  EXPECT_EQ(b.complete(r), "fallback");
}

TEST(ScriptedBackend, DemoSpecNeverRunsOut) {
  ScriptedBackend b(demo_backend_spec());
  for (int i = 0; i < 50; ++i) EXPECT_FALSE(b.complete(request("anything")).empty());
  EXPECT_NE(b.complete(request("[STAGE]\nclosure: wrap up")).find("summarize"), std::string::npos);
}

TEST(CompletionRequest, Validation) {
  ScriptedBackend b(std::vector<std::string>{"x"});
  CompletionRequest empty;
  EXPECT_EQ(code_of(b, empty), ErrorCode::InvalidArgument);
  CompletionRequest no_system;
  no_system.messages = {{MessageRole::User, "hi"}};
  EXPECT_EQ(code_of(b, no_system), ErrorCode::InvalidArgument);
  auto hot = request("hi");
  hot.temperature = 2.5;
  EXPECT_EQ(code_of(b, hot), ErrorCode::InvalidArgument);
  auto none = request("hi");
  none.max_tokens = 0;
  EXPECT_EQ(code_of(b, none), ErrorCode::InvalidArgument);
  EXPECT_EQ(b.calls(), 0u);
}

TEST(WireFormat, RequestBodyIsBitExact) {
  CompletionRequest r = request("How many \"legs\"?");
  r.temperature = 0.5;
  r.max_tokens = 64;
  EXPECT_EQ(build_request_body("m1", r),
            R"({"model":"m1","messages":[{"role":"system","content":"persona"},)"
            R"({"role":"user","content":"How many \"legs\"?"}],"temperature":0.5,"max_tokens":64})");
}

TEST(WireFormat, ResponseParsing) {
  EXPECT_EQ(parse_completion_response(R"({"choices":[{"message":{"content":"hi?"}}]})"), "hi?");
  for (const char* bad : {"not json", "{}", R"({"choices":[]})",
                          R"({"choices":[{"message":{"content":3}}]})"}) {
    try {
      parse_completion_response(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MalformedResponse) << bad;
    }
  }
}

// Local chat-completions stub that records what it receives.
class StubServer {
 public:
  StubServer() {
    server_.Post(R"(/v1/chat/completions)", [this](const httplib::Request& req, httplib::Response& res) {
      std::lock_guard lock(mutex_);
      last_body_ = req.body;
      last_auth_ = req.get_header_value("Authorization");
      res.status = status_;
      res.set_content(reply_, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubServer() {
    server_.stop();
    thread_.join();
  }

  void respond(int status, std::string body) {
    std::lock_guard lock(mutex_);
    status_ = status;
    reply_ = std::move(body);
  }
  std::string last_body() {
    std::lock_guard lock(mutex_);
    return last_body_;
  }
  std::string last_auth() {
    std::lock_guard lock(mutex_);
    return last_auth_;
  }
  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::mutex mutex_;
  int status_ = 200;
  std::string reply_;
  std::string last_body_;
  std::string last_auth_;
};

TEST(RemoteBackend, StubRoundTrip) {
  StubServer stub;
  stub.respond(200, R"({"id":"x","choices":[{"index":0,"message":{"role":"assistant","content":"What do the heads tell us?"}}]})");
  RemoteBackend backend({stub.base_url(), "tutor-model", "sk-test", 5});
  auto r = request("hello");
  EXPECT_EQ(backend.complete(r), "What do the heads tell us?");
  EXPECT_EQ(stub.last_body(), build_request_body("tutor-model", r));
  EXPECT_EQ(stub.last_auth(), "Bearer sk-test");
}

TEST(RemoteBackend, TrailingSlashInBaseUrl) {
  StubServer stub;
  stub.respond(200, R"({"choices":[{"message":{"content":"ok"}}]})");
  RemoteBackend backend({stub.base_url() + "/", "m", "", 5});
  EXPECT_EQ(backend.complete(request("x")), "ok");
  EXPECT_EQ(stub.last_auth(), "");
}

TEST(RemoteBackend, HttpErrorIsBackendFailure) {
  StubServer stub;
  stub.respond(500, R"({"error":"boom"})");
  RemoteBackend backend({stub.base_url(), "m", "k", 5});
  try {
    backend.complete(request("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BackendFailure);
    EXPECT_NE(std::string(e.what()).find("500"), std::string::npos);
  }
}

TEST(RemoteBackend, MalformedBody) {
  StubServer stub;
  stub.respond(200, R"({"choices":"nope"})");
  RemoteBackend backend({stub.base_url(), "m", "k", 5});
  EXPECT_EQ(code_of(backend, request("x")), ErrorCode::MalformedResponse);
}

TEST(RemoteBackend, UnreachableIsBackendFailure) {
  int port = 0;
  {
    httplib::Server probe;
    port = probe.bind_to_any_port("127.0.0.1");
  }
  RemoteBackend backend({"http://127.0.0.1:" + std::to_string(port), "m", "k", 2});
  EXPECT_EQ(code_of(backend, request("x")), ErrorCode::BackendFailure);
}

TEST(RemoteBackend, RejectsBadUrls) {
  EXPECT_THROW(RemoteBackend({"localhost:8080", "m", "", 1}), Error);
  EXPECT_THROW(RemoteBackend({"ftp://host", "m", "", 1}), Error);
}

}  // namespace
}  // namespace intellichain
