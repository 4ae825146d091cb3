#pragma once

// In-process HTTP server on an ephemeral loopback port.

#include "termclamp/http_server.hpp"
#include "termclamp/session.hpp"

#include <httplib.h>
#include <json.hpp>

#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace tc_test {

class TestServer {
 public:
  explicit TestServer(termclamp::HttpOptions options = {}) {
    termclamp::mount_routes(server_, service_, std::move(options));
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ <= 0) throw std::runtime_error("cannot bind a loopback port");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~TestServer() {
    server_.stop();
    thread_.join();
  }
  TestServer(const TestServer&) = delete;
  TestServer& operator=(const TestServer&) = delete;

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }
  termclamp::SessionService& service() { return service_; }

 private:
  termclamp::SessionService service_;
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

struct Reply {
  int status = 0;
  nlohmann::json body;
};

inline Reply to_reply(const httplib::Result& r) {
  if (!r) throw std::runtime_error("HTTP request failed: " + httplib::to_string(r.error()));
  return {r->status, r->body.empty() ? nlohmann::json() : nlohmann::json::parse(r->body)};
}

inline Reply post(httplib::Client& c, const std::string& path, const nlohmann::json& body = nlohmann::json::object()) {
  return to_reply(c.Post(path, body.dump(), "application/json"));
}

inline Reply get(httplib::Client& c, const std::string& path) { return to_reply(c.Get(path)); }

/// Create, submit "a adag", list normal-ordering candidates, apply the only
/// one, try a stale apply, undo. Returns the failed expectations.
inline std::vector<std::string> scripted_http_session(httplib::Client& c, const std::string& rule_file) {
  std::vector<std::string> failures;
  auto expect = [&](bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
    return ok;
  };

  const Reply created = post(c, "/sessions", {{"rule_file", rule_file}});
  if (!expect(created.status == 201, "create returned " + std::to_string(created.status))) return failures;
  expect(created.body["revision"] == 0, "new session revision is not 0");
  expect(created.body["rules"].size() == 4, "standard rules not listed");
  const std::string base = "/sessions/" + created.body["id"].get<std::string>();

  const Reply submitted = post(c, base + "/term", {{"term", "a adag"}});
  expect(submitted.status == 200, "submit returned " + std::to_string(submitted.status));
  expect(submitted.body["revision"] == 1, "submit did not bump the revision to 1");

  const Reply listed = get(c, base + "/candidates?rule=normal-ordering&format=ascii,mathml");
  expect(listed.status == 200, "candidates returned " + std::to_string(listed.status));
  expect(listed.body["revision"] == 1, "candidate page revision is not 1");
  expect(listed.body["candidates"].size() == 1, "expected one candidate");
  expect(listed.body["truncated"] == false, "candidate page truncated");
  if (!listed.body["candidates"].empty()) {
    expect(listed.body["candidates"][0]["renderings"]["ascii"] == "«a adag»", "candidate highlight missing");
  }

  const Reply applied = post(c, base + "/apply", {{"rule", "normal-ordering"}, {"candidate", 0}, {"revision", 1}});
  expect(applied.status == 200, "apply returned " + std::to_string(applied.status));
  expect(applied.body["revision"] == 2, "apply did not bump the revision to 2");
  expect(applied.body["term"]["ascii"] == "adag a + 1", "apply result is " + applied.body["term"]["ascii"].dump());

  const Reply stale = post(c, base + "/apply", {{"rule", "normal-ordering"}, {"candidate", 0}, {"revision", 1}});
  expect(stale.status == 409, "stale apply returned " + std::to_string(stale.status));
  expect(stale.body["error"]["code"] == "conflict", "stale apply code is " + stale.body["error"]["code"].dump());
  expect(stale.body["revision"] == 2, "conflict does not report the current revision");
  const Reply after_stale = get(c, base + "/render?format=ascii");
  expect(after_stale.body["revision"] == 2 && after_stale.body["markup"] == "adag a + 1",
         "stale apply mutated the session");

  const Reply undone = post(c, base + "/undo");
  expect(undone.status == 200, "undo returned " + std::to_string(undone.status));
  expect(undone.body["revision"] == 3, "undo did not bump the revision to 3");
  expect(undone.body["term"]["ascii"] == "a adag", "undo did not restore the original term");

  const Reply again = post(c, base + "/undo");
  expect(again.status == 409 && again.body["error"]["code"] == "empty_history", "second undo did not fail");
  return failures;
}

}  // namespace tc_test
