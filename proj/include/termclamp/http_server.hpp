#pragma once

// JSON-over-HTTP front of SessionService.
//
//   POST /sessions                         {"rule_file": path} | {"rules": text} | {} (default rules)
//   POST /sessions/{id}/term               {"term": ascii}
//   GET  /sessions/{id}/rules
//   GET  /sessions/{id}/candidates?rule=NAME&format=mathml,ascii
//   POST /sessions/{id}/apply              {"rule", "candidate", "revision"}
//   POST /sessions/{id}/undo
//   GET  /sessions/{id}/history
//   GET  /sessions/{id}/render?format=tex
//
// Every response body carries "revision" once the session is known. Errors
// are {"error": {"code", "message", ["line", "column"]}, ["revision"]}.

#include "termclamp/session.hpp"

#include <filesystem>
#include <optional>

namespace httplib {
class Server;
}

namespace termclamp {

struct HttpOptions {
  /// Used by POST /sessions when the body names no rules.
  std::optional<std::filesystem::path> default_rules;
};

void mount_routes(httplib::Server& server, SessionService& service, HttpOptions options = {});

int http_status(ServiceError::Code code);

}  // namespace termclamp
