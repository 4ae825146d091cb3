#include "termclamp/http_server.hpp"

#include <httplib.h>
#include <json.hpp>

#include <optional>
#include <sstream>

namespace termclamp {

using nlohmann::json;

int http_status(ServiceError::Code code) {
  switch (code) {
    case ServiceError::Code::not_found: return 404;
    case ServiceError::Code::unknown_rule: return 404;
    case ServiceError::Code::conflict: return 409;
    case ServiceError::Code::empty_history: return 409;
    case ServiceError::Code::out_of_range: return 422;
    case ServiceError::Code::parse_error: return 422;
    case ServiceError::Code::rule_file: return 422;
    case ServiceError::Code::bad_request: return 400;
  }
  return 400;
}

namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kId = "([0-9a-f]+)";

void reply(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), kJson);
}

void reply_error(httplib::Response& res, const ServiceError& e, std::optional<std::uint64_t> revision) {
  json err{{"code", code_name(e.code())}, {"message", e.what()}};
  if (e.position()) {
    err["line"] = e.position()->line;
    err["column"] = e.position()->column;
  }
  json body{{"error", err}};
  if (e.revision()) revision = e.revision();
  if (revision) body["revision"] = *revision;
  reply(res, body, http_status(e.code()));
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  json j;
  try {
    j = json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(ServiceError::Code::bad_request, std::string("malformed JSON body: ") + e.what());
  }
  if (!j.is_object()) throw ServiceError(ServiceError::Code::bad_request, "request body must be a JSON object");
  return j;
}

template <class T>
T field(const json& body, const char* name) {
  const auto it = body.find(name);
  if (it == body.end()) throw ServiceError(ServiceError::Code::bad_request, std::string("missing field '") + name + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ServiceError(ServiceError::Code::bad_request, std::string("field '") + name + "' has the wrong type");
  }
}

std::vector<Format> formats_param(const httplib::Request& req, Format fallback) {
  if (!req.has_param("format")) return {fallback};
  std::vector<Format> out;
  std::istringstream in(req.get_param_value("format"));
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto f = parse_format(item);
    if (!f) throw ServiceError(ServiceError::Code::bad_request, "unknown format '" + item + "'");
    out.push_back(*f);
  }
  if (out.empty()) throw ServiceError(ServiceError::Code::bad_request, "empty format list");
  return out;
}

json term_json(const SessionService& service, const std::string& id, const Term& t) {
  json out;
  for (const Format f : {Format::ascii, Format::tex, Format::mathml}) {
    out[std::string(format_name(f))] = service.render_term(id, t, f);
  }
  return out;
}

json state_json(const SessionService& service, const std::string& id, const TermState& s) {
  return {{"revision", s.revision}, {"term", term_json(service, id, s.term)}};
}

json site_json(const RuleSite& site) {
  json segments = json::array();
  for (const auto& seg : site.candidate.segments) {
    json j{{"kind", seg.kind == Segment::Kind::matched ? "matched" : "between"},
           {"begin", seg.begin},
           {"end", seg.end}};
    if (seg.kind == Segment::Kind::matched) j["chain"] = seg.chain;
    segments.push_back(std::move(j));
  }
  return {{"summand", site.summand}, {"segments", segments}};
}

/// Errors on a known session report its current revision.
template <class Handler>
void guarded(httplib::Response& res, Handler&& handler, const SessionService* service = nullptr,
             const std::string& id = {}) {
  try {
    handler();
  } catch (const ServiceError& e) {
    std::optional<std::uint64_t> revision;
    if (service && e.code() != ServiceError::Code::not_found) {
      try {
        revision = service->current(id).revision;
      } catch (const ServiceError&) {
      }
    }
    reply_error(res, e, revision);
  } catch (const std::exception& e) {
    reply(res, json{{"error", {{"code", "internal"}, {"message", e.what()}}}}, 500);
  }
}

}  // namespace

void mount_routes(httplib::Server& server, SessionService& service, HttpOptions options) {
  const std::string session = std::string("/sessions/") + kId;

  server.Post("/sessions", [&service, options](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const json body = parse_body(req);
      std::string id;
      if (body.contains("rules")) {
        id = service.create_session_from_text(field<std::string>(body, "rules"));
      } else if (body.contains("rule_file")) {
        id = service.create_session(field<std::string>(body, "rule_file"));
      } else if (options.default_rules) {
        id = service.create_session(*options.default_rules);
      } else {
        throw ServiceError(ServiceError::Code::bad_request, "no rule file given and no default configured");
      }
      const RulesView rules = service.rules(id);
      json names = json::array();
      for (const auto& r : rules.rules) names.push_back(r.name);
      reply(res, json{{"id", id}, {"revision", rules.revision}, {"rules", names}}, 201);
    });
  });

  server.Post(session + "/term", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(
        res,
        [&] {
          const json body = parse_body(req);
          reply(res, state_json(service, id, service.submit_term(id, field<std::string>(body, "term"))));
        },
        &service, id);
  });

  server.Get(session + "/rules", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(
        res,
        [&] {
          const RulesView view = service.rules(id);
          json rules = json::array();
          for (const auto& r : view.rules) {
            rules.push_back({{"name", r.name},
                             {"description", r.description},
                             {"chains", r.pattern.chains.size()},
                             {"templates", r.subs.size()},
                             {"alphabet", r.alphabet.name}});
          }
          reply(res, json{{"revision", view.revision}, {"rules", rules}});
        },
        &service, id);
  });

  server.Get(session + "/candidates", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(
        res,
        [&] {
          if (!req.has_param("rule")) {
            throw ServiceError(ServiceError::Code::bad_request, "missing query parameter 'rule'");
          }
          const CandidatePage page =
              service.list_candidates(id, req.get_param_value("rule"), formats_param(req, Format::ascii));
          json candidates = json::array();
          for (const auto& c : page.candidates) {
            json renderings = json::object();
            for (const auto& [f, text] : c.renderings) renderings[std::string(format_name(f))] = text;
            json highlight = json::array();
            for (const auto& [pos, color] : c.highlight) {
              highlight.push_back({{"factor", pos}, {"color", color_name(color)}});
            }
            candidates.push_back({{"index", c.index},
                                  {"site", site_json(c.site)},
                                  {"highlight", highlight},
                                  {"renderings", renderings}});
          }
          reply(res, json{{"revision", page.revision},
                          {"rule", page.rule},
                          {"truncated", page.truncated},
                          {"candidates", candidates}});
        },
        &service, id);
  });

  server.Post(session + "/apply", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(
        res,
        [&] {
          const json body = parse_body(req);
          const auto candidate = field<std::int64_t>(body, "candidate");
          const auto revision = field<std::int64_t>(body, "revision");
          if (candidate < 0) throw ServiceError(ServiceError::Code::out_of_range, "candidate index must be nonnegative");
          if (revision < 0) throw ServiceError(ServiceError::Code::bad_request, "revision must be nonnegative");
          const TermState s = service.apply_candidate(id, field<std::string>(body, "rule"),
                                                      static_cast<std::size_t>(candidate),
                                                      static_cast<std::uint64_t>(revision));
          reply(res, state_json(service, id, s));
        },
        &service, id);
  });

  server.Post(session + "/undo", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(res, [&] { reply(res, state_json(service, id, service.undo(id))); }, &service, id);
  });

  server.Get(session + "/history", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(
        res,
        [&] {
          const HistoryView view = service.history(id);
          const auto ascii = [&](const Term& t) { return service.render_term(id, t, Format::ascii); };
          json entries = json::array();
          for (const auto& e : view.entries) {
            json result = json::array();
            for (const auto& s : e.application.result) result.push_back(ascii(Term{{s}}));
            entries.push_back({{"rule", e.application.rule},
                               {"site", site_json(e.application.site)},
                               {"before", ascii(e.before)},
                               {"after", ascii(e.after)},
                               {"result", result}});
          }
          reply(res, json{{"revision", view.revision}, {"initial", ascii(view.initial)}, {"entries", entries}});
        },
        &service, id);
  });

  server.Get(session + "/render", [&service](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1];
    guarded(
        res,
        [&] {
          const auto formats = formats_param(req, Format::mathml);
          if (formats.size() != 1) {
            throw ServiceError(ServiceError::Code::bad_request, "render takes exactly one format");
          }
          const auto r = service.render(id, formats.front());
          reply(res, json{{"revision", r.revision}, {"format", format_name(formats.front())}, {"markup", r.markup}});
        },
        &service, id);
  });
}

}  // namespace termclamp
