// termclamp command line: parse and render terms, apply rules in batch, serve
// the HTTP session API.

#include "termclamp/http_server.hpp"
#include "termclamp/parser.hpp"
#include "termclamp/render.hpp"
#include "termclamp/rule_file.hpp"
#include "termclamp/session.hpp"

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>

#ifndef TERMCLAMP_DEFAULT_RULES
#define TERMCLAMP_DEFAULT_RULES ""
#endif

namespace {

using namespace termclamp;

constexpr const char* kRulesEnv = "TERMCLAMP_RULES";

int fail(std::string_view code, const std::string& message, std::optional<SourcePos> pos = std::nullopt) {
  nlohmann::json err{{"code", code}, {"message", message}};
  if (pos) {
    err["line"] = pos->line;
    err["column"] = pos->column;
  }
  std::cerr << nlohmann::json{{"error", err}}.dump() << '\n';
  return code == "usage" ? 2 : 1;
}

std::string rules_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kRulesEnv); env && *env) return env;
  return TERMCLAMP_DEFAULT_RULES;
}

RuleSet load_rules(const std::string& flag) {
  const std::string path = rules_path(flag);
  if (path.empty()) {
    throw ServiceError(ServiceError::Code::rule_file,
                       std::string("no rule file; pass --rules or set ") + kRulesEnv);
  }
  try {
    return load_rule_file(path);
  } catch (const RuleFileError& e) {
    throw ServiceError(ServiceError::Code::rule_file, path + ":" + e.what(), std::nullopt, e.position());
  }
}

std::string read_term(const std::string& arg) {
  if (!arg.empty() && arg != "-") return arg;
  std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

Format format_option(const std::string& name) {
  const auto f = parse_format(name);
  if (!f) throw ServiceError(ServiceError::Code::bad_request, "unknown format '" + name + "'");
  return *f;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termclamp: interactive term rewriting with sums of factor patterns"};
  app.require_subcommand(1);

  std::string rules_flag;
  std::string format = "ascii";
  std::string term;

  auto* parse = app.add_subcommand("parse", "parse an ASCII term and render it");
  parse->add_option("term", term, "term text; read from stdin when omitted or '-'");
  parse->add_option("--format", format, "ascii, tex or mathml");
  parse->add_option("--rules", rules_flag, "rule file whose display aliases apply");

  std::string rule;
  std::size_t site = 0;
  auto* apply = app.add_subcommand("apply", "apply a rule to a term, one result per site");
  apply->add_option("--rule", rule, "rule name")->required();
  auto* site_opt = apply->add_option("--site", site, "apply at this site only");
  auto* all_flag = apply->add_flag("--all", "apply at every site (default)");
  site_opt->excludes(all_flag);
  apply->add_option("--format", format, "ascii, tex or mathml");
  apply->add_option("--rules", rules_flag, std::string("rule file; defaults to $") + kRulesEnv);
  apply->add_option("term", term, "term text; read from stdin when omitted or '-'");

  int port = 8080;
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "run the HTTP session service");
  serve->add_option("--port", port, "TCP port; 0 picks a free one");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--rules", rules_flag, "default rule file for new sessions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    if (*parse) {
      const Format f = format_option(format);
      const SymbolRegistry registry = rules_flag.empty() ? standard_registry() : load_rules(rules_flag).registry();
      Term t;
      try {
        t = parse_term(read_term(term), registry);
      } catch (const ParseError& e) {
        return fail("parse_error", e.what(), e.position());
      }
      std::cout << render(t, f, registry) << '\n';
      return 0;
    }

    if (*apply) {
      const Format f = format_option(format);
      const RuleSet rules = load_rules(rules_flag);
      const SymbolRegistry registry = rules.registry();
      const auto results = batch_apply(read_term(term), rules, rule,
                                       site_opt->count() ? std::optional<std::size_t>(site) : std::nullopt);
      for (const auto& r : results) std::cout << render(r, f, registry) << '\n';
      return 0;
    }

    if (*serve) {
      const std::string path = rules_path(rules_flag);
      if (!path.empty()) load_rules(path);
      SessionService service;
      httplib::Server server;
      HttpOptions options;
      if (!path.empty()) options.default_rules = path;
      mount_routes(server, service, options);
      int bound = port;
      if (port == 0) {
        bound = server.bind_to_any_port(host);
      } else if (!server.bind_to_port(host, port)) {
        bound = -1;
      }
      if (bound < 0) return fail("bad_request", "cannot bind " + host + ":" + std::to_string(port));
      std::cout << "listening on " << host << ":" << bound << std::endl;
      return server.listen_after_bind() ? 0 : fail("bad_request", "server stopped with an error");
    }
  } catch (const ServiceError& e) {
    return fail(code_name(e.code()), e.what(), e.position());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
