#include "termclamp/session.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iterator>
#include <mutex>
#include <random>

namespace termclamp {

ServiceError::ServiceError(Code code, const std::string& message, std::optional<std::uint64_t> revision,
                           std::optional<SourcePos> position)
    : std::runtime_error(message), code_(code), revision_(revision), position_(position) {}

std::string_view code_name(ServiceError::Code code) {
  switch (code) {
    case ServiceError::Code::not_found: return "not_found";
    case ServiceError::Code::conflict: return "conflict";
    case ServiceError::Code::out_of_range: return "out_of_range";
    case ServiceError::Code::bad_request: return "bad_request";
    case ServiceError::Code::parse_error: return "parse_error";
    case ServiceError::Code::unknown_rule: return "unknown_rule";
    case ServiceError::Code::rule_file: return "rule_file";
    case ServiceError::Code::empty_history: return "empty_history";
  }
  return "error";
}

amb::Budget default_session_budget() { return amb::Budget{1000, 1000000}; }

struct SessionService::Session {
  std::string rule_ref;
  RuleSet rules;
  SymbolRegistry registry;
  amb::Budget budget;

  mutable std::shared_mutex mutex;
  std::uint64_t revision = 0;
  Term initial;
  Term current;
  std::vector<HistoryEntry> history;

  const SofpaRule& rule(const std::string& name) const {
    const SofpaRule* r = rules.find(name);
    if (!r) throw ServiceError(ServiceError::Code::unknown_rule, "unknown rule '" + name + "'", revision);
    return *r;
  }
};

SessionService::SessionService(amb::Budget budget) : budget_(budget) {}

std::string SessionService::create_session(const std::filesystem::path& rule_file) {
  std::ifstream in(rule_file, std::ios::binary);
  if (!in) throw ServiceError(ServiceError::Code::rule_file, "cannot read rule file " + rule_file.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return create_session_from_text(text, rule_file.string());
}

std::string SessionService::create_session_from_text(std::string_view rules, std::string origin) {
  auto s = std::make_unique<Session>();
  try {
    s->rules = parse_rule_file(rules);
  } catch (const RuleFileError& e) {
    throw ServiceError(ServiceError::Code::rule_file, origin + ":" + e.what(), std::nullopt, e.position());
  }
  s->rule_ref = std::move(origin);
  s->registry = s->rules.registry();
  s->budget = budget_;
  return add(std::move(s));
}

std::string SessionService::add(std::unique_ptr<Session> session) {
  thread_local std::mt19937_64 rng{std::random_device{}()};
  std::shared_ptr<Session> shared(std::move(session));
  std::unique_lock lock(mutex_);
  for (;;) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(rng()));
    std::string id(buf);
    if (sessions_.emplace(id, shared).second) return id;
  }
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(ServiceError::Code::not_found, "no session '" + id + "'");
  return it->second;
}

std::size_t SessionService::session_count() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

TermState SessionService::submit_term(const std::string& id, std::string_view ascii) {
  const auto s = find(id);
  std::unique_lock lock(s->mutex);
  Term t;
  try {
    t = parse_term(ascii, s->registry);
  } catch (const ParseError& e) {
    throw ServiceError(ServiceError::Code::parse_error, e.what(), s->revision, e.position());
  }
  s->initial = t;
  s->current = std::move(t);
  s->history.clear();
  ++s->revision;
  return {s->revision, s->current};
}

TermState SessionService::current(const std::string& id) const {
  const auto s = find(id);
  std::shared_lock lock(s->mutex);
  return {s->revision, s->current};
}

RulesView SessionService::rules(const std::string& id) const {
  const auto s = find(id);
  std::shared_lock lock(s->mutex);
  return {s->revision, s->rules.rules};
}

CandidatePage SessionService::list_candidates(const std::string& id, const std::string& rule,
                                              const std::vector<Format>& formats) const {
  const auto s = find(id);
  std::shared_lock lock(s->mutex);
  const SofpaRule& r = s->rule(rule);
  CandidatePage page;
  page.rule = rule;
  page.revision = s->revision;
  auto sites = enumerate_rule_sites(s->current, r, s->budget);
  page.truncated = sites.truncated;
  for (std::size_t k = 0; k < sites.values.size(); ++k) {
    CandidateView view;
    view.index = k;
    view.site = std::move(sites.values[k]);
    view.highlight = highlight_for(r, view.site.candidate);
    for (const Format f : formats) {
      view.renderings[f] = render_candidate(s->current.summands[view.site.summand], view.highlight, f, s->registry);
    }
    page.candidates.push_back(std::move(view));
  }
  return page;
}

TermState SessionService::apply_candidate(const std::string& id, const std::string& rule, std::size_t candidate,
                                          std::uint64_t revision) {
  const auto s = find(id);
  std::unique_lock lock(s->mutex);
  if (revision != s->revision) {
    throw ServiceError(ServiceError::Code::conflict,
                       "stale revision " + std::to_string(revision) + "; the term is at revision " +
                           std::to_string(s->revision) + ", list the candidates again",
                       s->revision);
  }
  const SofpaRule& r = s->rule(rule);
  const auto sites = enumerate_rule_sites(s->current, r, s->budget);
  if (candidate >= sites.values.size()) {
    throw ServiceError(ServiceError::Code::out_of_range,
                       "candidate " + std::to_string(candidate) + " out of range; rule '" + rule + "' has " +
                           std::to_string(sites.values.size()) + " candidates",
                       s->revision);
  }
  HistoryEntry entry;
  try {
    entry.after = apply_rule_at(s->current, sites.values[candidate], r, &entry.application);
  } catch (const RuleError& e) {
    throw ServiceError(ServiceError::Code::bad_request, e.what(), s->revision);
  }
  entry.before = s->current;
  s->current = entry.after;
  s->history.push_back(std::move(entry));
  ++s->revision;
  return {s->revision, s->current};
}

TermState SessionService::undo(const std::string& id) {
  const auto s = find(id);
  std::unique_lock lock(s->mutex);
  if (s->history.empty()) throw ServiceError(ServiceError::Code::empty_history, "nothing to undo", s->revision);
  s->current = std::move(s->history.back().before);
  s->history.pop_back();
  ++s->revision;
  return {s->revision, s->current};
}

HistoryView SessionService::history(const std::string& id) const {
  const auto s = find(id);
  std::shared_lock lock(s->mutex);
  return {s->revision, s->initial, s->history};
}

SessionService::Rendered SessionService::render(const std::string& id, Format format) const {
  const auto s = find(id);
  std::shared_lock lock(s->mutex);
  return {s->revision, termclamp::render(s->current, format, s->registry)};
}

std::string SessionService::render_term(const std::string& id, const Term& t, Format format) const {
  return termclamp::render(t, format, find(id)->registry);
}

void SessionService::set_budget(const std::string& id, const amb::Budget& budget) {
  const auto s = find(id);
  std::unique_lock lock(s->mutex);
  s->budget = budget;
}

std::string SessionService::snapshot(const std::string& id) const {
  const auto s = find(id);
  std::shared_lock lock(s->mutex);
  const auto ascii = [&](const Term& t) { return termclamp::render(t, Format::ascii, s->registry); };
  nlohmann::json j;
  j["rules"] = s->rule_ref;
  j["revision"] = s->revision;
  j["initial"] = ascii(s->initial);
  j["current"] = ascii(s->current);
  j["history"] = nlohmann::json::array();
  for (const auto& e : s->history) {
    j["history"].push_back({{"rule", e.application.rule},
                            {"summand", e.application.site.summand},
                            {"before", ascii(e.before)},
                            {"after", ascii(e.after)}});
  }
  return j.dump(2);
}

void SessionService::write_snapshot(const std::string& id, const std::filesystem::path& path) const {
  const std::string text = snapshot(id);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ServiceError(ServiceError::Code::bad_request, "cannot write " + path.string());
  out << text << '\n';
}

std::vector<Term> batch_apply(std::string_view ascii, const RuleSet& rules, const std::string& rule,
                              std::optional<std::size_t> site, const amb::Budget& budget) {
  const SymbolRegistry registry = rules.registry();
  Term t;
  try {
    t = parse_term(ascii, registry);
  } catch (const ParseError& e) {
    throw ServiceError(ServiceError::Code::parse_error, e.what(), std::nullopt, e.position());
  }
  const SofpaRule* r = rules.find(rule);
  if (!r) throw ServiceError(ServiceError::Code::unknown_rule, "unknown rule '" + rule + "'");
  const auto sites = enumerate_rule_sites(t, *r, budget);
  std::vector<Term> out;
  try {
    if (site) {
      if (*site >= sites.values.size()) {
        throw ServiceError(ServiceError::Code::out_of_range,
                           "site " + std::to_string(*site) + " out of range; rule '" + rule + "' has " +
                               std::to_string(sites.values.size()) + " sites");
      }
      out.push_back(apply_rule_at(t, sites.values[*site], *r));
    } else {
      for (const auto& s : sites.values) out.push_back(apply_rule_at(t, s, *r));
    }
  } catch (const RuleError& e) {
    throw ServiceError(ServiceError::Code::bad_request, e.what());
  }
  return out;
}

}  // namespace termclamp
