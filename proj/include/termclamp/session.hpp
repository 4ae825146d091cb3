#pragma once

// In-memory interactive sessions: a current term, a rule set and the list of
// rule applications made since the last submitted term. Every state change
// bumps the session revision; applying a candidate requires the caller to
// quote the revision the candidate list was computed at.

#include "termclamp/amb.hpp"
#include "termclamp/parser.hpp"
#include "termclamp/registry.hpp"
#include "termclamp/render.hpp"
#include "termclamp/rule.hpp"
#include "termclamp/rule_file.hpp"
#include "termclamp/term.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace termclamp {

class ServiceError : public std::runtime_error {
 public:
  enum class Code { not_found, conflict, out_of_range, bad_request, parse_error, unknown_rule, rule_file, empty_history };

  ServiceError(Code code, const std::string& message, std::optional<std::uint64_t> revision = std::nullopt,
               std::optional<SourcePos> position = std::nullopt);

  Code code() const { return code_; }
  const std::optional<std::uint64_t>& revision() const { return revision_; }
  const std::optional<SourcePos>& position() const { return position_; }

 private:
  Code code_;
  std::optional<std::uint64_t> revision_;
  std::optional<SourcePos> position_;
};

std::string_view code_name(ServiceError::Code code);

amb::Budget default_session_budget();

struct TermState {
  std::uint64_t revision = 0;
  Term term;
};

struct CandidateView {
  std::size_t index = 0;
  RuleSite site;
  HighlightSpec highlight;
  std::map<Format, std::string> renderings;
};

struct CandidatePage {
  std::string rule;
  std::uint64_t revision = 0;
  std::vector<CandidateView> candidates;
  bool truncated = false;
};

struct HistoryEntry {
  Term before;
  RuleApplication application;
  Term after;
};

struct HistoryView {
  std::uint64_t revision = 0;
  Term initial;
  std::vector<HistoryEntry> entries;
};

struct RulesView {
  std::uint64_t revision = 0;
  std::vector<SofpaRule> rules;
};

class SessionService {
 public:
  explicit SessionService(amb::Budget budget = default_session_budget());

  /// Sessions start with an empty term at revision 0.
  std::string create_session(const std::filesystem::path& rule_file);
  std::string create_session_from_text(std::string_view rules, std::string origin = "<inline>");

  TermState submit_term(const std::string& id, std::string_view ascii);
  TermState current(const std::string& id) const;
  RulesView rules(const std::string& id) const;
  CandidatePage list_candidates(const std::string& id, const std::string& rule,
                                const std::vector<Format>& formats = {Format::ascii}) const;
  TermState apply_candidate(const std::string& id, const std::string& rule, std::size_t candidate,
                            std::uint64_t revision);
  TermState undo(const std::string& id);
  HistoryView history(const std::string& id) const;

  struct Rendered {
    std::uint64_t revision = 0;
    std::string markup;
  };
  Rendered render(const std::string& id, Format format) const;
  /// Renders any term with the session's symbol registry.
  std::string render_term(const std::string& id, const Term& t, Format format) const;

  void set_budget(const std::string& id, const amb::Budget& budget);

  /// Term, history in ASCII and the rule file reference, as JSON text.
  std::string snapshot(const std::string& id) const;
  void write_snapshot(const std::string& id, const std::filesystem::path& path) const;

  std::size_t session_count() const;

 private:
  struct Session;

  std::string add(std::unique_ptr<Session> session);
  std::shared_ptr<Session> find(const std::string& id) const;

  amb::Budget budget_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

/// Parses `ascii` and applies `rule` independently at every site (`site`
/// unset) or at site `*site` only. One result term per applied site.
std::vector<Term> batch_apply(std::string_view ascii, const RuleSet& rules, const std::string& rule,
                              std::optional<std::size_t> site, const amb::Budget& budget = default_session_budget());

}  // namespace termclamp
