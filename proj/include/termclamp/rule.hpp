#pragma once

// Calculation rules: a sofpa pattern plus one replacement template per result
// summand. Each template holds one replacement block per pattern chain; the
// block lands exactly where its chain matched, and everything between the
// chains is carried over untouched.

#include "termclamp/amb.hpp"
#include "termclamp/matcher.hpp"
#include "termclamp/render.hpp"
#include "termclamp/term.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace termclamp {

/// Ordered letters used for silent indices generated during substitution.
struct Alphabet {
  std::string name;
  std::vector<std::string> letters;

  static Alphabet latin();
  static Alphabet greek();
  static std::optional<Alphabet> named(std::string_view name);
};

struct SummandTemplate {
  Rational coefficient{1};
  std::vector<std::vector<Factor>> blocks;
};

struct SofpaRule {
  std::string name;
  Sofpa pattern;
  std::vector<SummandTemplate> subs;
  std::vector<std::pair<std::string, Color>> highlighting;
  std::string description;
  Alphabet alphabet = Alphabet::latin();

  /// Throws RuleError if a template's block count differs from the chain count.
  void validate() const;
};

class RuleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The addressed summand no longer matches the candidate.
class StaleSiteError : public RuleError {
 public:
  using RuleError::RuleError;
};

struct RuleSite {
  std::size_t summand = 0;
  MatchCandidate candidate;

  friend bool operator==(const RuleSite&, const RuleSite&) = default;
};

struct RuleApplication {
  std::string rule;
  RuleSite site;
  std::vector<Summand> result;
};

/// First letter of `alphabet` that neither occurs in `s` nor in `also_avoid`.
/// Throws RuleError when the alphabet is exhausted.
std::string fresh_index_letter(const Summand& s, const Alphabet& alphabet,
                               const std::set<std::string>& also_avoid = {});

/// One summand per template. Template jokers take their bound values; unbound
/// index jokers get fresh letters that are absent from `original`.
std::vector<Summand> instantiate_templates(const SofpaRule& rule, const MatchCandidate& candidate,
                                           const Summand& original);

/// Every (summand, candidate) pair, summands in order.
amb::Results<RuleSite> enumerate_rule_sites(const Term& t, const SofpaRule& rule,
                                            const amb::Budget& budget = {});

/// Replaces the addressed summand by the instantiated templates, in place.
/// Throws StaleSiteError if the site does not fit `t`.
Term apply_rule_at(const Term& t, const RuleSite& site, const SofpaRule& rule,
                   RuleApplication* record = nullptr);

/// Leibniz variation: every n-factor summand becomes n summands, the k-th with
/// factor k wrapped as an ornament of `delta_symbol`. Constants vanish.
Term vary_leibniz(const Term& t, const std::string& delta_symbol);

/// Colors the matched factors whose pattern nodes mention a highlighted joker.
HighlightSpec highlight_for(const SofpaRule& rule, const MatchCandidate& candidate);

}  // namespace termclamp
