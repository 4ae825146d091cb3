#pragma once

// Fixtures shared by the unit suites and the acceptance binary.

#include "support.hpp"

#include "termclamp/matcher.hpp"
#include "termclamp/rule.hpp"

#include <sstream>

namespace tc_test {

inline std::vector<Factor> sentence_factors() {
  std::vector<Factor> out;
  std::istringstream words("The swift small brown horse might never ever allow being shoed");
  for (std::string w; words >> w;) out.push_back(Factor::symbol(w));
  return out;
}

inline PatternNode five_letter_word() {
  return PatternNode::extension("five-letter-word", [](const Factor& v, const Bindings& b) {
    amb::require(v.stem.ornaments.empty() && !v.is_indexed() && v.exponent() == 1 && v.stem.symbol.size() == 5);
    return b;
  });
}

inline Sofpa sentence_sofpa() {
  const Chain triple{five_letter_word(), five_letter_word(), five_letter_word()};
  return Sofpa{{triple, triple}, {}};
}

/// Matched words, chains joined by " | ".
inline std::string matched_words(const MatchCandidate& c) {
  std::string out;
  for (const Segment* s : c.matched()) {
    if (!out.empty()) out += " | ";
    for (std::size_t k = 0; k < s->factors.size(); ++k) out += (k ? " " : "") + s->factors[k].stem.symbol;
  }
  return out;
}

inline const std::vector<std::string>& sentence_expected() {
  static const std::vector<std::string> expected{
      "swift small brown | horse might never", "swift small brown | allow being shoed",
      "small brown horse | allow being shoed", "brown horse might | allow being shoed",
      "horse might never | allow being shoed"};
  return expected;
}

/// A summand of at most 8 factors over {a, b, c} and a literal sofpa of at
/// most 2 chains, each of length at most 2.
struct LiteralInstance {
  std::vector<Factor> factors;
  std::vector<std::vector<Factor>> chains;

  Sofpa sofpa() const {
    Sofpa s;
    for (const auto& chain : chains) {
      Chain c;
      for (const auto& f : chain) c.push_back(PatternNode::literal(f));
      s.chains.push_back(std::move(c));
    }
    return s;
  }
};

inline LiteralInstance random_literal_instance(Gen& g) {
  static const std::vector<std::string> alphabet{"a", "b", "c"};
  LiteralInstance inst;
  const int n = g.between(0, 8);
  for (int k = 0; k < n; ++k) inst.factors.push_back(Factor::symbol(g.pick(alphabet)));
  const int chains = g.between(1, 2);
  for (int i = 0; i < chains; ++i) {
    std::vector<Factor> chain;
    const int len = g.between(1, 2);
    for (int k = 0; k < len; ++k) chain.push_back(Factor::symbol(g.pick(alphabet)));
    inst.chains.push_back(std::move(chain));
  }
  return inst;
}

/// Start positions of every chain, by direct search over all placements.
inline std::vector<std::vector<std::size_t>> brute_force_placements(const LiteralInstance& inst) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> starts;
  auto fits = [&](std::size_t chain, std::size_t pos) {
    const auto& c = inst.chains[chain];
    if (pos + c.size() > inst.factors.size()) return false;
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!structural_equal(c[k], inst.factors[pos + k])) return false;
    }
    return true;
  };
  auto rec = [&](auto& self, std::size_t chain, std::size_t from) -> void {
    if (chain == inst.chains.size()) {
      out.push_back(starts);
      return;
    }
    for (std::size_t pos = from; pos < inst.factors.size() + 1; ++pos) {
      if (!fits(chain, pos)) continue;
      starts.push_back(pos);
      self(self, chain + 1, pos + inst.chains[chain].size());
      starts.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

inline std::vector<std::vector<std::size_t>> matcher_placements(const LiteralInstance& inst) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& c : enumerate_candidates(inst.sofpa(), inst.factors).values) {
    std::vector<std::size_t> starts;
    for (const Segment* s : c.matched()) starts.push_back(s->begin);
    out.push_back(std::move(starts));
  }
  return out;
}

/// Rewrites T_?i into two factors that carry two index jokers absent from
/// the pattern.
inline const SofpaRule& fresh_index_rule() {
  static const RuleSet set = parse_rule_file(R"(
rule split
  pattern: T_?i
  subs: 1 : S^?j_?k U_?j^?k_?i
end
)");
  return set.rules.at(0);
}

/// A summand containing a T_x factor among factors whose indices crowd the
/// start of the latin alphabet.
inline Summand random_fresh_instance(Gen& g) {
  static const std::vector<std::string> crowded{"a", "b", "c", "d", "e", "f", "i", "j", "mu"};
  Summand s;
  s.coefficient = g.coefficient();
  const int n = g.between(0, 4);
  const std::size_t target = g.below(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    if (static_cast<std::size_t>(k) == target) {
      s.factors.push_back(Factor::indexed("T", {IndexRef::down(g.pick(crowded))}));
      continue;
    }
    std::vector<IndexRef> idx;
    const int m = g.between(1, 4);
    for (int q = 0; q < m; ++q) idx.push_back({g.coin() ? Variance::up : Variance::down, g.pick(crowded)});
    s.factors.push_back(Factor::indexed(g.coin() ? "V" : "W", std::move(idx)));
  }
  if (g.coin(0.2)) s.factors.push_back(Factor{Stem{"del", {Ornament::factor(Factor::indexed("F", {IndexRef::down("g")}))}}, Indexed{{IndexRef::down("h")}}});
  return s;
}

/// Empty when both generated letters are distinct and absent from the original
/// summand; otherwise a description of the violation.
inline std::string fresh_index_violation(const Summand& original) {
  const SofpaRule& rule = fresh_index_rule();
  const Term t{{original}};
  const auto sites = enumerate_rule_sites(t, rule);
  if (sites.values.size() != 1) return "expected one site, got " + std::to_string(sites.values.size());
  const Term out = apply_rule_at(t, sites.values[0], rule);
  if (out.summands.size() != 1) return "expected one summand";
  const std::size_t at = sites.values[0].candidate.matched()[0]->begin;
  const auto& produced = out.summands[0].factors;
  const std::string j = produced.at(at).indices()->at(0).name;
  const std::string k = produced.at(at).indices()->at(1).name;
  const auto used = used_index_letters(original);
  if (j == k) return "fresh letters coincide: " + j;
  if (used.contains(j) || used.contains(k)) return "fresh letter reused: " + j + ", " + k;
  if (produced.at(at + 1).indices()->at(0).name != j || produced.at(at + 1).indices()->at(1).name != k) {
    return "fresh letters not shared across the template";
  }
  return {};
}

}  // namespace tc_test
