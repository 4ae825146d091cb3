#pragma once

// Shared helpers for the unit and acceptance tests: shorthand constructors and
// seeded random generators over the term model.

#include "termclamp/parser.hpp"
#include "termclamp/render.hpp"
#include "termclamp/rule_file.hpp"
#include "termclamp/term.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#ifndef TERMCLAMP_STANDARD_RULES
#define TERMCLAMP_STANDARD_RULES ""
#endif

namespace tc_test {

using namespace termclamp;

inline Term T(std::string_view ascii) { return parse_term(ascii); }
inline std::string ascii(const Term& t) { return render(t, Format::ascii); }

inline const RuleSet& standard_rules() {
  static const RuleSet rules = load_rule_file(TERMCLAMP_STANDARD_RULES);
  return rules;
}

inline const SofpaRule& standard_rule(std::string_view name) {
  const SofpaRule* r = standard_rules().find(name);
  if (!r) throw std::runtime_error("fixture rule missing: " + std::string(name));
  return *r;
}

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

  std::string symbol() {
    static const std::vector<std::string> names{"a", "b", "X", "Q", "e", "Gamma", "psi", "F", "u", "Z2", "adag", "eps"};
    return pick(names);
  }

  std::string index_name() {
    static const std::vector<std::string> names{"a", "b", "i", "j", "k", "mu", "nu", "alpha", "rho", "5", "p1"};
    return pick(names);
  }

  IndexRef index() { return {coin() ? Variance::up : Variance::down, index_name()}; }

  Rational coefficient() {
    static const std::vector<long long> nums{1, 1, 1, -1, 2, -3, 7, 5, -12};
    static const std::vector<long long> dens{1, 1, 1, 2, 3, 4};
    return Rational(Rational::Integer(pick(nums)), Rational::Integer(pick(dens)));
  }

  /// Factors in the ASCII-expressible subset: Indexed only with indices,
  /// ornaments only in the default group-of-groups shape or as del's factor.
  Factor factor(int depth = 0) {
    Factor f;
    if (depth < 2 && coin(0.1)) {
      f.stem.symbol = "del";
      f.stem.ornaments.push_back(Ornament::factor(factor(depth + 1)));
    } else {
      f.stem.symbol = symbol();
      if (depth < 2 && coin(0.15)) f.stem.ornaments.push_back(ornament(depth + 1));
    }
    const int shape = between(0, 3);
    if (shape == 0) {
      std::vector<IndexRef> idx;
      const int n = between(1, 4);
      for (int k = 0; k < n; ++k) idx.push_back(index());
      f.shape = Indexed{std::move(idx)};
    } else {
      f.shape = Powered{shape == 1 ? between(2, 5) : 1};
    }
    return f;
  }

  Ornament ornament(int depth) {
    OrnamentGroup groups;
    const int ng = between(1, 2);
    for (int g = 0; g < ng; ++g) {
      OrnamentGroup items;
      const int ni = between(1, 3);
      for (int k = 0; k < ni; ++k) {
        switch (between(0, 2)) {
          case 0: items.push_back(Ornament::atom(pick(std::vector<std::string>{"bar", "mu", "p", "x1"}))); break;
          case 1: items.push_back(Ornament::integer(between(0, 99))); break;
          default: {
            // A plain symbol would come back as an atom, so force a shape.
            Factor f = factor(depth + 1);
            if (f.stem.ornaments.empty() && !f.is_indexed() && f.exponent() == 1) f.shape = Powered{2};
            items.push_back(Ornament::factor(std::move(f)));
          }
        }
      }
      groups.push_back(Ornament::group(std::move(items)));
    }
    return Ornament::group(std::move(groups));
  }

  Summand summand(int max_factors = 4) {
    Summand s;
    s.coefficient = coefficient();
    const int n = between(0, max_factors);
    for (int k = 0; k < n; ++k) s.factors.push_back(factor());
    return s;
  }

  /// Nonempty; the single pure-zero summand is excluded since "0" denotes the
  /// empty sum.
  Term term(int max_summands = 4) {
    Term t;
    const int n = between(1, max_summands);
    for (int k = 0; k < n; ++k) t.summands.push_back(summand());
    return t;
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tc_test
