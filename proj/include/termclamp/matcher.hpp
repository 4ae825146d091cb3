#pragma once

// Nondeterministic sofpa matching.
//
// A sofpa ("sequences-of-factors pattern") is a list of chains; each chain is
// a fixed-length list of factor patterns. A match places every chain on a run
// of consecutive factors of a summand, chains left to right and disjoint, with
// arbitrary gaps in between. Patterns are ordinary factors in which names
// starting with the joker marker ("?" by default) act as pattern variables.
//
// Functions documented as nondeterministic must run inside amb::all_values();
// they return once per solution and fail otherwise.

#include "termclamp/amb.hpp"
#include "termclamp/term.hpp"

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace termclamp {

struct JokerConvention {
  std::string marker = "?";

  /// "?x" (and segment jokers "??x").
  bool is_joker(std::string_view name) const;
  /// "??x": matches a sub-sequence inside index lists and ornament groups.
  bool is_segment_joker(std::string_view name) const;
};

/// Value a joker can be bound to: a symbol or index name, a whole factor, a
/// stem, a run of indices (segment jokers) or an ornament subtree.
using BoundValue = std::variant<std::string, Factor, Stem, std::vector<IndexRef>, Ornament>;

class Bindings {
 public:
  const BoundValue* find(std::string_view joker) const;
  bool contains(std::string_view joker) const { return find(joker) != nullptr; }

  /// Binds `joker`, or checks that an existing binding is structurally equal.
  /// Returns false on conflict and leaves the bindings unchanged.
  bool bind(const std::string& joker, BoundValue value);

  /// Nondeterministic: binds or fails.
  void bind_or_fail(const std::string& joker, BoundValue value);

  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  friend bool operator==(const Bindings&, const Bindings&) = default;

 private:
  std::map<std::string, BoundValue, std::less<>> map_;
};

/// Nondeterministic: yields updated bindings for each way the hook accepts
/// the factor. Hooks must be pure and must not keep references to their
/// arguments.
using ExtensionHook = std::function<Bindings(const Factor& value, const Bindings& bindings)>;

class PatternNode {
 public:
  /// A factor compared structurally; jokers embedded in it (stem symbol,
  /// index names, ornament atoms) bind the corresponding parts.
  struct Literal {
    Factor factor;
  };
  /// Matches any factor; repeated occurrences must match equal factors.
  struct JokerRef {
    std::string name;
  };
  struct Extension {
    std::string label;
    ExtensionHook hook;
    /// Jokers the hook may bind; used for highlighting.
    std::vector<std::string> binds;
  };

  /// A bare joker factor ("?x") becomes a JokerRef, anything else a Literal.
  static PatternNode from_factor(Factor factor, const JokerConvention& convention = {});
  static PatternNode literal(Factor factor) { return PatternNode(Literal{std::move(factor)}); }
  static PatternNode joker(std::string name) { return PatternNode(JokerRef{std::move(name)}); }
  static PatternNode extension(std::string label, ExtensionHook hook, std::vector<std::string> binds = {});

  const auto& node() const { return node_; }

  /// Every joker name this node can bind.
  std::vector<std::string> jokers(const JokerConvention& convention = {}) const;

 private:
  explicit PatternNode(std::variant<Literal, JokerRef, Extension> node) : node_(std::move(node)) {}
  std::variant<Literal, JokerRef, Extension> node_;
};

/// Matches `sub` and then binds the whole matched factor to `joker`.
PatternNode as_pattern(std::string joker, PatternNode sub, const JokerConvention& convention = {});

using Chain = std::vector<PatternNode>;

struct Sofpa {
  std::vector<Chain> chains;
  JokerConvention convention;

  /// Throws std::invalid_argument unless there is at least one chain and every
  /// chain is nonempty.
  void validate() const;
  std::size_t total_length() const;
};

struct Segment {
  enum class Kind { between, matched };

  Kind kind = Kind::between;
  std::size_t chain = 0;  // matched only
  std::size_t begin = 0;  // factor positions [begin, end)
  std::size_t end = 0;
  std::vector<Factor> factors;
  /// For matched segments: index of the chain node that matched each factor.
  std::vector<std::size_t> nodes;

  friend bool operator==(const Segment&, const Segment&) = default;
};

/// Segments alternate between and matched, starting and ending with a
/// (possibly empty) between segment.
struct MatchCandidate {
  std::vector<Segment> segments;
  Bindings bindings;

  std::vector<const Segment*> matched() const;

  friend bool operator==(const MatchCandidate&, const MatchCandidate&) = default;
};

/// Nondeterministic.
Bindings match_factor(const PatternNode& pattern, const Factor& value, Bindings bindings,
                      const JokerConvention& convention = {});

/// Nondeterministic. Segment jokers try shorter runs first.
Bindings match_indices(std::span<const IndexRef> pattern, std::span<const IndexRef> value,
                       Bindings bindings, const JokerConvention& convention = {});

/// Nondeterministic.
Bindings match_ornament(const Ornament& pattern, const Ornament& value, Bindings bindings,
                        const JokerConvention& convention = {});

/// Nondeterministic: one candidate per branch, chain 0's position varying
/// slowest.
MatchCandidate choose_candidate(const Sofpa& sofpa, std::span<const Factor> factors);

/// All matches, chain 0's start ascending, then chain 1's, and so on.
amb::Results<MatchCandidate> enumerate_candidates(const Sofpa& sofpa, std::span<const Factor> factors,
                                                  const amb::Budget& budget = {});

/// All binding sets produced by matching one node against one factor.
std::vector<Bindings> match_all(const PatternNode& pattern, const Factor& value,
                                const Bindings& bindings = {}, const JokerConvention& convention = {});

}  // namespace termclamp
