#pragma once

// ASCII term syntax.
//
//   term      := ['+'|'-'] summand (('+'|'-') summand)*
//   summand   := coefficient factor* | factor+
//   coefficient := INTEGER ['/' INTEGER]
//   factor    := SYMBOL [ORNAMENT_BLOCK] ('**' INTEGER | index*)
//   index     := ('^'|'_') (SYMBOL | INTEGER)
//
// Parsing runs in two stages. The lexer is regular except for ornament
// blocks: a '[' directly after a symbol opens a block that extends to its
// matching ']' and is handed, whole, to the symbol's ornament parser.
//
// Pattern mode (used by rule files) additionally accepts joker symbols
// ("?a", segment jokers "??rest"), as-patterns "?a@a", extension hook
// references "%name" and '|' separating chains.

#include "termclamp/registry.hpp"
#include "termclamp/term.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace termclamp {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

/// Position reached after reading `text` starting at `from`.
SourcePos advance(SourcePos from, std::string_view text);

class ParseError : public std::runtime_error {
 public:
  enum class Kind {
    syntax,
    illegal_character,
    unbalanced_bracket,
    exponent_with_indices,
    juxtaposition,
  };

  ParseError(Kind kind, const std::string& message, SourcePos pos);

  Kind kind() const { return kind_; }
  const SourcePos& position() const { return pos_; }
  /// Message without the position prefix.
  const std::string& detail() const { return detail_; }

 private:
  Kind kind_;
  SourcePos pos_;
  std::string detail_;
};

enum class TokenKind {
  symbol,
  integer,
  plus,
  minus,
  slash,
  doublestar,
  caret,
  underscore,
  ornament_block,
  // pattern mode only
  at,
  bar,
  hook,
};

struct Token {
  TokenKind kind;
  std::string text;  // block contents without brackets; hook name without '%'
  SourcePos pos;
  SourcePos content_pos;  // start of text inside an ornament block
  bool space_before = false;
};

struct LexOptions {
  bool patterns = false;
  std::string joker_marker = "?";
  SourcePos origin{};
};

std::vector<Token> tokenize(std::string_view input, const LexOptions& options = {});

/// Handed to ornament parsers; parses nested text with positions relative to
/// the block being processed.
class OrnamentContext {
 public:
  OrnamentContext(const SymbolRegistry& registry, LexOptions options)
      : registry_(registry), options_(std::move(options)) {}

  /// Parses `text`, which starts `offset` bytes into the block, as exactly
  /// one factor.
  Factor parse_factor(std::string_view text, std::size_t offset = 0) const;

  /// Splits on ';' then ',' (outside nested brackets). Pieces become integer
  /// or symbol atoms, or factors when they carry indices or ornaments.
  Ornament parse_default(std::string_view block) const;

  const SymbolRegistry& registry() const { return registry_; }
  const LexOptions& options() const { return options_; }

 private:
  const SymbolRegistry& registry_;
  LexOptions options_;
};

Term parse_term(std::string_view input, const SymbolRegistry& registry = standard_registry());

/// Parses a single factor; with pattern options jokers are accepted.
Factor parse_factor(std::string_view input, const SymbolRegistry& registry = standard_registry(),
                    const LexOptions& options = {});

/// One element of a pattern chain as written in a rule file.
struct PatternFactorSyntax {
  std::optional<std::string> as_joker;  // "?a" in "?a@a"
  std::optional<std::string> hook;      // "name" in "%name"
  Factor factor;                        // unused when hook is set
};

/// Chains separated by '|'. Every chain must be nonempty.
std::vector<std::vector<PatternFactorSyntax>> parse_pattern_chains(
    std::string_view input, const SymbolRegistry& registry, const LexOptions& options);

/// Replacement blocks separated by '|'. Blocks may be empty.
std::vector<std::vector<Factor>> parse_template_blocks(std::string_view input,
                                                       const SymbolRegistry& registry,
                                                       const LexOptions& options);

}  // namespace termclamp
