#include "termclamp/parser.hpp"

#include <cctype>
#include <charconv>
#include <utility>

namespace termclamp {

SourcePos advance(SourcePos from, std::string_view text) {
  for (char c : text) {
    ++from.offset;
    if (c == '\n') {
      ++from.line;
      from.column = 1;
    } else {
      ++from.column;
    }
  }
  return from;
}

namespace {

std::string format_message(const std::string& message, SourcePos pos) {
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return is_alpha(c) || is_digit(c); }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

ParseError::ParseError(Kind kind, const std::string& message, SourcePos pos)
    : std::runtime_error(format_message(message, pos)), kind_(kind), pos_(pos), detail_(message) {}

// ---------------------------------------------------------------------------
// Stage one

namespace {

class Lexer {
 public:
  Lexer(std::string_view input, const LexOptions& options)
      : in_(input), opt_(options), pos_(options.origin) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool space = false;
    while (i_ < in_.size()) {
      const char c = in_[i_];
      if (is_space(c)) {
        space = true;
        bump(1);
        continue;
      }
      Token t;
      t.pos = pos_;
      t.space_before = space;
      space = false;

      if (is_alpha(c) || (opt_.patterns && marker_at(i_))) {
        lex_symbol(t);
        out.push_back(std::move(t));
        if (i_ < in_.size() && in_[i_] == '[') {
          out.push_back(lex_block());
        }
        continue;
      }
      if (is_digit(c)) {
        std::size_t j = i_;
        while (j < in_.size() && is_digit(in_[j])) ++j;
        t.kind = TokenKind::integer;
        t.text = std::string(in_.substr(i_, j - i_));
        bump(j - i_);
        out.push_back(std::move(t));
        continue;
      }
      switch (c) {
        case '+': t.kind = TokenKind::plus; break;
        case '-': t.kind = TokenKind::minus; break;
        case '/': t.kind = TokenKind::slash; break;
        case '^': t.kind = TokenKind::caret; break;
        case '_': t.kind = TokenKind::underscore; break;
        case '*':
          if (i_ + 1 < in_.size() && in_[i_ + 1] == '*') {
            t.kind = TokenKind::doublestar;
            t.text = "**";
            bump(2);
            out.push_back(std::move(t));
            continue;
          }
          throw ParseError(ParseError::Kind::illegal_character, "single '*' (use '**' for powers)", pos_);
        case '[':
          throw ParseError(ParseError::Kind::syntax, "ornament block must directly follow a symbol", pos_);
        case ']':
          throw ParseError(ParseError::Kind::unbalanced_bracket, "unmatched ']'", pos_);
        default:
          if (opt_.patterns && c == '@') {
            t.kind = TokenKind::at;
            break;
          }
          if (opt_.patterns && c == '|') {
            t.kind = TokenKind::bar;
            break;
          }
          if (opt_.patterns && c == '%') {
            std::size_t j = i_ + 1;
            if (j >= in_.size() || !is_alpha(in_[j])) {
              throw ParseError(ParseError::Kind::syntax, "expected hook name after '%'", pos_);
            }
            while (j < in_.size() && (is_alnum(in_[j]) || in_[j] == '-')) ++j;
            t.kind = TokenKind::hook;
            t.text = std::string(in_.substr(i_ + 1, j - i_ - 1));
            bump(j - i_);
            out.push_back(std::move(t));
            continue;
          }
          throw ParseError(ParseError::Kind::illegal_character,
                           std::string("illegal character '") + c + "'", pos_);
      }
      t.text = std::string(1, c);
      bump(1);
      out.push_back(std::move(t));
    }
    return out;
  }

 private:
  bool marker_at(std::size_t at) const {
    return !opt_.joker_marker.empty() && in_.substr(at).starts_with(opt_.joker_marker);
  }

  void bump(std::size_t n) {
    pos_ = advance(pos_, in_.substr(i_, n));
    i_ += n;
  }

  void lex_symbol(Token& t) {
    std::size_t j = i_;
    if (opt_.patterns) {
      for (int reps = 0; reps < 2 && marker_at(j); ++reps) j += opt_.joker_marker.size();
    }
    if (j >= in_.size() || !is_alpha(in_[j])) {
      throw ParseError(ParseError::Kind::syntax, "joker marker must be followed by a name",
                       advance(pos_, in_.substr(i_, j - i_)));
    }
    while (j < in_.size() && is_alnum(in_[j])) ++j;
    t.kind = TokenKind::symbol;
    t.text = std::string(in_.substr(i_, j - i_));
    bump(j - i_);
  }

  Token lex_block() {
    Token t;
    t.kind = TokenKind::ornament_block;
    t.pos = pos_;
    std::vector<SourcePos> open{pos_};
    bump(1);
    t.content_pos = pos_;
    const std::size_t start = i_;
    while (i_ < in_.size()) {
      const char c = in_[i_];
      if (c == '[') {
        open.push_back(pos_);
      } else if (c == ']') {
        open.pop_back();
        if (open.empty()) {
          t.text = std::string(in_.substr(start, i_ - start));
          bump(1);
          return t;
        }
      }
      bump(1);
    }
    throw ParseError(ParseError::Kind::unbalanced_bracket, "unmatched '['", open.front());
  }

  std::string_view in_;
  const LexOptions& opt_;
  SourcePos pos_;
  std::size_t i_ = 0;
};

}  // namespace

std::vector<Token> tokenize(std::string_view input, const LexOptions& options) {
  return Lexer(input, options).run();
}

// ---------------------------------------------------------------------------
// Stage two

namespace {

class Parser {
 public:
  Parser(std::string_view input, const SymbolRegistry& registry, const LexOptions& options)
      : registry_(registry),
        options_(options),
        tokens_(tokenize(input, options)),
        end_pos_(advance(options.origin, input)) {}

  Term term() {
    Term t;
    if (tokens_.size() == 1 && tokens_[0].kind == TokenKind::integer && tokens_[0].text == "0") {
      return t;
    }
    bool negative = false;
    if (at(TokenKind::minus) || at(TokenKind::plus)) {
      negative = at(TokenKind::minus);
      ++i_;
    }
    t.summands.push_back(summand(negative));
    while (at(TokenKind::plus) || at(TokenKind::minus)) {
      negative = at(TokenKind::minus);
      ++i_;
      t.summands.push_back(summand(negative));
    }
    expect_end();
    return t;
  }

  Factor single_factor() {
    if (!at(TokenKind::symbol)) error_here("expected a factor");
    Factor f = factor();
    expect_end();
    return f;
  }

  std::vector<std::vector<PatternFactorSyntax>> pattern_chains() {
    std::vector<std::vector<PatternFactorSyntax>> chains(1);
    for (;;) {
      if (at(TokenKind::bar) || done()) {
        if (chains.back().empty()) error_here("empty pattern chain");
        if (done()) break;
        ++i_;
        chains.emplace_back();
        continue;
      }
      chains.back().push_back(pattern_factor());
    }
    return chains;
  }

  std::vector<std::vector<Factor>> template_blocks() {
    std::vector<std::vector<Factor>> blocks(1);
    while (!done()) {
      if (at(TokenKind::bar)) {
        ++i_;
        blocks.emplace_back();
        continue;
      }
      if (!at(TokenKind::symbol)) error_here("expected a factor in replacement block");
      check_separated(!blocks.back().empty());
      blocks.back().push_back(factor());
    }
    return blocks;
  }

 private:
  bool done() const { return i_ >= tokens_.size(); }
  bool at(TokenKind k) const { return !done() && tokens_[i_].kind == k; }
  SourcePos here() const { return done() ? end_pos_ : tokens_[i_].pos; }

  [[noreturn]] void error_here(const std::string& message,
                               ParseError::Kind kind = ParseError::Kind::syntax) const {
    std::string full = message;
    if (!done()) full += " near '" + tokens_[i_].text + "'";
    else full += " at end of input";
    throw ParseError(kind, full, here());
  }

  void expect_end() const {
    if (!done()) error_here("unexpected token");
  }

  // Factors must be separated by whitespace from whatever precedes them in
  // the same summand.
  void check_separated(bool has_predecessor) const {
    if (has_predecessor && !tokens_[i_].space_before) {
      throw ParseError(ParseError::Kind::juxtaposition,
                       "factors must be separated by whitespace before '" + tokens_[i_].text + "'",
                       tokens_[i_].pos);
    }
  }

  Rational::Integer integer_token() {
    return Rational::Integer(tokens_[i_++].text);
  }

  Summand summand(bool negative) {
    Summand s;
    bool has_coefficient = false;
    if (at(TokenKind::integer)) {
      Rational::Integer num = integer_token();
      Rational::Integer den = 1;
      if (at(TokenKind::slash)) {
        ++i_;
        if (!at(TokenKind::integer)) error_here("expected denominator");
        const SourcePos den_pos = here();
        den = integer_token();
        if (den.is_zero()) throw ParseError(ParseError::Kind::syntax, "zero denominator", den_pos);
      }
      s.coefficient = Rational(std::move(num), std::move(den));
      has_coefficient = true;
    }
    while (at(TokenKind::symbol)) {
      check_separated(has_coefficient || !s.factors.empty());
      s.factors.push_back(factor());
    }
    if (!has_coefficient && s.factors.empty()) error_here("expected a coefficient or a factor");
    if (negative) s.coefficient = -s.coefficient;
    return s;
  }

  Ornament ornament(const std::string& symbol, const Token& block) const {
    LexOptions nested = options_;
    nested.origin = block.content_pos;
    OrnamentContext ctx(registry_, nested);
    const SymbolEntry* entry = registry_.find(symbol);
    if (entry && entry->parse_ornament) return entry->parse_ornament(block.text, ctx);
    return ctx.parse_default(block.text);
  }

  Factor factor() {
    const Token& sym = tokens_[i_++];
    Factor f;
    f.stem.symbol = sym.text;
    if (at(TokenKind::ornament_block)) {
      f.stem.ornaments.push_back(ornament(sym.text, tokens_[i_]));
      ++i_;
    }

    if (at(TokenKind::doublestar)) {
      ++i_;
      if (!at(TokenKind::integer)) error_here("expected integer exponent after '**'");
      const SourcePos exp_pos = here();
      const Rational::Integer e = integer_token();
      if (e < 1 || e > 1000000) {
        throw ParseError(ParseError::Kind::syntax, "exponent must be a positive integer", exp_pos);
      }
      f.shape = Powered{e.convert_to<int>()};
      if (at(TokenKind::caret) || at(TokenKind::underscore)) {
        error_here("a factor carries either an exponent or indices, not both",
                   ParseError::Kind::exponent_with_indices);
      }
      return f;
    }

    std::vector<IndexRef> indices;
    while (at(TokenKind::caret) || at(TokenKind::underscore)) {
      const Variance v = at(TokenKind::caret) ? Variance::up : Variance::down;
      ++i_;
      if (!(at(TokenKind::symbol) || at(TokenKind::integer)) || tokens_[i_].space_before) {
        error_here("expected index name");
      }
      indices.push_back({v, tokens_[i_++].text});
    }
    if (at(TokenKind::doublestar)) {
      error_here("a factor carries either an exponent or indices, not both",
                 ParseError::Kind::exponent_with_indices);
    }
    const SymbolEntry* entry = registry_.find(f.stem.symbol);
    if (!indices.empty() || (entry && entry->index_carrying)) {
      f.shape = Indexed{std::move(indices)};
    } else {
      f.shape = Powered{1};
    }
    return f;
  }

  PatternFactorSyntax pattern_factor() {
    PatternFactorSyntax p;
    if (at(TokenKind::hook)) {
      p.hook = tokens_[i_++].text;
      return p;
    }
    if (!at(TokenKind::symbol)) error_here("expected a factor pattern");
    if (i_ + 1 < tokens_.size() && tokens_[i_ + 1].kind == TokenKind::at) {
      p.as_joker = tokens_[i_].text;
      i_ += 2;
      if (!at(TokenKind::symbol)) error_here("expected a factor pattern after '@'");
    }
    p.factor = factor();
    return p;
  }

  const SymbolRegistry& registry_;
  LexOptions options_;
  std::vector<Token> tokens_;
  SourcePos end_pos_;
  std::size_t i_ = 0;
};

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && is_space(s.front())) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Splits at `sep` outside nested brackets; yields (piece, offset) pairs.
std::vector<std::pair<std::string_view, std::size_t>> split_top(std::string_view text, char sep) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '[') ++depth;
    if (text[i] == ']') --depth;
    if (text[i] == sep && depth == 0) {
      out.emplace_back(text.substr(start, i - start), start);
      start = i + 1;
    }
  }
  out.emplace_back(text.substr(start), start);
  return out;
}

}  // namespace

Factor OrnamentContext::parse_factor(std::string_view text, std::size_t offset) const {
  LexOptions shifted = options_;
  shifted.origin.column += offset;
  shifted.origin.offset += offset;
  return Parser(text, registry_, shifted).single_factor();
}

Ornament OrnamentContext::parse_default(std::string_view block) const {
  OrnamentGroup groups;
  std::size_t unused = 0;
  if (trim(block, unused).empty()) return Ornament::group({});

  auto piece_pos = [&](std::size_t offset) {
    SourcePos p = options_.origin;
    p.column += offset;
    p.offset += offset;
    return p;
  };
  auto is_plain_symbol = [&](std::string_view s) {
    std::size_t j = 0;
    if (options_.patterns && !options_.joker_marker.empty()) {
      for (int reps = 0; reps < 2 && s.substr(j).starts_with(options_.joker_marker); ++reps) {
        j += options_.joker_marker.size();
      }
    }
    if (j >= s.size() || !is_alpha(s[j])) return false;
    for (; j < s.size(); ++j) {
      if (!is_alnum(s[j])) return false;
    }
    return true;
  };

  for (const auto& [part, part_off] : split_top(block, ';')) {
    OrnamentGroup items;
    for (const auto& [raw, raw_off] : split_top(part, ',')) {
      std::size_t off = part_off + raw_off;
      const std::string_view piece = trim(raw, off);
      if (piece.empty()) {
        throw ParseError(ParseError::Kind::syntax, "empty ornament item", piece_pos(off));
      }
      bool all_digits = true;
      for (char c : piece) all_digits = all_digits && is_digit(c);
      if (all_digits) {
        std::int64_t value = 0;
        const auto res = std::from_chars(piece.data(), piece.data() + piece.size(), value);
        if (res.ec != std::errc()) {
          throw ParseError(ParseError::Kind::syntax, "integer ornament out of range", piece_pos(off));
        }
        items.push_back(Ornament::integer(value));
      } else if (is_plain_symbol(piece)) {
        items.push_back(Ornament::atom(std::string(piece)));
      } else {
        items.push_back(Ornament::factor(parse_factor(piece, off)));
      }
    }
    groups.push_back(Ornament::group(std::move(items)));
  }
  return Ornament::group(std::move(groups));
}

Term parse_term(std::string_view input, const SymbolRegistry& registry) {
  return Parser(input, registry, LexOptions{}).term();
}

Factor parse_factor(std::string_view input, const SymbolRegistry& registry, const LexOptions& options) {
  return Parser(input, registry, options).single_factor();
}

std::vector<std::vector<PatternFactorSyntax>> parse_pattern_chains(std::string_view input,
                                                                   const SymbolRegistry& registry,
                                                                   const LexOptions& options) {
  LexOptions opts = options;
  opts.patterns = true;
  return Parser(input, registry, opts).pattern_chains();
}

std::vector<std::vector<Factor>> parse_template_blocks(std::string_view input,
                                                       const SymbolRegistry& registry,
                                                       const LexOptions& options) {
  LexOptions opts = options;
  opts.patterns = true;
  return Parser(input, registry, opts).template_blocks();
}

}  // namespace termclamp
