#include "termclamp/rule_file.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace termclamp {

RuleFileError::RuleFileError(const std::string& rule, const std::string& message, SourcePos pos)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " +
                         (rule.empty() ? "" : "rule '" + rule + "': ") + message),
      rule_(rule),
      pos_(pos) {}

const SofpaRule* RuleSet::find(std::string_view name) const {
  for (const auto& r : rules) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

SymbolRegistry RuleSet::registry(const SymbolRegistry& base) const {
  SymbolRegistry out = base;
  for (const auto& [symbol, alias] : aliases) out.set_alias(symbol, alias);
  return out;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

struct Line {
  std::string_view text;  // without comment, right-trimmed
  std::size_t number;
  std::size_t indent;  // column offset of the first non-blank character
};

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

class RuleFileParser {
 public:
  RuleFileParser(std::string_view text, const SymbolRegistry& registry, const ExtensionTable& hooks)
      : text_(text), registry_(registry), hooks_(hooks) {}

  RuleSet run() {
    RuleSet set;
    split_lines();
    std::size_t i = 0;
    while (i < lines_.size()) {
      const Line& line = lines_[i];
      const auto w = words(line.text);
      if (w.front() == "rule") {
        if (w.size() != 2) fail("", "expected 'rule NAME'", line, 0);
        i = parse_rule(i, std::string(w[1]), set);
        continue;
      }
      if (w.front() == "alias") {
        if (w.size() != 3 && w.size() != 5) fail("", "expected 'alias SYMBOL GLYPH [TEX-MARK MATHML-MARK]'", line, 0);
        DisplayAlias alias{std::string(w[2]), w.size() == 5 ? std::string(w[3]) : "",
                           w.size() == 5 ? std::string(w[4]) : ""};
        set.aliases.emplace_back(std::string(w[1]), std::move(alias));
        ++i;
        continue;
      }
      fail("", "expected 'rule' or 'alias'", line, 0);
    }
    return set;
  }

 private:
  [[noreturn]] void fail(const std::string& rule, const std::string& message, const Line& line,
                         std::size_t column_offset) const {
    throw RuleFileError(rule, message, SourcePos{line.number, line.indent + column_offset + 1, 0});
  }

  void split_lines() {
    std::size_t number = 0;
    std::size_t start = 0;
    while (start <= text_.size()) {
      std::size_t end = text_.find('\n', start);
      if (end == std::string_view::npos) end = text_.size();
      ++number;
      std::string_view raw = text_.substr(start, end - start);
      if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
      while (!raw.empty() && is_space(raw.back())) raw.remove_suffix(1);
      std::size_t indent = 0;
      while (indent < raw.size() && is_space(raw[indent])) ++indent;
      if (indent < raw.size()) lines_.push_back({raw.substr(indent), number, indent});
      start = end + 1;
    }
  }

  LexOptions options_at(const Line& line, std::size_t column_offset, const std::string& marker) const {
    LexOptions o;
    o.patterns = true;
    o.joker_marker = marker;
    o.origin = SourcePos{line.number, line.indent + column_offset + 1, 0};
    return o;
  }

  std::size_t parse_rule(std::size_t i, std::string name, RuleSet& set) {
    if (set.find(name)) fail(name, "duplicate rule name", lines_[i], 0);
    SofpaRule rule;
    rule.name = name;
    std::optional<std::pair<const Line*, std::size_t>> pattern_at;
    std::vector<std::pair<const Line*, std::size_t>> subs_at;
    std::vector<std::pair<const Line*, std::size_t>> highlight_at;

    ++i;
    for (;; ++i) {
      if (i >= lines_.size()) fail(name, "missing 'end'", lines_.back(), 0);
      const Line& line = lines_[i];
      if (line.text == "end") break;
      const auto colon = line.text.find(':');
      if (colon == std::string_view::npos) fail(name, "expected 'key: value'", line, 0);
      const std::string_view key = line.text.substr(0, colon);
      std::size_t value_off = colon + 1;
      while (value_off < line.text.size() && is_space(line.text[value_off])) ++value_off;
      const std::string_view value = line.text.substr(value_off);

      if (key == "description") {
        rule.description = std::string(value);
      } else if (key == "alphabet") {
        auto a = Alphabet::named(value);
        if (!a) fail(name, "unknown alphabet '" + std::string(value) + "'", line, value_off);
        rule.alphabet = std::move(*a);
      } else if (key == "marker") {
        if (value.empty() || words(value).size() != 1) fail(name, "marker must be a single word", line, value_off);
        rule.pattern.convention.marker = std::string(value);
      } else if (key == "pattern") {
        if (pattern_at) fail(name, "duplicate pattern", line, 0);
        pattern_at.emplace(&line, value_off);
      } else if (key == "subs") {
        subs_at.emplace_back(&line, value_off);
      } else if (key == "highlight") {
        highlight_at.emplace_back(&line, value_off);
      } else {
        fail(name, "unknown key '" + std::string(key) + "'", line, 0);
      }
    }
    if (!pattern_at) fail(name, "missing pattern", lines_[i], 0);

    const std::string& marker = rule.pattern.convention.marker;
    wrap(name, [&] {
      const auto& [line, off] = *pattern_at;
      for (auto& chain_syntax : parse_pattern_chains(line->text.substr(off), registry_, options_at(*line, off, marker))) {
        Chain chain;
        for (auto& p : chain_syntax) chain.push_back(pattern_node(name, std::move(p), rule.pattern.convention, *line, off));
        rule.pattern.chains.push_back(std::move(chain));
      }
    });

    for (const auto& [line, off] : subs_at) {
      const std::string_view value = line->text.substr(off);
      const auto colon = value.find(':');
      if (colon == std::string_view::npos) fail(name, "expected 'COEFFICIENT : blocks'", *line, off);
      std::string_view coef = value.substr(0, colon);
      while (!coef.empty() && is_space(coef.back())) coef.remove_suffix(1);
      SummandTemplate tmpl;
      try {
        tmpl.coefficient = Rational::parse(coef);
      } catch (const std::exception&) {
        fail(name, "malformed coefficient '" + std::string(coef) + "'", *line, off);
      }
      const std::size_t blocks_off = off + colon + 1;
      wrap(name, [&] {
        tmpl.blocks = parse_template_blocks(line->text.substr(blocks_off), registry_,
                                            options_at(*line, blocks_off, marker));
      });
      if (tmpl.blocks.size() != rule.pattern.chains.size()) {
        fail(name,
             "template has " + std::to_string(tmpl.blocks.size()) + " blocks for " +
                 std::to_string(rule.pattern.chains.size()) + " pattern chains",
             *line, off);
      }
      rule.subs.push_back(std::move(tmpl));
    }

    for (const auto& [line, off] : highlight_at) {
      std::string_view rest = line->text.substr(off);
      std::size_t item_off = off;
      while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const auto w = words(item);
        if (w.size() != 2) fail(name, "expected 'JOKER COLOR'", *line, item_off);
        const auto color = parse_color(w[1]);
        if (!color) fail(name, "unknown color '" + std::string(w[1]) + "'", *line, item_off);
        if (!rule.pattern.convention.is_joker(w[0])) fail(name, "'" + std::string(w[0]) + "' is not a joker", *line, item_off);
        rule.highlighting.emplace_back(std::string(w[0]), *color);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        item_off += comma + 1;
      }
    }

    try {
      rule.validate();
    } catch (const RuleError& e) {
      fail(name, e.what(), *pattern_at->first, 0);
    }
    set.rules.push_back(std::move(rule));
    return i + 1;
  }

  PatternNode pattern_node(const std::string& rule, PatternFactorSyntax p, const JokerConvention& conv,
                           const Line& line, std::size_t off) const {
    if (p.hook) {
      const auto it = hooks_.find(*p.hook);
      if (it == hooks_.end()) fail(rule, "unknown extension hook '%" + *p.hook + "'", line, off);
      return PatternNode::extension(*p.hook, it->second);
    }
    PatternNode node = PatternNode::from_factor(std::move(p.factor), conv);
    if (p.as_joker) return as_pattern(*p.as_joker, std::move(node), conv);
    return node;
  }

  template <class F>
  void wrap(const std::string& rule, F&& body) const {
    try {
      body();
    } catch (const ParseError& e) {
      throw RuleFileError(rule, e.detail(), e.position());
    }
  }

  std::string_view text_;
  const SymbolRegistry& registry_;
  const ExtensionTable& hooks_;
  std::vector<Line> lines_;
};

}  // namespace

RuleSet parse_rule_file(std::string_view text, const SymbolRegistry& registry, const ExtensionTable& hooks) {
  return RuleFileParser(text, registry, hooks).run();
}

RuleSet load_rule_file(const std::filesystem::path& path, const SymbolRegistry& registry, const ExtensionTable& hooks) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RuleFileError("", "cannot read rule file " + path.string(), SourcePos{});
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rule_file(buf.str(), registry, hooks);
}

}  // namespace termclamp
