#include "fixtures.hpp"

#include <doctest.h>

using namespace tc_test;

namespace {

RuleFileError rule_file_error(std::string_view text, const ExtensionTable& hooks = {}) {
  try {
    parse_rule_file(text, standard_registry(), hooks);
  } catch (const RuleFileError& e) {
    return e;
  }
  FAIL("expected a rule file error");
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("rule_file") {
  TEST_CASE("the standard rules load") {
    const RuleSet& set = standard_rules();
    REQUIRE(set.rules.size() == 4);
    CHECK(set.rules[0].name == "normal-ordering");
    CHECK(set.rules[1].name == "normal-ordering-indexed");
    CHECK(set.rules[2].name == "epsilon-delta");
    CHECK(set.rules[3].name == "fierz");
    CHECK(set.rules[1].alphabet.name == "greek");
    CHECK(set.rules[3].subs.size() == 4);
    CHECK(set.rules[2].pattern.chains.size() == 2);
    REQUIRE(set.aliases.size() == 1);
    CHECK(set.aliases[0].first == "adag");
    CHECK(set.find("missing") == nullptr);
  }

  TEST_CASE("an empty file has no rules") {
    CHECK(parse_rule_file("").rules.empty());
    CHECK(parse_rule_file("# only a comment\n\n").rules.empty());
  }

  TEST_CASE("comments and descriptions") {
    const RuleSet set = parse_rule_file(R"(
# leading comment
rule swap   # trailing comment
  description: exchange two symbols
  pattern: x y
  subs: 1 : y x
end
)");
    REQUIRE(set.rules.size() == 1);
    CHECK(set.rules[0].description == "exchange two symbols");
    CHECK(ascii(apply_rule_at(T("x y"), enumerate_rule_sites(T("x y"), set.rules[0]).values.at(0), set.rules[0])) ==
          "y x");
  }

  TEST_CASE("malformed files name the rule and position") {
    const RuleFileError missing_end = rule_file_error("rule r\n  pattern: a\n  subs: 1 : b\n");
    CHECK(missing_end.rule() == "r");

    const RuleFileError bad_pattern = rule_file_error("rule bad\n  pattern: X_a**2\n  subs: 1 : X\nend\n");
    CHECK(bad_pattern.rule() == "bad");
    CHECK(bad_pattern.position().line == 2);
    CHECK(bad_pattern.position().column == 15);
    CHECK(std::string(bad_pattern.what()).find("rule 'bad'") != std::string::npos);

    const RuleFileError blocks = rule_file_error("rule two\n  pattern: a | b\n  subs: 1 : c\nend\n");
    CHECK(blocks.rule() == "two");
    CHECK(blocks.position().line == 3);

    const RuleFileError color = rule_file_error("rule c\n  pattern: ?x\n  subs: 1 : ?x\n  highlight: ?x purple\nend\n");
    CHECK(color.position().line == 4);

    CHECK(rule_file_error("rule d\n  subs: 1 : a\nend\n").rule() == "d");
    CHECK(rule_file_error("rule e\n  pattern: a\n  subs: x : a\nend\n").position().line == 3);
    CHECK(rule_file_error("rule f\n  pattern: a\n  bogus: 1\nend\n").position().line == 3);
    CHECK(rule_file_error("rule g\n  pattern: a\n  alphabet: runic\nend\n").position().line == 3);
    CHECK(rule_file_error("rule h\n  pattern: a\nend\nrule h\n  pattern: b\nend\n").position().line == 4);
    CHECK(rule_file_error("nonsense\n").position().line == 1);
  }

  TEST_CASE("extension hooks are looked up by name") {
    const std::string text = "rule hooked\n  pattern: %word ?y\n  subs: 1 : ?y\nend\n";
    const RuleFileError unknown = rule_file_error(text);
    CHECK(unknown.rule() == "hooked");
    CHECK(unknown.position().line == 2);

    ExtensionTable hooks;
    hooks.emplace("word", [](const Factor& v, const Bindings& b) {
      amb::require(v.stem.symbol.size() == 5);
      return b;
    });
    const RuleSet set = parse_rule_file(text, standard_registry(), hooks);
    const SofpaRule& rule = set.rules.at(0);
    CHECK(ascii(apply_rule_at(T("horse b"), enumerate_rule_sites(T("horse b"), rule).values.at(0), rule)) == "b");
    CHECK(enumerate_rule_sites(T("cat b"), rule).values.empty());
  }

  TEST_CASE("as-patterns and custom markers") {
    const RuleSet set = parse_rule_file(R"(
rule tagged
  marker: $
  pattern: $a@a_$i
  subs: 1 : $a $a
  highlight: $a yellow
end
)");
    const SofpaRule& rule = set.rules.at(0);
    CHECK(rule.pattern.convention.marker == "$");
    const Term t = T("b a_mu");
    const auto site = enumerate_rule_sites(t, rule).values.at(0);
    CHECK(ascii(apply_rule_at(t, site, rule)) == "b a_mu a_mu");
    CHECK(highlight_for(rule, site.candidate) == HighlightSpec{{1, Color::yellow}});
  }

  TEST_CASE("aliases feed the display registry") {
    const RuleSet set = parse_rule_file("alias b c \\star ⋆\n");
    CHECK(render(T("b"), Format::tex, set.registry(standard_registry())) == "{c^{\\star}}");
    CHECK(rule_file_error("alias x\n").position().line == 1);
  }

  TEST_CASE("unreadable files") {
    CHECK_THROWS_AS(load_rule_file("/nonexistent/rules.txt"), RuleFileError);
  }
}
