#pragma once

// Declarative rule files.
//
//   # comment
//   alias adag a \dagger †          display alias: symbol glyph [tex-mark mathml-mark]
//
//   rule normal-ordering
//     description: a adag -> adag a + 1
//     alphabet: greek                  latin (default) or greek, for fresh indices
//     marker: ?                        joker marker (default "?")
//     pattern: ?a@a ?adag@adag         chains of factor patterns separated by '|'
//     subs: 1 : ?adag ?a               coefficient ':' one block per chain, '|'-separated
//     subs: 1 :                        an empty block deletes the matched chain
//     highlight: ?a green, ?adag green
//   end
//
// Pattern syntax is the ASCII term syntax plus jokers ("?x"), segment jokers
// inside index lists and ornaments ("??x"), as-patterns ("?x@pattern") and
// references to registered extension hooks ("%name").

#include "termclamp/matcher.hpp"
#include "termclamp/parser.hpp"
#include "termclamp/registry.hpp"
#include "termclamp/rule.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace termclamp {

struct RuleSet {
  std::vector<SofpaRule> rules;
  std::vector<std::pair<std::string, DisplayAlias>> aliases;

  const SofpaRule* find(std::string_view name) const;
  /// `base` plus the aliases declared in the file.
  SymbolRegistry registry(const SymbolRegistry& base = standard_registry()) const;
};

using ExtensionTable = std::map<std::string, ExtensionHook, std::less<>>;

class RuleFileError : public std::runtime_error {
 public:
  RuleFileError(const std::string& rule, const std::string& message, SourcePos pos);

  const std::string& rule() const { return rule_; }
  const SourcePos& position() const { return pos_; }

 private:
  std::string rule_;
  SourcePos pos_;
};

RuleSet parse_rule_file(std::string_view text, const SymbolRegistry& registry = standard_registry(),
                        const ExtensionTable& hooks = {});

/// Throws RuleFileError if the file cannot be read or parsed.
RuleSet load_rule_file(const std::filesystem::path& path, const SymbolRegistry& registry = standard_registry(),
                       const ExtensionTable& hooks = {});

}  // namespace termclamp
