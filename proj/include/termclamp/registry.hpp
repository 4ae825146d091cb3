#pragma once

// Per-symbol hooks. One entry per symbol holds both directions: how its
// bracketed ornament block is parsed and how the ornament is rendered in each
// output format, plus an optional display alias (e.g. "adag" shown as a
// dagger).

#include "termclamp/term.hpp"
#include "termclamp/xml.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace termclamp {

class OrnamentContext;
class Renderer;

using OrnamentParser = std::function<Ornament(std::string_view block, const OrnamentContext& ctx)>;

/// Returns the text placed between the brackets of the ASCII form.
using AsciiOrnamentHook = std::function<std::string(const Ornament&, const Renderer&)>;
/// Receives the already decorated stem (glyph, indices, exponent) and returns
/// the complete factor.
using TexOrnamentHook =
    std::function<std::string(const std::string& decorated, const Ornament&, const Renderer&)>;
using MathmlOrnamentHook =
    std::function<xml::Element(xml::Element decorated, const Ornament&, const Renderer&)>;

struct RenderHooks {
  AsciiOrnamentHook ascii;
  TexOrnamentHook tex;
  MathmlOrnamentHook mathml;
};

/// Display-only renaming. `glyph` is looked up like a symbol name (so "epsilon"
/// becomes a Greek letter); `mark_*` is an optional superscript decoration.
struct DisplayAlias {
  std::string glyph;
  std::string mark_tex;
  std::string mark_mathml;
};

struct SymbolEntry {
  OrnamentParser parse_ornament;
  RenderHooks render;
  std::optional<DisplayAlias> alias;
  /// Bare occurrences parse as an empty index list instead of exponent 1.
  bool index_carrying = false;
};

class RegistryError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SymbolRegistry {
 public:
  /// Throws RegistryError if `symbol` already has an ornament parser.
  SymbolRegistry& register_ornament_parser(const std::string& symbol, OrnamentParser hook);
  SymbolRegistry& replace_ornament_parser(const std::string& symbol, OrnamentParser hook);
  /// Throws RegistryError if `symbol` already has render hooks.
  SymbolRegistry& register_render_hooks(const std::string& symbol, RenderHooks hooks);
  SymbolRegistry& set_alias(const std::string& symbol, DisplayAlias alias);
  SymbolRegistry& declare_index_carrying(const std::string& symbol);

  const SymbolEntry* find(std::string_view symbol) const;

  /// del and delta (nested-factor ornaments), adag and eps aliases.
  static SymbolRegistry standard();

 private:
  std::map<std::string, SymbolEntry, std::less<>> entries_;
};

/// Process-wide immutable instance of SymbolRegistry::standard().
const SymbolRegistry& standard_registry();

enum class FactorOrnamentStyle {
  prefix,          // \partial_{\rho} F_{\mu\nu}
  parenthesized,   // (\delta a)
};

/// Registers parse and render hooks for a symbol whose ornament is exactly one
/// nested factor, e.g. "del[F_mu_nu]_rho".
void register_factor_ornament(SymbolRegistry& registry, const std::string& symbol,
                              FactorOrnamentStyle style);

}  // namespace termclamp
