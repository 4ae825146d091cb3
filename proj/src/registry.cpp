#include "termclamp/registry.hpp"

#include "termclamp/parser.hpp"
#include "termclamp/render.hpp"

namespace termclamp {

SymbolRegistry& SymbolRegistry::register_ornament_parser(const std::string& symbol, OrnamentParser hook) {
  auto& entry = entries_[symbol];
  if (entry.parse_ornament) {
    throw RegistryError("ornament parser for '" + symbol + "' is already registered");
  }
  entry.parse_ornament = std::move(hook);
  return *this;
}

SymbolRegistry& SymbolRegistry::replace_ornament_parser(const std::string& symbol, OrnamentParser hook) {
  entries_[symbol].parse_ornament = std::move(hook);
  return *this;
}

SymbolRegistry& SymbolRegistry::register_render_hooks(const std::string& symbol, RenderHooks hooks) {
  auto& entry = entries_[symbol];
  if (entry.render.ascii || entry.render.tex || entry.render.mathml) {
    throw RegistryError("render hooks for '" + symbol + "' are already registered");
  }
  entry.render = std::move(hooks);
  return *this;
}

SymbolRegistry& SymbolRegistry::set_alias(const std::string& symbol, DisplayAlias alias) {
  entries_[symbol].alias = std::move(alias);
  return *this;
}

SymbolRegistry& SymbolRegistry::declare_index_carrying(const std::string& symbol) {
  entries_[symbol].index_carrying = true;
  return *this;
}

const SymbolEntry* SymbolRegistry::find(std::string_view symbol) const {
  const auto it = entries_.find(symbol);
  return it == entries_.end() ? nullptr : &it->second;
}

void register_factor_ornament(SymbolRegistry& registry, const std::string& symbol,
                              FactorOrnamentStyle style) {
  registry.register_ornament_parser(symbol, [](std::string_view block, const OrnamentContext& ctx) {
    return Ornament::factor(ctx.parse_factor(block));
  });

  auto inner = [symbol](const Ornament& o) -> const Factor& {
    const Factor* f = o.as_factor();
    if (!f) throw RenderError("ornament of '" + symbol + "' must be a single factor");
    return *f;
  };

  RenderHooks hooks;
  hooks.ascii = [inner](const Ornament& o, const Renderer& r) { return r.factor_ascii(inner(o)); };
  hooks.tex = [inner, style](const std::string& decorated, const Ornament& o, const Renderer& r) {
    const std::string body = decorated + " " + r.factor_tex(inner(o));
    return style == FactorOrnamentStyle::parenthesized ? "(" + body + ")" : body;
  };
  hooks.mathml = [inner, style](xml::Element decorated, const Ornament& o, const Renderer& r) {
    xml::Element row("mrow");
    if (style == FactorOrnamentStyle::parenthesized) row.add(xml::Element("mo", "("));
    row.add(std::move(decorated)).add(r.factor_mathml(inner(o)));
    if (style == FactorOrnamentStyle::parenthesized) row.add(xml::Element("mo", ")"));
    return row;
  };
  registry.register_render_hooks(symbol, std::move(hooks));
}

SymbolRegistry SymbolRegistry::standard() {
  SymbolRegistry r;
  register_factor_ornament(r, "del", FactorOrnamentStyle::prefix);
  r.set_alias("del", DisplayAlias{"partial", "", ""});
  register_factor_ornament(r, "delta", FactorOrnamentStyle::parenthesized);
  r.set_alias("adag", DisplayAlias{"a", "\\dagger", "†"});
  r.set_alias("eps", DisplayAlias{"epsilon", "", ""});
  return r;
}

const SymbolRegistry& standard_registry() {
  static const SymbolRegistry instance = SymbolRegistry::standard();
  return instance;
}

}  // namespace termclamp
