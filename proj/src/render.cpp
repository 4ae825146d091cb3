#include "termclamp/render.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <utility>

namespace termclamp {

namespace {

struct Glyph {
  std::string_view name;
  std::string_view tex;
  std::string_view unicode;
};

constexpr std::array<Glyph, 36> kGlyphs{{
    {"alpha", "\\alpha", "α"},     {"beta", "\\beta", "β"},
    {"gamma", "\\gamma", "γ"},     {"delta", "\\delta", "δ"},
    {"epsilon", "\\epsilon", "ε"}, {"zeta", "\\zeta", "ζ"},
    {"eta", "\\eta", "η"},         {"theta", "\\theta", "θ"},
    {"iota", "\\iota", "ι"},       {"kappa", "\\kappa", "κ"},
    {"lambda", "\\lambda", "λ"},   {"mu", "\\mu", "μ"},
    {"nu", "\\nu", "ν"},           {"xi", "\\xi", "ξ"},
    {"omicron", "o", "ο"},         {"pi", "\\pi", "π"},
    {"rho", "\\rho", "ρ"},         {"sigma", "\\sigma", "σ"},
    {"tau", "\\tau", "τ"},         {"upsilon", "\\upsilon", "υ"},
    {"phi", "\\phi", "φ"},         {"chi", "\\chi", "χ"},
    {"psi", "\\psi", "ψ"},         {"omega", "\\omega", "ω"},
    {"Gamma", "\\Gamma", "Γ"},     {"Delta", "\\Delta", "Δ"},
    {"Theta", "\\Theta", "Θ"},     {"Lambda", "\\Lambda", "Λ"},
    {"Xi", "\\Xi", "Ξ"},           {"Pi", "\\Pi", "Π"},
    {"Sigma", "\\Sigma", "Σ"},     {"Upsilon", "\\Upsilon", "Υ"},
    {"Phi", "\\Phi", "Φ"},         {"Psi", "\\Psi", "Ψ"},
    {"Omega", "\\Omega", "Ω"},     {"partial", "\\partial", "∂"},
}};

const Glyph* find_glyph(std::string_view name) {
  for (const auto& g : kGlyphs) {
    if (g.name == name) return &g;
  }
  return nullptr;
}

bool is_number(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Appends a TeX fragment, separating a trailing control word from a following
// letter ("\mu" + "a" must not become "\mua").
void append_tex(std::string& out, const std::string& piece) {
  if (!out.empty() && !piece.empty() && std::isalpha(static_cast<unsigned char>(piece.front()))) {
    std::size_t i = out.size();
    while (i > 0 && std::isalpha(static_cast<unsigned char>(out[i - 1]))) --i;
    if (i > 0 && i < out.size() && out[i - 1] == '\\') out += ' ';
  }
  out += piece;
}

std::string coefficient_tex(const Rational& magnitude) {
  if (magnitude.is_integer()) return magnitude.numerator().str();
  return "\\frac{" + magnitude.numerator().str() + "}{" + magnitude.denominator().str() + "}";
}

xml::Element coefficient_mathml(const Rational& magnitude) {
  if (magnitude.is_integer()) return xml::Element("mn", magnitude.numerator().str());
  return xml::Element("mfrac", {xml::Element("mn", magnitude.numerator().str()),
                                xml::Element("mn", magnitude.denominator().str())});
}

xml::Element index_mathml(const IndexRef& i) {
  if (is_number(i.name)) return xml::Element("mn", i.name);
  return xml::Element("mi", unicode_glyph(i.name));
}

void check_highlight(const Summand& s, const HighlightSpec& h) {
  if (!h.empty() && h.rbegin()->first >= s.factors.size()) {
    throw RenderError("highlight position " + std::to_string(h.rbegin()->first) +
                      " out of range for a summand with " + std::to_string(s.factors.size()) +
                      " factors");
  }
}

// Calls emit(first, last, color) for maximal runs of equally highlighted
// factors; color is null for unhighlighted runs.
void for_each_run(std::size_t count, const HighlightSpec& h,
                  const std::function<void(std::size_t, std::size_t, const Color*)>& emit) {
  std::size_t i = 0;
  while (i < count) {
    const auto it = h.find(i);
    const Color* color = it == h.end() ? nullptr : &it->second;
    std::size_t j = i + 1;
    while (j < count) {
      const auto jt = h.find(j);
      const Color* next = jt == h.end() ? nullptr : &jt->second;
      if ((color == nullptr) != (next == nullptr) || (color && *color != *next)) break;
      ++j;
    }
    emit(i, j, color);
    i = j;
  }
}

const Ornament& single_ornament(const Stem& stem) {
  if (stem.ornaments.size() != 1) {
    throw RenderError("symbol '" + stem.symbol + "' carries more than one ornament");
  }
  return stem.ornaments.front();
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
  if (name == "ascii") return Format::ascii;
  if (name == "tex") return Format::tex;
  if (name == "mathml") return Format::mathml;
  return std::nullopt;
}

std::string_view format_name(Format format) {
  switch (format) {
    case Format::ascii: return "ascii";
    case Format::tex: return "tex";
    case Format::mathml: return "mathml";
  }
  return "ascii";
}

std::optional<Color> parse_color(std::string_view name) {
  if (name == "green") return Color::green;
  if (name == "red") return Color::red;
  if (name == "blue") return Color::blue;
  if (name == "yellow") return Color::yellow;
  return std::nullopt;
}

std::string_view color_name(Color color) {
  switch (color) {
    case Color::green: return "green";
    case Color::red: return "red";
    case Color::blue: return "blue";
    case Color::yellow: return "yellow";
  }
  return "green";
}

std::string tex_glyph(std::string_view name) {
  if (const Glyph* g = find_glyph(name)) return std::string(g->tex);
  if (name.size() == 1 || is_number(name)) return std::string(name);
  return "\\mathrm{" + std::string(name) + "}";
}

std::string unicode_glyph(std::string_view name) {
  if (const Glyph* g = find_glyph(name)) return std::string(g->unicode);
  return std::string(name);
}

// --- ASCII ------------------------------------------------------------------

std::string Renderer::default_ornament_ascii(const std::string& symbol, const Ornament& o) const {
  const auto fail = [&]() -> std::string {
    throw RenderError("no renderer for the ornament of symbol '" + symbol + "'");
  };
  const auto* groups = o.as_group();
  if (!groups) return fail();
  std::string out;
  for (std::size_t g = 0; g < groups->size(); ++g) {
    const auto* items = (*groups)[g].as_group();
    if (!items) return fail();
    if (g > 0) out += ';';
    for (std::size_t k = 0; k < items->size(); ++k) {
      if (k > 0) out += ',';
      const Ornament& item = (*items)[k];
      if (const auto* a = item.as_atom()) out += a->name;
      else if (const auto* n = item.as_integer()) out += std::to_string(*n);
      else if (const auto* f = item.as_factor()) out += factor_ascii(*f);
      else return fail();
    }
  }
  return out;
}

std::string Renderer::factor_ascii(const Factor& f) const {
  std::string out = f.stem.symbol;
  if (!f.stem.ornaments.empty()) {
    const Ornament& o = single_ornament(f.stem);
    const SymbolEntry* entry = registry_.find(f.stem.symbol);
    out += '[';
    out += (entry && entry->render.ascii) ? entry->render.ascii(o, *this)
                                          : default_ornament_ascii(f.stem.symbol, o);
    out += ']';
  }
  if (const auto* idx = f.indices()) {
    for (const auto& i : *idx) {
      out += i.variance == Variance::up ? '^' : '_';
      out += i.name;
    }
  } else if (f.exponent() != 1) {
    out += "**" + std::to_string(f.exponent());
  }
  return out;
}

std::string Renderer::summand_ascii(const Summand& s, bool leading, const HighlightSpec& h) const {
  const bool negative = s.coefficient.is_negative();
  std::string out = leading ? (negative ? "-" : "") : (negative ? " - " : " + ");
  const Rational magnitude = s.coefficient.abs();
  if (s.factors.empty()) return out + magnitude.to_string();
  if (!magnitude.is_one()) out += magnitude.to_string() + " ";

  bool first = true;
  for_each_run(s.factors.size(), h, [&](std::size_t b, std::size_t e, const Color* color) {
    if (!first) out += ' ';
    first = false;
    if (color) out += "«";
    for (std::size_t i = b; i < e; ++i) {
      if (i > b) out += ' ';
      out += factor_ascii(s.factors[i]);
    }
    if (color) out += "»";
  });
  return out;
}

// --- TeX --------------------------------------------------------------------

std::string Renderer::stem_base_tex(const Stem& stem) const {
  const SymbolEntry* entry = registry_.find(stem.symbol);
  if (entry && entry->alias) {
    const std::string glyph = tex_glyph(entry->alias->glyph);
    if (entry->alias->mark_tex.empty()) return glyph;
    return "{" + glyph + "^{" + entry->alias->mark_tex + "}}";
  }
  return tex_glyph(stem.symbol);
}

std::string Renderer::default_ornament_tex(const std::string& symbol, const Ornament& o) const {
  const auto fail = [&]() -> std::string {
    throw RenderError("no renderer for the ornament of symbol '" + symbol + "'");
  };
  const auto* groups = o.as_group();
  if (!groups) return fail();
  std::string out;
  for (std::size_t g = 0; g < groups->size(); ++g) {
    const auto* items = (*groups)[g].as_group();
    if (!items) return fail();
    if (g > 0) out += ';';
    for (std::size_t k = 0; k < items->size(); ++k) {
      if (k > 0) out += ',';
      const Ornament& item = (*items)[k];
      if (const auto* a = item.as_atom()) out += tex_glyph(a->name);
      else if (const auto* n = item.as_integer()) out += std::to_string(*n);
      else if (const auto* f = item.as_factor()) out += factor_tex(*f);
      else return fail();
    }
  }
  return out;
}

std::string Renderer::factor_tex(const Factor& f) const {
  std::string base = stem_base_tex(f.stem);
  const SymbolEntry* entry = registry_.find(f.stem.symbol);
  const bool hooked = !f.stem.ornaments.empty() && entry && entry->render.tex;
  if (!f.stem.ornaments.empty() && !hooked) {
    base += "[" + default_ornament_tex(f.stem.symbol, single_ornament(f.stem)) + "]";
  }

  std::string decorated = base;
  if (const auto* idx = f.indices()) {
    std::size_t i = 0;
    while (i < idx->size()) {
      const Variance v = (*idx)[i].variance;
      if (i > 0) decorated += "{}";
      decorated += v == Variance::up ? "^{" : "_{";
      std::string run;
      for (; i < idx->size() && (*idx)[i].variance == v; ++i) append_tex(run, tex_glyph((*idx)[i].name));
      decorated += run + "}";
    }
  } else if (f.exponent() != 1) {
    decorated += "^{" + std::to_string(f.exponent()) + "}";
  }

  if (hooked) return entry->render.tex(decorated, single_ornament(f.stem), *this);
  return decorated;
}

std::string Renderer::summand_tex(const Summand& s, bool leading, const HighlightSpec& h) const {
  const bool negative = s.coefficient.is_negative();
  std::string out = leading ? (negative ? "-" : "") : (negative ? " - " : " + ");
  const Rational magnitude = s.coefficient.abs();
  if (s.factors.empty()) return out + coefficient_tex(magnitude);
  if (!magnitude.is_one()) out += coefficient_tex(magnitude) + " ";

  bool first = true;
  for_each_run(s.factors.size(), h, [&](std::size_t b, std::size_t e, const Color* color) {
    if (!first) out += ' ';
    first = false;
    if (color) out += "\\textcolor{" + std::string(color_name(*color)) + "}{";
    for (std::size_t i = b; i < e; ++i) {
      if (i > b) out += ' ';
      out += factor_tex(s.factors[i]);
    }
    if (color) out += "}";
  });
  return out;
}

// --- MathML -----------------------------------------------------------------

xml::Element Renderer::stem_base_mathml(const Stem& stem) const {
  const SymbolEntry* entry = registry_.find(stem.symbol);
  if (entry && entry->alias) {
    xml::Element glyph("mi", unicode_glyph(entry->alias->glyph));
    if (entry->alias->mark_mathml.empty()) return glyph;
    return xml::Element("msup", {glyph, xml::Element("mo", entry->alias->mark_mathml)});
  }
  return xml::Element("mi", unicode_glyph(stem.symbol));
}

std::vector<xml::Element> Renderer::default_ornament_mathml(const std::string& symbol,
                                                            const Ornament& o) const {
  const auto fail = [&]() -> std::vector<xml::Element> {
    throw RenderError("no renderer for the ornament of symbol '" + symbol + "'");
  };
  const auto* groups = o.as_group();
  if (!groups) return fail();
  std::vector<xml::Element> out;
  for (std::size_t g = 0; g < groups->size(); ++g) {
    const auto* items = (*groups)[g].as_group();
    if (!items) return fail();
    if (g > 0) out.emplace_back("mo", ";");
    for (std::size_t k = 0; k < items->size(); ++k) {
      if (k > 0) out.emplace_back("mo", ",");
      const Ornament& item = (*items)[k];
      if (const auto* a = item.as_atom()) out.emplace_back("mi", unicode_glyph(a->name));
      else if (const auto* n = item.as_integer()) out.emplace_back("mn", std::to_string(*n));
      else if (const auto* f = item.as_factor()) out.push_back(factor_mathml(*f));
      else return fail();
    }
  }
  return out;
}

xml::Element Renderer::factor_mathml(const Factor& f) const {
  xml::Element base = stem_base_mathml(f.stem);
  const SymbolEntry* entry = registry_.find(f.stem.symbol);
  const bool hooked = !f.stem.ornaments.empty() && entry && entry->render.mathml;
  if (!f.stem.ornaments.empty() && !hooked) {
    xml::Element row("mrow");
    row.add(std::move(base)).add(xml::Element("mo", "["));
    for (auto& e : default_ornament_mathml(f.stem.symbol, single_ornament(f.stem))) row.add(std::move(e));
    row.add(xml::Element("mo", "]"));
    base = std::move(row);
  }

  xml::Element decorated = base;
  if (const auto* idx = f.indices(); idx && !idx->empty()) {
    bool mixed = false;
    for (const auto& i : *idx) mixed = mixed || i.variance != idx->front().variance;
    if (!mixed) {
      xml::Element row("mrow");
      for (const auto& i : *idx) row.add(index_mathml(i));
      decorated = xml::Element(idx->front().variance == Variance::up ? "msup" : "msub",
                               {std::move(base), std::move(row)});
    } else {
      xml::Element ms("mmultiscripts");
      ms.add(std::move(base));
      for (const auto& i : *idx) {
        if (i.variance == Variance::down) {
          ms.add(index_mathml(i)).add(xml::Element("none"));
        } else {
          ms.add(xml::Element("none")).add(index_mathml(i));
        }
      }
      decorated = std::move(ms);
    }
  } else if (!f.is_indexed() && f.exponent() != 1) {
    decorated = xml::Element("msup", {std::move(base), xml::Element("mn", std::to_string(f.exponent()))});
  }

  if (hooked) return entry->render.mathml(std::move(decorated), single_ornament(f.stem), *this);
  return decorated;
}

void Renderer::summand_mathml(const Summand& s, bool leading, const HighlightSpec& h,
                              xml::Element& row) const {
  const bool negative = s.coefficient.is_negative();
  if (negative) row.add(xml::Element("mo", "-"));
  else if (!leading) row.add(xml::Element("mo", "+"));
  const Rational magnitude = s.coefficient.abs();
  if (s.factors.empty() || !magnitude.is_one()) row.add(coefficient_mathml(magnitude));

  for_each_run(s.factors.size(), h, [&](std::size_t b, std::size_t e, const Color* color) {
    if (color) {
      xml::Element style("mstyle");
      style.attr("mathcolor", std::string(color_name(*color)));
      for (std::size_t i = b; i < e; ++i) style.add(factor_mathml(s.factors[i]));
      row.add(std::move(style));
    } else {
      for (std::size_t i = b; i < e; ++i) row.add(factor_mathml(s.factors[i]));
    }
  });
}

xml::Element Renderer::term_mathml(const Term& t) const {
  xml::Element row("mrow");
  if (t.empty()) row.add(xml::Element("mn", "0"));
  for (std::size_t k = 0; k < t.summands.size(); ++k) summand_mathml(t.summands[k], k == 0, {}, row);
  xml::Element math("math");
  math.attr("xmlns", "http://www.w3.org/1998/Math/MathML");
  math.add(std::move(row));
  return math;
}

// --- entry points -----------------------------------------------------------

std::string Renderer::render(const Term& t, Format format) const {
  switch (format) {
    case Format::ascii: {
      if (t.empty()) return "0";
      std::string out;
      for (std::size_t k = 0; k < t.summands.size(); ++k) out += summand_ascii(t.summands[k], k == 0, {});
      return out;
    }
    case Format::tex: {
      if (t.empty()) return "0";
      std::string out;
      for (std::size_t k = 0; k < t.summands.size(); ++k) out += summand_tex(t.summands[k], k == 0, {});
      return out;
    }
    case Format::mathml:
      return term_mathml(t).serialize();
  }
  return {};
}

std::string Renderer::render_summand(const Summand& s, const HighlightSpec& highlight, Format format) const {
  check_highlight(s, highlight);
  switch (format) {
    case Format::ascii: return summand_ascii(s, true, highlight);
    case Format::tex: return summand_tex(s, true, highlight);
    case Format::mathml: {
      xml::Element row("mrow");
      summand_mathml(s, true, highlight, row);
      xml::Element math("math");
      math.attr("xmlns", "http://www.w3.org/1998/Math/MathML");
      math.add(std::move(row));
      return math.serialize();
    }
  }
  return {};
}

std::string render(const Term& t, Format format, const SymbolRegistry& registry) {
  return Renderer(registry).render(t, format);
}

std::string render_candidate(const Summand& s, const HighlightSpec& highlight, Format format,
                             const SymbolRegistry& registry) {
  return Renderer(registry).render_summand(s, highlight, format);
}

}  // namespace termclamp
