#pragma once

#include "termclamp/registry.hpp"
#include "termclamp/term.hpp"
#include "termclamp/xml.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace termclamp {

enum class Format { ascii, tex, mathml };

std::optional<Format> parse_format(std::string_view name);
std::string_view format_name(Format format);

enum class Color { green, red, blue, yellow };

std::optional<Color> parse_color(std::string_view name);
std::string_view color_name(Color color);

/// Factor position within one summand -> color.
using HighlightSpec = std::map<std::size_t, Color>;

class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Glyph spelling of a symbol or index name: Greek names become TeX macros /
/// Unicode letters, single letters stay as they are, longer names are set
/// upright.
std::string tex_glyph(std::string_view name);
std::string unicode_glyph(std::string_view name);

class Renderer {
 public:
  explicit Renderer(const SymbolRegistry& registry = standard_registry()) : registry_(registry) {}

  /// ASCII output re-parses to an equal term; the empty term renders as "0".
  std::string render(const Term& t, Format format) const;

  /// A single summand with runs of highlighted factors marked up: «...» in
  /// ASCII, \textcolor in TeX, <mstyle mathcolor> in MathML.
  std::string render_summand(const Summand& s, const HighlightSpec& highlight, Format format) const;

  std::string factor_ascii(const Factor& f) const;
  std::string factor_tex(const Factor& f) const;
  xml::Element factor_mathml(const Factor& f) const;

  xml::Element term_mathml(const Term& t) const;

  /// Default ornament forms: a group of groups of atoms, integers and
  /// factors, written "a,b;c".
  std::string default_ornament_ascii(const std::string& symbol, const Ornament& o) const;
  std::string default_ornament_tex(const std::string& symbol, const Ornament& o) const;
  std::vector<xml::Element> default_ornament_mathml(const std::string& symbol, const Ornament& o) const;

  const SymbolRegistry& registry() const { return registry_; }

 private:
  std::string summand_ascii(const Summand& s, bool leading, const HighlightSpec& h) const;
  std::string summand_tex(const Summand& s, bool leading, const HighlightSpec& h) const;
  void summand_mathml(const Summand& s, bool leading, const HighlightSpec& h, xml::Element& row) const;

  std::string stem_base_tex(const Stem& stem) const;
  xml::Element stem_base_mathml(const Stem& stem) const;

  const SymbolRegistry& registry_;
};

std::string render(const Term& t, Format format, const SymbolRegistry& registry = standard_registry());

std::string render_candidate(const Summand& s, const HighlightSpec& highlight, Format format,
                             const SymbolRegistry& registry = standard_registry());

}  // namespace termclamp
