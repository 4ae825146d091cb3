#include "termclamp/rule.hpp"

#include <algorithm>
#include <map>

namespace termclamp {

Alphabet Alphabet::latin() {
  Alphabet a{"latin", {}};
  for (char c = 'a'; c <= 'z'; ++c) a.letters.emplace_back(1, c);
  return a;
}

Alphabet Alphabet::greek() {
  return {"greek",
          {"alpha", "beta", "gamma", "delta", "epsilon", "zeta", "eta", "theta", "iota", "kappa", "lambda",
           "mu", "nu", "xi", "pi", "rho", "sigma", "tau", "upsilon", "phi", "chi", "psi", "omega"}};
}

std::optional<Alphabet> Alphabet::named(std::string_view name) {
  if (name == "latin") return latin();
  if (name == "greek") return greek();
  return std::nullopt;
}

void SofpaRule::validate() const {
  if (name.empty()) throw RuleError("rule without a name");
  try {
    pattern.validate();
  } catch (const std::invalid_argument& e) {
    throw RuleError("rule '" + name + "': " + e.what());
  }
  for (std::size_t k = 0; k < subs.size(); ++k) {
    if (subs[k].blocks.size() != pattern.chains.size()) {
      throw RuleError("rule '" + name + "': template " + std::to_string(k + 1) + " has " +
                      std::to_string(subs[k].blocks.size()) + " blocks for " +
                      std::to_string(pattern.chains.size()) + " pattern chains");
    }
  }
}

std::string fresh_index_letter(const Summand& s, const Alphabet& alphabet, const std::set<std::string>& also_avoid) {
  const auto used = used_index_letters(s);
  for (const auto& letter : alphabet.letters) {
    if (!used.contains(letter) && !also_avoid.contains(letter)) return letter;
  }
  throw RuleError("alphabet '" + alphabet.name + "' exhausted for summand " + render(Term{{s}}, Format::ascii));
}

namespace {

class Instantiator {
 public:
  Instantiator(const SofpaRule& rule, const Bindings& bindings, const Summand& original)
      : rule_(rule), conv_(rule.pattern.convention), bindings_(bindings), original_(original) {}

  Factor factor(const Factor& t) {
    const std::string& sym = t.stem.symbol;
    if (conv_.is_joker(sym) && t.stem.ornaments.empty() && !t.is_indexed() && t.exponent() == 1) {
      const BoundValue* v = bound(sym);
      if (const auto* f = std::get_if<Factor>(v)) return *f;
      if (const auto* s = std::get_if<Stem>(v)) return Factor{*s, Powered{1}};
      if (const auto* n = std::get_if<std::string>(v)) return Factor::symbol(*n);
      throw RuleError("rule '" + rule_.name + "': joker " + sym + " is not bound to a factor");
    }

    Factor out;
    if (conv_.is_joker(sym)) {
      const BoundValue* v = bound(sym);
      if (const auto* s = std::get_if<Stem>(v)) {
        out.stem.symbol = s->symbol;
        out.stem.ornaments = t.stem.ornaments.empty() ? s->ornaments : ornaments(t.stem.ornaments);
      } else if (const auto* n = std::get_if<std::string>(v)) {
        out.stem.symbol = *n;
        out.stem.ornaments = ornaments(t.stem.ornaments);
      } else {
        throw RuleError("rule '" + rule_.name + "': joker " + sym + " is not bound to a stem");
      }
    } else {
      out.stem.symbol = sym;
      out.stem.ornaments = ornaments(t.stem.ornaments);
    }

    if (const auto* idx = t.indices()) {
      std::vector<IndexRef> result;
      for (const auto& i : *idx) {
        if (conv_.is_segment_joker(i.name)) {
          const auto* run = std::get_if<std::vector<IndexRef>>(bound(i.name));
          if (!run) throw RuleError("rule '" + rule_.name + "': " + i.name + " is not an index run");
          result.insert(result.end(), run->begin(), run->end());
        } else {
          result.push_back({i.variance, index_name(i.name)});
        }
      }
      out.shape = Indexed{std::move(result)};
    } else {
      out.shape = t.shape;
    }
    return out;
  }

 private:
  const BoundValue* bound(const std::string& joker) const {
    const BoundValue* v = bindings_.find(joker);
    if (!v) {
      throw RuleError("rule '" + rule_.name + "': joker " + joker +
                      " is unbound; only index jokers can be generated");
    }
    return v;
  }

  std::string index_name(const std::string& name) {
    if (!conv_.is_joker(name)) return name;
    if (const BoundValue* v = bindings_.find(name)) {
      if (const auto* s = std::get_if<std::string>(v)) return *s;
      throw RuleError("rule '" + rule_.name + "': joker " + name + " is not bound to an index name");
    }
    if (const auto it = fresh_.find(name); it != fresh_.end()) return it->second;
    std::string letter = fresh_index_letter(original_, rule_.alphabet, generated_);
    generated_.insert(letter);
    fresh_.emplace(name, letter);
    return letter;
  }

  std::vector<Ornament> ornaments(const std::vector<Ornament>& items) {
    std::vector<Ornament> out;
    for (const auto& o : items) append_ornament(o, out);
    return out;
  }

  void append_ornament(const Ornament& o, std::vector<Ornament>& out) {
    if (const auto* a = o.as_atom(); a && conv_.is_joker(a->name)) {
      const BoundValue* v = bound(a->name);
      if (const auto* orn = std::get_if<Ornament>(v)) {
        const auto* group = orn->as_group();
        if (conv_.is_segment_joker(a->name) && group) {
          out.insert(out.end(), group->begin(), group->end());
        } else {
          out.push_back(*orn);
        }
      } else if (const auto* n = std::get_if<std::string>(v)) {
        out.push_back(Ornament::atom(*n));
      } else if (const auto* f = std::get_if<Factor>(v)) {
        out.push_back(Ornament::factor(*f));
      } else {
        throw RuleError("rule '" + rule_.name + "': joker " + a->name + " cannot appear in an ornament");
      }
      return;
    }
    if (const auto* i = o.as_index()) {
      out.push_back(Ornament::index({i->variance, index_name(i->name)}));
    } else if (const auto* f = o.as_factor()) {
      out.push_back(Ornament::factor(factor(*f)));
    } else if (const auto* g = o.as_group()) {
      OrnamentGroup items;
      for (const auto& item : *g) append_ornament(item, items);
      out.push_back(Ornament::group(std::move(items)));
    } else {
      out.push_back(o);
    }
  }

  const SofpaRule& rule_;
  const JokerConvention& conv_;
  const Bindings& bindings_;
  const Summand& original_;
  std::map<std::string, std::string> fresh_;
  std::set<std::string> generated_;
};

bool site_fits(const Term& t, const RuleSite& site, const SofpaRule& rule) {
  if (site.summand >= t.summands.size()) return false;
  const auto& factors = t.summands[site.summand].factors;
  std::size_t pos = 0;
  std::size_t next_chain = 0;
  for (const auto& seg : site.candidate.segments) {
    if (seg.begin != pos || seg.end < seg.begin || seg.end > factors.size()) return false;
    if (seg.factors.size() != seg.end - seg.begin) return false;
    if (!std::equal(seg.factors.begin(), seg.factors.end(), factors.begin() + seg.begin)) return false;
    if (seg.kind == Segment::Kind::matched) {
      if (seg.chain != next_chain || next_chain >= rule.pattern.chains.size()) return false;
      if (seg.factors.size() != rule.pattern.chains[next_chain].size()) return false;
      ++next_chain;
    }
    pos = seg.end;
  }
  return pos == factors.size() && next_chain == rule.pattern.chains.size();
}

}  // namespace

std::vector<Summand> instantiate_templates(const SofpaRule& rule, const MatchCandidate& candidate,
                                           const Summand& original) {
  rule.validate();
  Instantiator inst(rule, candidate.bindings, original);
  std::vector<Summand> out;
  out.reserve(rule.subs.size());
  for (const auto& tmpl : rule.subs) {
    Summand s;
    s.coefficient = original.coefficient * tmpl.coefficient;
    for (const auto& seg : candidate.segments) {
      if (seg.kind == Segment::Kind::between) {
        s.factors.insert(s.factors.end(), seg.factors.begin(), seg.factors.end());
      } else {
        for (const auto& f : tmpl.blocks.at(seg.chain)) s.factors.push_back(inst.factor(f));
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

amb::Results<RuleSite> enumerate_rule_sites(const Term& t, const SofpaRule& rule, const amb::Budget& budget) {
  rule.validate();
  return amb::all_values(
      [&] {
        const std::size_t i = amb::choose_index(t.summands.size());
        return RuleSite{i, choose_candidate(rule.pattern, t.summands[i].factors)};
      },
      budget);
}

Term apply_rule_at(const Term& t, const RuleSite& site, const SofpaRule& rule, RuleApplication* record) {
  if (!site_fits(t, site, rule)) {
    throw StaleSiteError("rule '" + rule.name + "': site does not match summand " +
                         std::to_string(site.summand) + " of the current term");
  }
  std::vector<Summand> replacement = instantiate_templates(rule, site.candidate, t.summands[site.summand]);
  Term out;
  out.summands.reserve(t.summands.size() - 1 + replacement.size());
  out.summands.insert(out.summands.end(), t.summands.begin(), t.summands.begin() + site.summand);
  out.summands.insert(out.summands.end(), replacement.begin(), replacement.end());
  out.summands.insert(out.summands.end(), t.summands.begin() + site.summand + 1, t.summands.end());
  if (record) *record = RuleApplication{rule.name, site, std::move(replacement)};
  return out;
}

Term vary_leibniz(const Term& t, const std::string& delta_symbol) {
  Term out;
  for (const auto& s : t.summands) {
    for (std::size_t k = 0; k < s.factors.size(); ++k) {
      Summand varied = s;
      varied.factors[k] = Factor{Stem{delta_symbol, {Ornament::factor(s.factors[k])}}, Powered{1}};
      out.summands.push_back(std::move(varied));
    }
  }
  return out;
}

HighlightSpec highlight_for(const SofpaRule& rule, const MatchCandidate& candidate) {
  HighlightSpec spec;
  if (rule.highlighting.empty()) return spec;
  for (const Segment* seg : candidate.matched()) {
    const Chain& chain = rule.pattern.chains.at(seg->chain);
    for (std::size_t j = 0; j < seg->nodes.size(); ++j) {
      const auto jokers = chain.at(seg->nodes[j]).jokers(rule.pattern.convention);
      for (const auto& [joker, color] : rule.highlighting) {
        if (std::find(jokers.begin(), jokers.end(), joker) != jokers.end()) {
          spec.emplace(seg->begin + j, color);
          break;
        }
      }
    }
  }
  return spec;
}

}  // namespace termclamp
