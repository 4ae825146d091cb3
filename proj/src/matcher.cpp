#include "termclamp/matcher.hpp"

#include <algorithm>
#include <stdexcept>

namespace termclamp {

bool JokerConvention::is_joker(std::string_view name) const {
  return !marker.empty() && name.size() > marker.size() && name.starts_with(marker);
}

bool JokerConvention::is_segment_joker(std::string_view name) const {
  return is_joker(name) && name.size() > 2 * marker.size() && name.substr(marker.size()).starts_with(marker);
}

const BoundValue* Bindings::find(std::string_view joker) const {
  const auto it = map_.find(joker);
  return it == map_.end() ? nullptr : &it->second;
}

bool Bindings::bind(const std::string& joker, BoundValue value) {
  const auto it = map_.find(joker);
  if (it == map_.end()) {
    map_.emplace(joker, std::move(value));
    return true;
  }
  return it->second == value;
}

void Bindings::bind_or_fail(const std::string& joker, BoundValue value) {
  amb::require(bind(joker, std::move(value)));
}

namespace {

bool is_bare_joker(const Factor& f, const JokerConvention& conv) {
  return conv.is_joker(f.stem.symbol) && f.stem.ornaments.empty() && !f.is_indexed() && f.exponent() == 1;
}

void collect_jokers(const Factor& f, const JokerConvention& conv, std::vector<std::string>& out);

void collect_jokers(const Ornament& o, const JokerConvention& conv, std::vector<std::string>& out) {
  if (const auto* a = o.as_atom()) {
    if (conv.is_joker(a->name)) out.push_back(a->name);
  } else if (const auto* i = o.as_index()) {
    if (conv.is_joker(i->name)) out.push_back(i->name);
  } else if (const auto* f = o.as_factor()) {
    collect_jokers(*f, conv, out);
  } else if (const auto* g = o.as_group()) {
    for (const auto& item : *g) collect_jokers(item, conv, out);
  }
}

void collect_jokers(const Factor& f, const JokerConvention& conv, std::vector<std::string>& out) {
  if (conv.is_joker(f.stem.symbol)) out.push_back(f.stem.symbol);
  for (const auto& o : f.stem.ornaments) collect_jokers(o, conv, out);
  if (const auto* idx = f.indices()) {
    for (const auto& i : *idx) {
      if (conv.is_joker(i.name)) out.push_back(i.name);
    }
  }
}

Bindings match_literal(const Factor& p, const Factor& v, Bindings b, const JokerConvention& conv);

Bindings match_ornament_sequence(std::span<const Ornament> p, std::span<const Ornament> v, Bindings b,
                                 const JokerConvention& conv) {
  while (!p.empty()) {
    const auto* atom = p.front().as_atom();
    if (atom && conv.is_segment_joker(atom->name)) {
      const std::size_t take = amb::choose_index(v.size() + 1);
      b.bind_or_fail(atom->name, Ornament::group(OrnamentGroup(v.begin(), v.begin() + take)));
      p = p.subspan(1);
      v = v.subspan(take);
      continue;
    }
    amb::require(!v.empty());
    b = match_ornament(p.front(), v.front(), std::move(b), conv);
    p = p.subspan(1);
    v = v.subspan(1);
  }
  amb::require(v.empty());
  return b;
}

Bindings match_literal(const Factor& p, const Factor& v, Bindings b, const JokerConvention& conv) {
  if (conv.is_joker(p.stem.symbol)) {
    if (p.stem.ornaments.empty()) {
      b.bind_or_fail(p.stem.symbol, v.stem);
    } else {
      b.bind_or_fail(p.stem.symbol, v.stem.symbol);
      b = match_ornament_sequence(p.stem.ornaments, v.stem.ornaments, std::move(b), conv);
    }
  } else {
    amb::require(p.stem.symbol == v.stem.symbol);
    b = match_ornament_sequence(p.stem.ornaments, v.stem.ornaments, std::move(b), conv);
  }

  if (const auto* pidx = p.indices()) {
    const auto* vidx = v.indices();
    amb::require(vidx != nullptr);
    return match_indices(*pidx, *vidx, std::move(b), conv);
  }
  amb::require(!v.is_indexed() && v.exponent() == p.exponent());
  return b;
}

}  // namespace

PatternNode PatternNode::from_factor(Factor factor, const JokerConvention& convention) {
  if (is_bare_joker(factor, convention)) return joker(factor.stem.symbol);
  return literal(std::move(factor));
}

PatternNode PatternNode::extension(std::string label, ExtensionHook hook, std::vector<std::string> binds) {
  return PatternNode(Extension{std::move(label), std::move(hook), std::move(binds)});
}

std::vector<std::string> PatternNode::jokers(const JokerConvention& convention) const {
  std::vector<std::string> out;
  if (const auto* lit = std::get_if<Literal>(&node_)) {
    collect_jokers(lit->factor, convention, out);
  } else if (const auto* j = std::get_if<JokerRef>(&node_)) {
    out.push_back(j->name);
  } else {
    const auto& ext = std::get<Extension>(node_);
    out = ext.binds;
  }
  std::vector<std::string> unique;
  for (auto& name : out) {
    if (std::find(unique.begin(), unique.end(), name) == unique.end()) unique.push_back(std::move(name));
  }
  return unique;
}

PatternNode as_pattern(std::string joker, PatternNode sub, const JokerConvention& convention) {
  std::vector<std::string> binds{joker};
  for (auto& name : sub.jokers(convention)) {
    if (name != joker) binds.push_back(std::move(name));
  }
  std::string label = "as:" + joker;
  auto hook = [joker = std::move(joker), sub = std::move(sub), convention](const Factor& value,
                                                                          const Bindings& bindings) {
    Bindings out = match_factor(sub, value, bindings, convention);
    out.bind_or_fail(joker, value);
    return out;
  };
  return PatternNode::extension(std::move(label), std::move(hook), std::move(binds));
}

void Sofpa::validate() const {
  if (chains.empty()) throw std::invalid_argument("a sofpa needs at least one chain");
  for (const auto& c : chains) {
    if (c.empty()) throw std::invalid_argument("sofpa chains must be nonempty");
  }
}

std::size_t Sofpa::total_length() const {
  std::size_t n = 0;
  for (const auto& c : chains) n += c.size();
  return n;
}

std::vector<const Segment*> MatchCandidate::matched() const {
  std::vector<const Segment*> out;
  for (const auto& s : segments) {
    if (s.kind == Segment::Kind::matched) out.push_back(&s);
  }
  return out;
}

Bindings match_factor(const PatternNode& pattern, const Factor& value, Bindings bindings,
                      const JokerConvention& convention) {
  return std::visit(
      [&](const auto& node) -> Bindings {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, PatternNode::Literal>) {
          return match_literal(node.factor, value, std::move(bindings), convention);
        } else if constexpr (std::is_same_v<T, PatternNode::JokerRef>) {
          bindings.bind_or_fail(node.name, value);
          return bindings;
        } else {
          return node.hook(value, bindings);
        }
      },
      pattern.node());
}

Bindings match_indices(std::span<const IndexRef> pattern, std::span<const IndexRef> value, Bindings bindings,
                       const JokerConvention& convention) {
  while (!pattern.empty()) {
    const IndexRef& p = pattern.front();
    if (convention.is_segment_joker(p.name)) {
      const std::size_t take = amb::choose_index(value.size() + 1);
      bindings.bind_or_fail(p.name, std::vector<IndexRef>(value.begin(), value.begin() + take));
      pattern = pattern.subspan(1);
      value = value.subspan(take);
      continue;
    }
    amb::require(!value.empty() && value.front().variance == p.variance);
    if (convention.is_joker(p.name)) {
      bindings.bind_or_fail(p.name, value.front().name);
    } else {
      amb::require(value.front().name == p.name);
    }
    pattern = pattern.subspan(1);
    value = value.subspan(1);
  }
  amb::require(value.empty());
  return bindings;
}

Bindings match_ornament(const Ornament& pattern, const Ornament& value, Bindings bindings,
                        const JokerConvention& convention) {
  if (const auto* a = pattern.as_atom()) {
    if (convention.is_joker(a->name)) {
      bindings.bind_or_fail(a->name, value);
    } else {
      amb::require(pattern == value);
    }
    return bindings;
  }
  if (pattern.as_integer()) {
    amb::require(pattern == value);
    return bindings;
  }
  if (const auto* p = pattern.as_index()) {
    const auto* v = value.as_index();
    amb::require(v != nullptr && v->variance == p->variance);
    if (convention.is_joker(p->name)) {
      bindings.bind_or_fail(p->name, v->name);
    } else {
      amb::require(v->name == p->name);
    }
    return bindings;
  }
  if (const auto* p = pattern.as_factor()) {
    const auto* v = value.as_factor();
    amb::require(v != nullptr);
    if (is_bare_joker(*p, convention)) {
      bindings.bind_or_fail(p->stem.symbol, *v);
      return bindings;
    }
    return match_literal(*p, *v, std::move(bindings), convention);
  }
  const auto* pg = pattern.as_group();
  const auto* vg = value.as_group();
  amb::require(vg != nullptr);
  return match_ornament_sequence(*pg, *vg, std::move(bindings), convention);
}

MatchCandidate choose_candidate(const Sofpa& sofpa, std::span<const Factor> factors) {
  const std::size_t n = factors.size();
  std::vector<std::size_t> rest(sofpa.chains.size() + 1, 0);
  for (std::size_t i = sofpa.chains.size(); i-- > 0;) rest[i] = rest[i + 1] + sofpa.chains[i].size();

  auto slice = [&](std::size_t b, std::size_t e) { return std::vector<Factor>(factors.begin() + b, factors.begin() + e); };

  MatchCandidate c;
  std::size_t start = 0;
  for (std::size_t i = 0; i < sofpa.chains.size(); ++i) {
    const Chain& chain = sofpa.chains[i];
    amb::require(start + rest[i] <= n);
    const std::size_t pos = start + amb::choose_index(n - rest[i] - start + 1);
    Segment matched;
    matched.kind = Segment::Kind::matched;
    matched.chain = i;
    matched.begin = pos;
    matched.end = pos + chain.size();
    for (std::size_t j = 0; j < chain.size(); ++j) {
      c.bindings = match_factor(chain[j], factors[pos + j], std::move(c.bindings), sofpa.convention);
      matched.nodes.push_back(j);
    }
    matched.factors = slice(matched.begin, matched.end);
    c.segments.push_back(Segment{Segment::Kind::between, 0, start, pos, slice(start, pos), {}});
    c.segments.push_back(std::move(matched));
    start = pos + chain.size();
  }
  c.segments.push_back(Segment{Segment::Kind::between, 0, start, n, slice(start, n), {}});
  return c;
}

amb::Results<MatchCandidate> enumerate_candidates(const Sofpa& sofpa, std::span<const Factor> factors,
                                                  const amb::Budget& budget) {
  sofpa.validate();
  return amb::all_values([&] { return choose_candidate(sofpa, factors); }, budget);
}

std::vector<Bindings> match_all(const PatternNode& pattern, const Factor& value, const Bindings& bindings,
                                const JokerConvention& convention) {
  return amb::all_values([&] { return match_factor(pattern, value, bindings, convention); }).values;
}

}  // namespace termclamp
