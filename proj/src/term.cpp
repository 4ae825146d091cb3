#include "termclamp/term.hpp"

#include <stdexcept>

namespace termclamp {

Ornament Ornament::atom(std::string name) { return Ornament{Atom{std::move(name)}}; }
Ornament Ornament::integer(std::int64_t value) { return Ornament{value}; }
Ornament Ornament::index(IndexRef index) { return Ornament{std::move(index)}; }
Ornament Ornament::factor(Factor factor) { return Ornament{Box<Factor>(std::move(factor))}; }
Ornament Ornament::group(OrnamentGroup items) { return Ornament{std::move(items)}; }

const Factor* Ornament::as_factor() const {
  const auto* boxed = std::get_if<Box<Factor>>(&node);
  return boxed ? &**boxed : nullptr;
}

bool operator==(const Ornament& a, const Ornament& b) { return a.node == b.node; }

Factor Factor::symbol(std::string name) { return Factor{Stem{std::move(name), {}}, Powered{1}}; }

Factor Factor::power(std::string name, int exponent) {
  if (exponent < 1) throw std::invalid_argument("factor exponent must be at least 1");
  return Factor{Stem{std::move(name), {}}, Powered{exponent}};
}

Factor Factor::indexed(std::string name, std::vector<IndexRef> indices) {
  return Factor{Stem{std::move(name), {}}, Indexed{std::move(indices)}};
}

const std::vector<IndexRef>* Factor::indices() const {
  const auto* idx = std::get_if<Indexed>(&shape);
  return idx ? &idx->indices : nullptr;
}

int Factor::exponent() const {
  const auto* p = std::get_if<Powered>(&shape);
  return p ? p->exponent : 0;
}

Term add_terms(const Term& a, const Term& b) {
  Term out = a;
  out.summands.insert(out.summands.end(), b.summands.begin(), b.summands.end());
  return out;
}

Term scale_term(const Term& t, const Rational& factor) {
  Term out = t;
  for (auto& s : out.summands) s.coefficient *= factor;
  return out;
}

Term collect_like_summands(const Term& t) {
  Term merged;
  for (const auto& s : t.summands) {
    auto it = merged.summands.begin();
    for (; it != merged.summands.end(); ++it) {
      if (it->factors == s.factors) break;
    }
    if (it == merged.summands.end()) {
      merged.summands.push_back(s);
    } else {
      it->coefficient += s.coefficient;
    }
  }
  Term out;
  for (auto& s : merged.summands) {
    if (!s.coefficient.is_zero()) out.summands.push_back(std::move(s));
  }
  return out;
}

namespace {

void collect_indices(const Factor& f, std::set<std::string>& out);

void collect_indices(const Ornament& o, std::set<std::string>& out) {
  if (const auto* idx = o.as_index()) {
    out.insert(idx->name);
  } else if (const auto* f = o.as_factor()) {
    collect_indices(*f, out);
  } else if (const auto* g = o.as_group()) {
    for (const auto& item : *g) collect_indices(item, out);
  }
}

void collect_indices(const Factor& f, std::set<std::string>& out) {
  for (const auto& o : f.stem.ornaments) collect_indices(o, out);
  if (const auto* idx = f.indices()) {
    for (const auto& i : *idx) out.insert(i.name);
  }
}

}  // namespace

std::set<std::string> used_index_letters(const Factor& f) {
  std::set<std::string> out;
  collect_indices(f, out);
  return out;
}

std::set<std::string> used_index_letters(const Summand& s) {
  std::set<std::string> out;
  for (const auto& f : s.factors) collect_indices(f, out);
  return out;
}

}  // namespace termclamp
