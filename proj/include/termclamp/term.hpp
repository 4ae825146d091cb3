#pragma once

// Term data model.
//
// A Term is an ordered sum of Summands. A Summand is an exact rational
// coefficient times an ordered (noncommuting) sequence of Factors. A Factor is
// a Stem (symbol plus symbol-specific ornaments) carrying either an integer
// exponent or a list of tensor indices, never both.
//
// Nothing here canonicalizes implicitly: like terms and zero coefficients stay
// put until collect_like_summands() is called.

#include "termclamp/rational.hpp"

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace termclamp {

enum class Variance { up, down };

struct IndexRef {
  Variance variance = Variance::down;
  std::string name;

  static IndexRef up(std::string name) { return {Variance::up, std::move(name)}; }
  static IndexRef down(std::string name) { return {Variance::down, std::move(name)}; }

  friend bool operator==(const IndexRef&, const IndexRef&) = default;
};

/// Copyable owning pointer, used to break the Factor <-> Ornament recursion
/// while keeping value semantics.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT(google-explicit-constructor)
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  const T& operator*() const { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T& get() { return *ptr_; }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Factor;
struct Ornament;

using OrnamentGroup = std::vector<Ornament>;

/// Symbol-specific decoration of a stem. Its meaning belongs to the symbol's
/// registry entry; the model only sees a finite tree.
struct Ornament {
  struct Atom {
    std::string name;
    friend bool operator==(const Atom&, const Atom&) = default;
  };

  std::variant<Atom, std::int64_t, IndexRef, Box<Factor>, OrnamentGroup> node;

  static Ornament atom(std::string name);
  static Ornament integer(std::int64_t value);
  static Ornament index(IndexRef index);
  static Ornament factor(Factor factor);
  static Ornament group(OrnamentGroup items);

  const Atom* as_atom() const { return std::get_if<Atom>(&node); }
  const std::int64_t* as_integer() const { return std::get_if<std::int64_t>(&node); }
  const IndexRef* as_index() const { return std::get_if<IndexRef>(&node); }
  const Factor* as_factor() const;
  const OrnamentGroup* as_group() const { return std::get_if<OrnamentGroup>(&node); }

  friend bool operator==(const Ornament& a, const Ornament& b);
};

struct Stem {
  std::string symbol;
  std::vector<Ornament> ornaments;

  friend bool operator==(const Stem&, const Stem&) = default;
};

struct Powered {
  int exponent = 1;
  friend bool operator==(const Powered&, const Powered&) = default;
};

struct Indexed {
  std::vector<IndexRef> indices;
  friend bool operator==(const Indexed&, const Indexed&) = default;
};

struct Factor {
  Stem stem;
  std::variant<Powered, Indexed> shape;

  /// Bare symbol, i.e. exponent 1.
  static Factor symbol(std::string name);
  /// Throws std::invalid_argument for exponents below 1.
  static Factor power(std::string name, int exponent);
  static Factor indexed(std::string name, std::vector<IndexRef> indices);

  bool is_indexed() const { return std::holds_alternative<Indexed>(shape); }
  /// Null for powered factors.
  const std::vector<IndexRef>* indices() const;
  /// Exponent of a powered factor, 0 for indexed ones.
  int exponent() const;

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Summand {
  Rational coefficient{1};
  std::vector<Factor> factors;

  friend bool operator==(const Summand&, const Summand&) = default;
};

struct Term {
  std::vector<Summand> summands;

  bool empty() const { return summands.empty(); }
  friend bool operator==(const Term&, const Term&) = default;
};

/// Concatenates the summands of both terms, `a` first.
Term add_terms(const Term& a, const Term& b);

/// Multiplies every coefficient by `factor`; zero coefficients are retained.
Term scale_term(const Term& t, const Rational& factor);

/// Merges summands with equal factor sequences and drops the ones whose
/// coefficients cancel. First occurrence order is kept.
Term collect_like_summands(const Term& t);

/// Every index name in the summand, including those inside ornaments.
std::set<std::string> used_index_letters(const Summand& s);
std::set<std::string> used_index_letters(const Factor& f);

template <class T>
bool structural_equal(const T& a, const T& b) {
  return a == b;
}

}  // namespace termclamp
