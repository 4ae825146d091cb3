#pragma once

// Nondeterministic evaluation by explicit backtracking.
//
// A computation is any nullary callable. While it runs under all_values() it
// may call choose(), choose_index(), either() and fail(). Each call to
// all_values() re-runs the computation once per branch, replaying the choices
// recorded on a trail and advancing the deepest unexhausted choice point after
// every run. The result is a depth-first enumeration where alternatives are
// tried in the order given.
//
// Computations must be deterministic functions of the choices they make:
// replay assumes that the same choice prefix leads to the same sequence of
// choice points.

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

namespace termclamp::amb {

/// Raised when a nondeterministic primitive is used outside all_values().
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct Budget {
  std::optional<std::size_t> max_results;
  /// Counts every evaluated choice point, including replays.
  std::optional<std::size_t> max_steps;

  static Budget unlimited() { return {}; }
};

template <class T>
struct Results {
  std::vector<T> values;
  bool truncated = false;
};

namespace detail {

// Thrown by fail(); deliberately not derived from std::exception so that
// ordinary error handlers inside a computation do not swallow it.
struct BranchFailure {};

struct Stats {
  std::size_t steps = 0;
  bool truncated = false;
};

// Runs `branch` once per branch. A branch either fails by throwing
// BranchFailure or returns; returning false stops the enumeration and marks
// it truncated (a success beyond max_results).
Stats enumerate(const std::function<bool()>& branch, const Budget& budget);

std::size_t choose_index(std::size_t count);

bool running();

}  // namespace detail

/// Picks one of `count` alternatives: 0, 1, ..., count-1 across backtracks.
/// count == 0 behaves as fail().
inline std::size_t choose_index(std::size_t count) { return detail::choose_index(count); }

template <class T>
T choose(const std::vector<T>& alternatives) {
  return alternatives[detail::choose_index(alternatives.size())];
}

template <class T>
T choose(std::initializer_list<T> alternatives) {
  return choose(std::vector<T>(alternatives));
}

/// Abandons the current branch.
[[noreturn]] void fail();

/// Runs `first` and, on backtracking, `second`. Both are deferred callables.
template <class A, class B>
auto either(A&& first, B&& second) {
  if (detail::choose_index(2) == 0) {
    return std::forward<A>(first)();
  }
  return std::forward<B>(second)();
}

/// Fails the current branch unless `condition` holds.
inline void require(bool condition) {
  if (!condition) fail();
}

/// Collects one value per successful branch of `computation`, depth first.
/// Nested calls are fully isolated: the inner enumeration completes before
/// the enclosing branch continues.
template <class F>
auto all_values(F&& computation, const Budget& budget = {})
    -> Results<std::decay_t<std::invoke_result_t<F&>>> {
  using T = std::decay_t<std::invoke_result_t<F&>>;
  Results<T> out;
  auto branch = [&]() -> bool {
    T value = computation();
    if (budget.max_results && out.values.size() >= *budget.max_results) return false;
    out.values.push_back(std::move(value));
    return true;
  };
  const auto stats = detail::enumerate(branch, budget);
  out.truncated = stats.truncated;
  return out;
}

}  // namespace termclamp::amb
