#include "termclamp/amb.hpp"

namespace termclamp::amb {
namespace detail {
namespace {

struct ChoicePoint {
  std::size_t chosen;
  std::size_t count;
};

struct Frame {
  std::vector<ChoicePoint> trail;
  std::size_t cursor = 0;
  std::size_t steps = 0;
  const Budget* budget = nullptr;
};

struct StepLimitReached {};

thread_local Frame* current_frame = nullptr;

class FrameScope {
 public:
  explicit FrameScope(Frame& frame) : saved_(current_frame) { current_frame = &frame; }
  ~FrameScope() { current_frame = saved_; }
  FrameScope(const FrameScope&) = delete;
  FrameScope& operator=(const FrameScope&) = delete;

 private:
  Frame* saved_;
};

// Moves the trail to the next unexplored branch. Returns false when the
// search space is exhausted.
bool advance(std::vector<ChoicePoint>& trail) {
  while (!trail.empty() && trail.back().chosen + 1 >= trail.back().count) {
    trail.pop_back();
  }
  if (trail.empty()) return false;
  ++trail.back().chosen;
  return true;
}

}  // namespace

Stats enumerate(const std::function<bool()>& branch, const Budget& budget) {
  Frame frame;
  frame.budget = &budget;
  FrameScope scope(frame);

  Stats stats;
  for (;;) {
    frame.cursor = 0;
    try {
      if (!branch()) {
        stats.truncated = true;
        break;
      }
    } catch (const BranchFailure&) {
    } catch (const StepLimitReached&) {
      stats.truncated = true;
      break;
    }
    frame.trail.resize(frame.cursor);
    if (!advance(frame.trail)) break;
  }
  stats.steps = frame.steps;
  return stats;
}

std::size_t choose_index(std::size_t count) {
  if (current_frame == nullptr) {
    throw UsageError("choose called outside of all_values");
  }
  Frame& frame = *current_frame;
  ++frame.steps;
  if (frame.budget->max_steps && frame.steps > *frame.budget->max_steps) {
    throw StepLimitReached{};
  }
  if (count == 0) throw BranchFailure{};

  if (frame.cursor < frame.trail.size()) {
    const ChoicePoint& point = frame.trail[frame.cursor++];
    if (point.count != count) {
      throw UsageError("computation is not replayable: choice point arity changed");
    }
    return point.chosen;
  }
  frame.trail.push_back({0, count});
  ++frame.cursor;
  return 0;
}

bool running() { return current_frame != nullptr; }

}  // namespace detail

void fail() {
  if (!detail::running()) {
    throw UsageError("fail called outside of all_values");
  }
  throw detail::BranchFailure{};
}

}  // namespace termclamp::amb
