#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "freezeflow/interval_union.hpp"
#include "freezeflow/problem.hpp"

namespace freezeflow {

// Blue intervals move right, red intervals move left.  A blue interval whose
// right end touches the left end of a red one is in contact: the touching
// point stays put and both erode into it at unit rate.
struct AnnihilationState {
  IntervalUnion blue;
  IntervalUnion red;
  double t = 0.0;
};

// Advances the state by dt with exact event handling (contacts and
// extinctions are solved in closed form).  Contact is read off the state:
// a blue right end equal to a red left end.
AnnihilationState annihilate_step(const AnnihilationState& state, double dt);

// Number of contact/extinction events processed by the last call on this
// thread (for error budgets in tests).
std::size_t last_event_count();

// Runs the annihilation from the time-0 sets {v0 <= b}, {w0 >= b} (plus the
// boundary feeders (-inf, a1] and [a2, inf) on a segment) up to time t and
// returns (blue, red) restricted to the domain.
std::pair<IntervalUnion, IntervalUnion> oracle_level_sets(
    const ProblemSpec& spec, double b, double t);

// Upwind transport of v (right) and w (left) with dt = dx.  A liquid node
// whose transported values cross freezes at their mean; a frozen node keeps
// its value until the transported values separate (v > w) again.
struct SchemeResult {
  std::vector<double> xs;
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> w;
  std::vector<bool> frozen;
};

// On the whole line a window [lo, hi] is required; the computation pads it
// with enough nodes that the boundary never reaches it.  On a segment the
// window defaults to the domain.
SchemeResult grid_scheme(const ProblemSpec& spec, double dx, double t_end,
                         std::optional<std::pair<double, double>> window =
                             std::nullopt);

}  // namespace freezeflow
