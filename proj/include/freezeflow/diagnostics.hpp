#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freezeflow/levelset.hpp"
#include "freezeflow/window.hpp"

namespace freezeflow {

struct CheckReport {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double bound = 0.0;
  std::string details;
};

struct SamplePoint {
  double x;
  double t;
};

// nx * nt points on a regular grid over the window.
std::vector<SamplePoint> sample_window(const Window& window, std::size_t nx,
                                       std::size_t nt);

// Momentum int mu dx and energy int (mu^2 + sigma^2) dx by composite midpoint
// rule; measured is the largest deviation from the value at the first time.
// bound <= 0 means lambda^2 * 2 / quadrature_n.  Segment domains only.
std::pair<CheckReport, CheckReport> check_momentum_energy(
    const SolutionField& field, std::span<const double> times,
    std::size_t quadrature_n = 2048, double bound = 0.0);

// Conservation of D(v, B) + D(w, B), where D(f, B) is the measure of
// {f in B}, computed from exact level sets.  On a segment B = (-inf, b] for
// every b; on the whole line B runs over the bands between consecutive
// sorted b values (so the measures stay finite).  The window only sets the
// default bound 2 * tolerance * max(1, width).
CheckReport check_occupation(const SolutionField& field,
                             std::span<const double> b_values,
                             std::span<const double> times,
                             const Window& window, double bound = 0.0);

// Sampled total variation of v and of w, each non-increasing in t up to
// 2 * lambda * spacing.  On the whole line the window at time t is the
// cone [x0 + (t - t_first), x1 - (t - t_first)], inside which the solution
// only depends on data in the earlier, wider window.  On a segment the
// window is kept fixed.
CheckReport check_total_variation(const SolutionField& field,
                                  std::span<const double> times,
                                  const Window& window, std::size_t samples);

// For t, s >= 2 (a2 - a1): v = w, v(x, t) = v(x, s) and x -> v(x, t)
// non-decreasing on a sample grid.  time_factors scale 2 (a2 - a1);
// bound <= 0 means 2 * tolerance * span of the data.
CheckReport check_eventual_freeze(const SolutionField& field,
                                  std::span<const double> time_factors = {},
                                  std::size_t samples = 201,
                                  double bound = 0.0);

// For sigma0 = 0 and mu0 decreasing on a symmetric segment [-a, a]:
// mu(x, 4a) = mu(-x, 0).
CheckReport check_mirror_identity(const SolutionField& field,
                                  std::size_t samples = 201,
                                  double bound = 1e-6);

// vA <= vB and wA <= wB at the sample points, up to 2 * tolerance * span.
// Throws InvalidProblem unless v0A <= v0B and w0A <= w0B everywhere.
CheckReport check_monotone_dependence(const ProblemSpec& a,
                                      const ProblemSpec& b,
                                      std::span<const SamplePoint> points,
                                      SolverOptions opts = {});

// sup |vA - vB|, |wA - wB| over the sample points against the sup distance
// of the data plus slack.  Whole-line windows are read as [c - r, c + r] x
// [0, r) with the data compared on [c - 2r, c + 2r]; points outside are
// rejected.  slack <= 0 means 4 * tolerance * span.
CheckReport check_lipschitz_map(const ProblemSpec& a, const ProblemSpec& b,
                                const Window& window,
                                std::span<const SamplePoint> points,
                                double slack = 0.0, SolverOptions opts = {});

// The checks that apply to the field with default parameters, sorted by
// name.  The window falls back to the domain (segment) or the given one.
std::vector<CheckReport> run_default_checks(const SolutionField& field,
                                            const Window& window);

}  // namespace freezeflow
