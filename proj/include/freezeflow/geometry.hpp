#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "freezeflow/characteristics.hpp"
#include "freezeflow/window.hpp"

namespace freezeflow {

// Node counts of the classification grid.
struct GridResolution {
  std::size_t nx = 201;
  std::size_t nt = 201;
};

enum class CornerKind { FreezeThaw, ThawFreeze, Tip };
const char* corner_kind_name(CornerKind k);

// Where boundary curves meet.  For FreezeThaw/ThawFreeze corners `first`
// indexes a freezing curve and `second` a thawing curve; for a Tip both
// index thawing curves (left branch first).
struct Corner {
  double x = 0.0;
  double t = 0.0;
  CornerKind kind = CornerKind::FreezeThaw;
  std::size_t first = 0;
  std::size_t second = 0;
  // One-sided slopes dt/dx of the two branches at the corner.
  double first_slope = 0.0;
  double second_slope = 0.0;
  bool second_unbounded = false;
  bool slopes_valid = false;
};

// Freezing curves are graphs t(x) with samples sorted by x; thawing curves
// are graphs x(t) with samples sorted by t.
struct BoundarySet {
  std::vector<Curve> freezing;
  std::vector<Curve> thawing;
  std::vector<Corner> corners;
  std::vector<std::string> warnings;
  double cell_x = 0.0;
  double cell_t = 0.0;
  double slope_tol = 0.0;

  bool empty() const { return freezing.empty() && thawing.empty(); }
};

struct BoundaryOptions {
  // Accuracy of interface points along grid edges, relative to the edge.
  double edge_tolerance = 1e-7;
  // Slope magnitudes above 1/slope_tol are reported as unbounded;
  // <= 0 means one cell width.
  double slope_tol = 0.0;
};

// Marching squares on the frozen indicator v - w <= zone_epsilon over the window, with interface
// points refined along cell edges, split into freezing (|dt/dx| <= 1) and
// thawing runs.  Corners and tips are located by intersecting local
// quadratic fits of the incident branches.
BoundarySet extract_boundaries(const SolutionField& field,
                               const Window& window,
                               const GridResolution& resolution,
                               const BoundaryOptions& opts = {});

// Exact meeting curve {(x, t) : v0(x - t) = w0(x + t)} for data increasing
// on [y1, y2]: each shared value c gives ((xi + eta)/2, (eta - xi)/2) with
// v0(xi) = c = w0(eta).  Samples sorted by x.
Curve freezing_curve_monotone_case(const ProblemSpec& spec, double y1,
                                   double y2, std::size_t samples);

struct CornerSlopes {
  double freezing_slope;  // or the left branch of a tip
  double thawing_slope;   // or the right branch of a tip
  bool thawing_unbounded;
};

// Richardson-extrapolated one-sided slopes dt/dx of the two curves meeting
// at a corner.  Throws InsufficientSamples with fewer than 5 samples on
// either curve.
CornerSlopes corner_slopes(const BoundarySet& bset, std::size_t corner_index);

}  // namespace freezeflow
