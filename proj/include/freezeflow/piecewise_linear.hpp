#pragma once

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "freezeflow/interval_union.hpp"

namespace freezeflow {

// Continuous piecewise-linear function given by values at strictly increasing
// breakpoints.  Optional tail slopes extend it linearly past the first/last
// breakpoint; without them evaluation outside the breakpoint range throws.
class PiecewiseLinear {
 public:
  PiecewiseLinear(std::vector<double> breakpoints, std::vector<double> values,
                  std::optional<double> left_slope = std::nullopt,
                  std::optional<double> right_slope = std::nullopt);

  static PiecewiseLinear constant(double c) { return {{0.0}, {c}, 0.0, 0.0}; }
  // slope * x + intercept on the whole line.
  static PiecewiseLinear linear(double slope, double intercept) {
    return {{0.0}, {intercept}, slope, slope};
  }
  // Samples f at n >= 2 equally spaced points of [lo, hi].  With
  // extend_tails the end segments' slopes are used as tail slopes.
  static PiecewiseLinear sample(const std::function<double(double)>& f,
                                double lo, double hi, std::size_t n,
                                bool extend_tails = false);

  double operator()(double x) const;

  std::span<const double> breakpoints() const { return xs_; }
  std::span<const double> values() const { return ys_; }
  std::optional<double> left_slope() const { return left_slope_; }
  std::optional<double> right_slope() const { return right_slope_; }
  bool has_tails() const { return left_slope_ && right_slope_; }

  double front() const { return xs_.front(); }
  double back() const { return xs_.back(); }
  bool defined_at(double x) const;

  std::size_t segment_count() const { return xs_.size() - 1; }
  double segment_slope(std::size_t i) const {
    return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
  }

  // Largest absolute slope over segments and tails.
  double lipschitz() const;
  // Exact min and max over [lo, hi] (which must lie in the domain of
  // definition, tails included).
  std::pair<double, double> range_on(double lo, double hi) const;

  // Locations (segment midpoints) of zero-slope segments.
  std::vector<double> flat_segments() const;

  // Returns the same function with breakpoints restricted to [lo, hi]
  // (endpoints added) and no tails.
  PiecewiseLinear restricted(double lo, double hi) const;

 private:
  std::vector<double> xs_;
  std::vector<double> ys_;
  std::optional<double> left_slope_;
  std::optional<double> right_slope_;
};

// Sorted union of the breakpoints of a and b.
std::vector<double> merged_breakpoints(const PiecewiseLinear& a,
                                       const PiecewiseLinear& b);

// alpha * a + beta * b, exact on the merged breakpoints.  Tails exist only
// if both inputs have them.
PiecewiseLinear linear_combination(double alpha, const PiecewiseLinear& a,
                                   double beta, const PiecewiseLinear& b);

// {x in [lo, hi] : f(x) <= level}, exactly.  lo/hi may be infinite when f
// has tails.
IntervalUnion sublevel_set(const PiecewiseLinear& f, double level, double lo,
                           double hi);
// {x in [lo, hi] : f(x) >= level}, exactly.
IntervalUnion superlevel_set(const PiecewiseLinear& f, double level, double lo,
                             double hi);

// Largest |a(x) - b(x)| over [lo, hi] (finite window).
double sup_distance(const PiecewiseLinear& a, const PiecewiseLinear& b,
                    double lo, double hi);

}  // namespace freezeflow
