#pragma once

#include <span>
#include <vector>

#include "freezeflow/interval_union.hpp"
#include "freezeflow/problem.hpp"

namespace freezeflow {

struct SolverOptions {
  // Relative bisection tolerance on the value axis.
  double tolerance = 1e-10;
  int max_iterations = 60;
};

// inf{y >= x : int_x^y (blue - red) < 0}, +inf when the running integral
// never goes negative.  blue = {v0 <= b} (plus (-inf, a1] on a segment),
// red = {w0 >= b} (plus [a2, inf)).
double alpha_v(const ProblemSpec& spec, double b, double x);
// sup{y <= x : int_y^x (blue - red) > 0}, -inf when never positive.
double alpha_w(const ProblemSpec& spec, double b, double x);

// A(v, b, t): where the time-0 sublevel set {v0 <= b} has been carried to
// by time t after annihilating against the superlevel set of w0.
IntervalUnion sublevel_set(const ProblemSpec& spec, double b, double t);
// A(w, b, t), the mirror image moving left.
IntervalUnion superlevel_set(const ProblemSpec& spec, double b, double t);

// Replaces whole-line data outside [-extent, extent] by slopes +-lambda
// (v0 growing, w0 decreasing away from the window).
ProblemSpec localize(const ProblemSpec& spec, double extent);

// Evaluates v(x, t), w(x, t).  Immutable; safe to share across threads.
class SolutionField {
 public:
  explicit SolutionField(ProblemSpec spec, SolverOptions opts = {});

  const ProblemSpec& spec() const { return spec_; }
  const SolverOptions& options() const { return opts_; }
  double tolerance() const { return opts_.tolerance; }
  // Threshold on v - w below which a point counts as frozen.
  double zone_epsilon() const { return zone_epsilon_; }

  double v(double x, double t) const;
  double w(double x, double t) const;

  // v - w <= zone_epsilon(), decided with as few level-set tests as
  // possible (one when either characteristic never froze).
  bool frozen_at(double x, double t) const;

  // z in A(v, b, t) / z in A(w, b, t), using only data on [z - t, z + t].
  bool in_sublevel(double b, double z, double t) const;
  bool in_superlevel(double b, double z, double t) const;

  double alpha_v(double b, double x) const;
  double alpha_w(double b, double x) const;
  IntervalUnion sublevel_set(double b, double t) const;
  IntervalUnion superlevel_set(double b, double t) const;

  struct Piece {
    double s, e;
    int f;  // blue - red on (s, e)
  };

 private:
  // Calls fn(piece) for the constant pieces of the integrand covering
  // [lo, hi], in increasing order (forward) or decreasing order.  Stops when
  // fn returns false.
  template <class Fn>
  void for_each_piece(double b, double lo, double hi, bool forward,
                      Fn&& fn) const;
  bool survives_v(double b, double x0, double t) const;
  bool survives_w(double b, double x0, double t) const;
  void check_query(double x, double t) const;
  std::pair<double, double> window_range(double x, double t) const;
  double slack(double x, double t) const;

  ProblemSpec spec_;
  SolverOptions opts_;
  double zone_epsilon_ = 0.0;
  std::vector<double> knots_;
  std::vector<double> vk_;
  std::vector<double> wk_;
  bool segment_ = false;
  double a1_ = -kInf;
  double a2_ = kInf;
};

inline double eval_v(const SolutionField& f, double x, double t) {
  return f.v(x, t);
}
inline double eval_w(const SolutionField& f, double x, double t) {
  return f.w(x, t);
}

// Row-major values: index = it * xs.size() + ix.
struct GridValues {
  std::vector<double> xs;
  std::vector<double> ts;
  std::vector<double> v;
  std::vector<double> w;

  double v_at(std::size_t ix, std::size_t it) const {
    return v[it * xs.size() + ix];
  }
  double w_at(std::size_t ix, std::size_t it) const {
    return w[it * xs.size() + ix];
  }
};

GridValues eval_grid(const SolutionField& field, std::span<const double> xs,
                     std::span<const double> ts);

// n equally spaced points from lo to hi inclusive.
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace freezeflow
