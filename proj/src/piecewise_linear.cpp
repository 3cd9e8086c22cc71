#include "freezeflow/piecewise_linear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "freezeflow/errors.hpp"

namespace freezeflow {

PiecewiseLinear::PiecewiseLinear(std::vector<double> breakpoints,
                                 std::vector<double> values,
                                 std::optional<double> left_slope,
                                 std::optional<double> right_slope)
    : xs_(std::move(breakpoints)),
      ys_(std::move(values)),
      left_slope_(left_slope),
      right_slope_(right_slope) {
  if (xs_.empty()) throw InvalidProblem("piecewise-linear: no breakpoints");
  if (xs_.size() != ys_.size()) {
    throw InvalidProblem("piecewise-linear: breakpoints/values size mismatch");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(ys_[i])) {
      throw InvalidProblem("piecewise-linear: non-finite breakpoint or value");
    }
    if (i > 0 && !(xs_[i] > xs_[i - 1])) {
      throw InvalidProblem(
          "piecewise-linear: breakpoints not strictly increasing at index " +
          std::to_string(i));
    }
  }
  if ((left_slope_ && !std::isfinite(*left_slope_)) ||
      (right_slope_ && !std::isfinite(*right_slope_))) {
    throw InvalidProblem("piecewise-linear: non-finite tail slope");
  }
}

PiecewiseLinear PiecewiseLinear::sample(const std::function<double(double)>& f,
                                        double lo, double hi, std::size_t n,
                                        bool extend_tails) {
  if (n < 2 || !(hi > lo)) {
    throw InvalidProblem("sample: need n >= 2 and lo < hi");
  }
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Pin the last point exactly to hi.
    xs[i] = (i + 1 == n) ? hi
                         : lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(n - 1);
    ys[i] = f(xs[i]);
  }
  if (!extend_tails) return {std::move(xs), std::move(ys)};
  const double ls = (ys[1] - ys[0]) / (xs[1] - xs[0]);
  const double rs = (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]);
  return {std::move(xs), std::move(ys), ls, rs};
}

bool PiecewiseLinear::defined_at(double x) const {
  if (x < xs_.front()) return left_slope_.has_value();
  if (x > xs_.back()) return right_slope_.has_value();
  return true;
}

double PiecewiseLinear::operator()(double x) const {
  if (x <= xs_.front()) {
    if (x == xs_.front()) return ys_.front();
    if (!left_slope_) {
      throw DomainError("piecewise-linear: x=" + std::to_string(x) +
                        " left of the breakpoint range");
    }
    return ys_.front() + *left_slope_ * (x - xs_.front());
  }
  if (x >= xs_.back()) {
    if (x == xs_.back()) return ys_.back();
    if (!right_slope_) {
      throw DomainError("piecewise-linear: x=" + std::to_string(x) +
                        " right of the breakpoint range");
    }
    return ys_.back() + *right_slope_ * (x - xs_.back());
  }
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  const double s = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + s * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinear::lipschitz() const {
  double lam = 0.0;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    lam = std::max(lam, std::abs(segment_slope(i)));
  }
  if (left_slope_) lam = std::max(lam, std::abs(*left_slope_));
  if (right_slope_) lam = std::max(lam, std::abs(*right_slope_));
  return lam;
}

std::pair<double, double> PiecewiseLinear::range_on(double lo,
                                                    double hi) const {
  if (lo > hi) std::swap(lo, hi);
  double a = (*this)(lo);
  double b = (*this)(hi);
  double mn = std::min(a, b);
  double mx = std::max(a, b);
  auto it = std::upper_bound(xs_.begin(), xs_.end(), lo);
  for (; it != xs_.end() && *it < hi; ++it) {
    const double y = ys_[static_cast<std::size_t>(it - xs_.begin())];
    mn = std::min(mn, y);
    mx = std::max(mx, y);
  }
  return {mn, mx};
}

std::vector<double> PiecewiseLinear::flat_segments() const {
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
    if (ys_[i] == ys_[i + 1]) out.push_back(0.5 * (xs_[i] + xs_[i + 1]));
  }
  return out;
}

PiecewiseLinear PiecewiseLinear::restricted(double lo, double hi) const {
  std::vector<double> xs{lo};
  std::vector<double> ys{(*this)(lo)};
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (xs_[i] > lo && xs_[i] < hi) {
      xs.push_back(xs_[i]);
      ys.push_back(ys_[i]);
    }
  }
  xs.push_back(hi);
  ys.push_back((*this)(hi));
  return {std::move(xs), std::move(ys)};
}

std::vector<double> merged_breakpoints(const PiecewiseLinear& a,
                                       const PiecewiseLinear& b) {
  std::vector<double> out;
  out.reserve(a.breakpoints().size() + b.breakpoints().size());
  std::merge(a.breakpoints().begin(), a.breakpoints().end(),
             b.breakpoints().begin(), b.breakpoints().end(),
             std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

PiecewiseLinear linear_combination(double alpha, const PiecewiseLinear& a,
                                   double beta, const PiecewiseLinear& b) {
  auto xs = merged_breakpoints(a, b);
  // Without tails the combination only lives where both are defined.
  if (!a.has_tails() || !b.has_tails()) {
    // A side with a tail is defined beyond its breakpoints.
    const double lo = std::max(a.left_slope() ? -kInf : a.front(),
                               b.left_slope() ? -kInf : b.front());
    const double hi = std::min(a.right_slope() ? kInf : a.back(),
                               b.right_slope() ? kInf : b.back());
    if (!a.left_slope() || !b.left_slope()) {
      std::erase_if(xs, [&](double x) { return x < lo; });
    }
    if (!a.right_slope() || !b.right_slope()) {
      std::erase_if(xs, [&](double x) { return x > hi; });
    }
    if (xs.empty()) throw DomainError("linear_combination: disjoint supports");
  }
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys[i] = alpha * a(xs[i]) + beta * b(xs[i]);
  }
  std::optional<double> ls, rs;
  if (a.left_slope() && b.left_slope()) {
    ls = alpha * *a.left_slope() + beta * *b.left_slope();
  }
  if (a.right_slope() && b.right_slope()) {
    rs = alpha * *a.right_slope() + beta * *b.right_slope();
  }
  return {std::move(xs), std::move(ys), ls, rs};
}

namespace {

// Appends {x in [s, e] : anchor_y + slope (x - anchor_x) <= level}.
void linear_sublevel(double s, double e, double anchor_x, double anchor_y,
                     double slope, double level, std::vector<Interval>& out) {
  if (s > e) return;
  if (slope == 0.0) {
    if (anchor_y <= level) out.push_back({s, e});
    return;
  }
  const double c = anchor_x + (level - anchor_y) / slope;
  if (slope > 0.0) {
    if (c >= s) out.push_back({s, std::min(e, c)});
  } else {
    if (c <= e) out.push_back({std::max(s, c), e});
  }
}

IntervalUnion sublevel_impl(const PiecewiseLinear& f, double sign,
                            double level, double lo, double hi) {
  const auto xs = f.breakpoints();
  const auto ys = f.values();
  std::vector<Interval> out;
  if (lo < xs.front()) {
    if (!f.left_slope()) throw DomainError("sublevel_set: window left of data");
    linear_sublevel(lo, std::min(hi, xs.front()), xs.front(), sign * ys.front(),
                    sign * *f.left_slope(), sign * level, out);
  }
  if (xs.size() == 1) {
    if (lo <= xs[0] && xs[0] <= hi && sign * ys[0] <= sign * level) {
      out.push_back({xs[0], xs[0]});
    }
  }
  const auto first = std::upper_bound(xs.begin(), xs.end(), lo);
  std::size_t i = first == xs.begin()
                      ? 0
                      : static_cast<std::size_t>(first - xs.begin()) - 1;
  for (; i + 1 < xs.size() && xs[i] < hi; ++i) {
    const double s = std::max(lo, xs[i]);
    const double e = std::min(hi, xs[i + 1]);
    const double slope = f.segment_slope(i);
    linear_sublevel(s, e, xs[i], sign * ys[i], sign * slope, sign * level, out);
  }
  if (hi > xs.back()) {
    if (!f.right_slope()) {
      throw DomainError("sublevel_set: window right of data");
    }
    linear_sublevel(std::max(lo, xs.back()), hi, xs.back(), sign * ys.back(),
                    sign * *f.right_slope(), sign * level, out);
  }
  return IntervalUnion(std::move(out));
}

}  // namespace

IntervalUnion sublevel_set(const PiecewiseLinear& f, double level, double lo,
                           double hi) {
  return sublevel_impl(f, 1.0, level, lo, hi);
}

IntervalUnion superlevel_set(const PiecewiseLinear& f, double level,
                             double lo, double hi) {
  return sublevel_impl(f, -1.0, level, lo, hi);
}

double sup_distance(const PiecewiseLinear& a, const PiecewiseLinear& b,
                    double lo, double hi) {
  double d = std::max(std::abs(a(lo) - b(lo)), std::abs(a(hi) - b(hi)));
  for (double x : merged_breakpoints(a, b)) {
    if (x > lo && x < hi) d = std::max(d, std::abs(a(x) - b(x)));
  }
  return d;
}

}  // namespace freezeflow
