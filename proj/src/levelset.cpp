#include "freezeflow/levelset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "freezeflow/errors.hpp"
#include "freezeflow/parallel.hpp"

namespace freezeflow {

SolutionField::SolutionField(ProblemSpec spec, SolverOptions opts)
    : spec_(std::move(spec)), opts_(opts) {
  if (!(opts_.tolerance > 0.0) || opts_.max_iterations < 1) {
    throw InvalidProblem("solver tolerance and iteration cap must be positive");
  }
  const auto rep = validate(spec_);
  if (rep.has_errors()) throw ConstraintViolation(rep.summary());
  segment_ = spec_.domain.is_segment();
  a1_ = spec_.domain.a1;
  a2_ = spec_.domain.a2;
  knots_ = merged_breakpoints(spec_.v0, spec_.w0);
  if (segment_) {
    std::erase_if(knots_, [&](double x) { return x < a1_ || x > a2_; });
    knots_.push_back(a1_);
    knots_.push_back(a2_);
    std::sort(knots_.begin(), knots_.end());
    knots_.erase(std::unique(knots_.begin(), knots_.end()), knots_.end());
  }
  double lo = kInf, hi = -kInf;
  for (double x : knots_) {
    vk_.push_back(spec_.v0(x));
    wk_.push_back(spec_.w0(x));
    lo = std::min({lo, vk_.back(), wk_.back()});
    hi = std::max({hi, vk_.back(), wk_.back()});
  }
  zone_epsilon_ = 10.0 * opts_.tolerance * std::max(1.0, hi - lo);
}

namespace {

double representative(double s, double e) {
  if (std::isfinite(s) && std::isfinite(e)) return 0.5 * (s + e);
  if (std::isfinite(e)) return e - 1.0;
  if (std::isfinite(s)) return s + 1.0;
  return 0.0;
}

// Emits the constant pieces of blue - red on [s, e] where v and w are
// linear (anchored at xa), in the requested order.
template <class Fn>
bool emit_linear(double b, double s, double e, double xa, double va,
                 double sv, double wa, double sw, bool forward, Fn& fn) {
  double cuts[4];
  int n = 0;
  cuts[n++] = s;
  double c1 = e, c2 = e;
  if (sv != 0.0) {
    const double c = xa + (b - va) / sv;
    if (c > s && c < e) c1 = c;
  }
  if (sw != 0.0) {
    const double c = xa + (b - wa) / sw;
    if (c > s && c < e) c2 = c;
  }
  if (c1 > c2) std::swap(c1, c2);
  if (c1 < e) cuts[n++] = c1;
  if (c2 < e && c2 != c1) cuts[n++] = c2;
  cuts[n++] = e;
  auto piece = [&](int k) {
    const double p = cuts[k], q = cuts[k + 1];
    const double r = representative(p, q);
    const double v = va + sv * (r - xa);
    const double w = wa + sw * (r - xa);
    return SolutionField::Piece{p, q, (v <= b ? 1 : 0) - (w >= b ? 1 : 0)};
  };
  if (forward) {
    for (int k = 0; k + 1 < n; ++k) {
      if (!(cuts[k + 1] > cuts[k])) continue;
      if (!fn(piece(k))) return false;
    }
  } else {
    for (int k = n - 2; k >= 0; --k) {
      if (!(cuts[k + 1] > cuts[k])) continue;
      if (!fn(piece(k))) return false;
    }
  }
  return true;
}

}  // namespace

template <class Fn>
void SolutionField::for_each_piece(double b, double lo, double hi,
                                   bool forward, Fn&& fn) const {
  if (!(hi > lo)) return;
  const long n = static_cast<long>(knots_.size());
  // Region r: -1 is (-inf, K0], r in [0, n-2] is [K_r, K_r+1], n-1 is
  // [K_n-1, inf).
  auto region_of = [&](double x) -> long {
    if (x < knots_.front()) return -1;
    if (x >= knots_.back()) return n - 1;
    return static_cast<long>(
               std::upper_bound(knots_.begin(), knots_.end(), x) -
               knots_.begin()) -
           1;
  };
  auto emit_region = [&](long r) -> bool {
    const double rs = r < 0 ? -kInf : knots_[static_cast<std::size_t>(r)];
    const double re =
        r >= n - 1 ? kInf : knots_[static_cast<std::size_t>(r + 1)];
    const double s = std::max(rs, lo);
    const double e = std::min(re, hi);
    if (!(e > s)) return true;
    if (segment_ && r < 0) return fn(Piece{s, e, 1});
    if (segment_ && r >= n - 1) return fn(Piece{s, e, -1});
    if (r < 0) {
      return emit_linear(b, s, e, knots_.front(), vk_.front(),
                         *spec_.v0.left_slope(), wk_.front(),
                         *spec_.w0.left_slope(), forward, fn);
    }
    if (r >= n - 1) {
      return emit_linear(b, s, e, knots_.back(), vk_.back(),
                         *spec_.v0.right_slope(), wk_.back(),
                         *spec_.w0.right_slope(), forward, fn);
    }
    const auto i = static_cast<std::size_t>(r);
    const double dx = knots_[i + 1] - knots_[i];
    return emit_linear(b, s, e, knots_[i], vk_[i], (vk_[i + 1] - vk_[i]) / dx,
                       wk_[i], (wk_[i + 1] - wk_[i]) / dx, forward, fn);
  };
  if (forward) {
    for (long r = region_of(lo); r <= n - 1; ++r) {
      if (r >= 0 && knots_[static_cast<std::size_t>(r)] >= hi) break;
      if (!emit_region(r)) return;
    }
  } else {
    for (long r = region_of(hi); r >= -1; --r) {
      if (r < n - 1 && knots_[static_cast<std::size_t>(r + 1)] <= lo) break;
      // A point exactly on a knot belongs to the region on its right.
      if (r >= 0 && knots_[static_cast<std::size_t>(r)] >= hi) continue;
      if (!emit_region(r)) return;
    }
  }
}

double SolutionField::slack(double x, double t) const {
  return 1e-12 * (1.0 + std::abs(x) + t);
}

bool SolutionField::survives_v(double b, double x0, double t) const {
  const double sl = slack(x0, t);
  double h = 0.0;
  bool ok = true;
  for_each_piece(b, x0, x0 + 2.0 * t, true, [&](const Piece& p) {
    h += p.f * (p.e - p.s);
    if (h < -sl) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool SolutionField::survives_w(double b, double x0, double t) const {
  const double sl = slack(x0, t);
  double g = 0.0;
  bool ok = true;
  for_each_piece(b, x0 - 2.0 * t, x0, false, [&](const Piece& p) {
    g += p.f * (p.e - p.s);
    if (g > sl) {
      ok = false;
      return false;
    }
    return true;
  });
  return ok;
}

bool SolutionField::in_sublevel(double b, double z, double t) const {
  if (segment_ && (z < a1_ || z > a2_)) return false;
  if (t == 0.0) return spec_.v0(z) <= b;
  const double x0 = z - t;
  const bool blue = (segment_ && x0 <= a1_) || spec_.v0(x0) <= b;
  return blue && survives_v(b, x0, t);
}

bool SolutionField::in_superlevel(double b, double z, double t) const {
  if (segment_ && (z < a1_ || z > a2_)) return false;
  if (t == 0.0) return spec_.w0(z) >= b;
  const double x0 = z + t;
  const bool red = (segment_ && x0 >= a2_) || spec_.w0(x0) >= b;
  return red && survives_w(b, x0, t);
}

void SolutionField::check_query(double x, double t) const {
  if (!std::isfinite(x) || !std::isfinite(t) || t < 0.0) {
    std::ostringstream os;
    os << "query (" << x << ", " << t << ") needs finite x and t >= 0";
    throw DomainError(os.str());
  }
  if (segment_ && (x < a1_ || x > a2_)) {
    std::ostringstream os;
    os << "x=" << x << " outside [" << a1_ << ", " << a2_ << "]";
    throw DomainError(os.str());
  }
}

std::pair<double, double> SolutionField::window_range(double x,
                                                      double t) const {
  double lo = x - t, hi = x + t;
  if (segment_) {
    lo = std::max(lo, a1_);
    hi = std::min(hi, a2_);
  }
  const auto [vl, vh] = spec_.v0.range_on(lo, hi);
  const auto [wl, wh] = spec_.w0.range_on(lo, hi);
  return {std::min(vl, wl), std::max(vh, wh)};
}

double SolutionField::v(double x, double t) const {
  check_query(x, t);
  if (t == 0.0) return spec_.v0(x);
  // At the left endpoint the formula degenerates (every level is reached
  // through the boundary feeder); the boundary condition v = w applies.
  if (segment_ && x == a1_) return w(x, t);
  const auto [rmin, rmax] = window_range(x, t);
  const double span = std::max(1.0, rmax - rmin);
  double lo = rmin;
  const double x0 = x - t;
  if (!(segment_ && x0 < a1_)) {
    // A characteristic that never froze carries v0(x - t) unchanged.
    const double b0 = spec_.v0(x0);
    if (in_sublevel(b0, x, t)) return b0;
    lo = b0;
  } else {
    for (double step = span; in_sublevel(lo, x, t) && step < 1e300;
         step *= 2.0) {
      lo -= step;
    }
  }
  double hi = rmax;
  for (double step = span; !in_sublevel(hi, x, t) && step < 1e300;
       step *= 2.0) {
    hi += step;
  }
  const double tol = opts_.tolerance * span;
  for (int i = 0; i < opts_.max_iterations && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (in_sublevel(mid, x, t)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double SolutionField::w(double x, double t) const {
  check_query(x, t);
  if (t == 0.0) return spec_.w0(x);
  if (segment_ && x == a2_) return v(x, t);
  const auto [rmin, rmax] = window_range(x, t);
  const double span = std::max(1.0, rmax - rmin);
  double hi = rmax;
  const double x0 = x + t;
  if (!(segment_ && x0 > a2_)) {
    const double c0 = spec_.w0(x0);
    if (in_superlevel(c0, x, t)) return c0;
    hi = c0;
  } else {
    for (double step = span; in_superlevel(hi, x, t) && step < 1e300;
         step *= 2.0) {
      hi += step;
    }
  }
  double lo = rmin;
  for (double step = span; !in_superlevel(lo, x, t) && step < 1e300;
       step *= 2.0) {
    lo -= step;
  }
  const double tol = opts_.tolerance * span;
  for (int i = 0; i < opts_.max_iterations && hi - lo > tol; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (in_superlevel(mid, x, t)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

bool SolutionField::frozen_at(double x, double t) const {
  check_query(x, t);
  const double eps = zone_epsilon_;
  if (t == 0.0 || (segment_ && (x == a1_ || x == a2_))) {
    return v(x, t) - w(x, t) <= eps;
  }
  // v(x, t) <= b exactly when x is in A(v, b, t), and w >= b when x is in
  // A(w, b, t).
  const double xr = x + t;
  if (!(segment_ && xr > a2_)) {
    const double c0 = spec_.w0(xr);
    if (in_superlevel(c0, x, t)) return in_sublevel(c0 + eps, x, t);
  }
  const double xl = x - t;
  if (!(segment_ && xl < a1_)) {
    const double b0 = spec_.v0(xl);
    if (in_sublevel(b0, x, t)) return in_superlevel(b0 - eps, x, t);
  }
  return in_superlevel(v(x, t) - eps, x, t);
}

double SolutionField::alpha_v(double b, double x) const {
  double h = 0.0;
  double result = kInf;
  for_each_piece(b, x, kInf, true, [&](const Piece& p) {
    if (p.f < 0) {
      const double hit = h / -p.f;
      if (hit < p.e - p.s) {
        result = p.s + hit;
        return false;
      }
    }
    if (p.f != 0) h += p.f * (p.e - p.s);
    return std::isfinite(h);
  });
  return result;
}

double SolutionField::alpha_w(double b, double x) const {
  double g = 0.0;
  double result = -kInf;
  for_each_piece(b, -kInf, x, false, [&](const Piece& p) {
    if (p.f > 0) {
      const double hit = -g / p.f;
      if (hit < p.e - p.s) {
        result = p.e - hit;
        return false;
      }
    }
    if (p.f != 0) g += p.f * (p.e - p.s);
    return std::isfinite(g);
  });
  return result;
}

namespace {

// Largest point of [lo, hi] satisfying a predicate that holds at lo, fails
// at hi and is monotone in between, to floating-point resolution.
template <class Pred>
double last_true(double lo, double hi, Pred&& pred) {
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (pred(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

IntervalUnion SolutionField::sublevel_set(double b, double t) const {
  if (!(t >= 0.0)) throw DomainError("sublevel_set needs t >= 0");
  const double lo = segment_ ? a1_ : -kInf;
  const double hi = segment_ ? a2_ : kInf;
  auto blue = freezeflow::sublevel_set(spec_.v0, b, lo, hi);
  if (t == 0.0) return blue;
  if (segment_) blue = blue.unite(IntervalUnion::single(-kInf, a1_));
  // Within one blue interval the survival margin alpha(x) - x decreases, so
  // the survivors form a prefix [p, q*].
  std::vector<Interval> out;
  for (const auto& iv : blue.intervals()) {
    const double p = iv.lo, q = iv.hi;
    double qs = q;
    if (std::isfinite(q) && !survives_v(b, q, t)) {
      const double a = std::max(p, q - 2.0 * t);
      if (!survives_v(b, a, t)) continue;
      qs = last_true(a, q, [&](double x0) { return survives_v(b, x0, t); });
    }
    out.push_back({p + t, qs + t});
  }
  return IntervalUnion(std::move(out)).intersect(Interval{lo, hi});
}

IntervalUnion SolutionField::superlevel_set(double b, double t) const {
  if (!(t >= 0.0)) throw DomainError("superlevel_set needs t >= 0");
  const double lo = segment_ ? a1_ : -kInf;
  const double hi = segment_ ? a2_ : kInf;
  auto red = freezeflow::superlevel_set(spec_.w0, b, lo, hi);
  if (t == 0.0) return red;
  if (segment_) red = red.unite(IntervalUnion::single(a2_, kInf));
  std::vector<Interval> out;
  for (const auto& iv : red.intervals()) {
    const double p = iv.lo, q = iv.hi;
    double ps = p;
    if (std::isfinite(p) && !survives_w(b, p, t)) {
      const double a = std::min(q, p + 2.0 * t);
      if (!survives_w(b, a, t)) continue;
      // Mirror of last_true: smallest surviving point of [p, a].
      ps = -last_true(-a, -p, [&](double m) { return survives_w(b, -m, t); });
    }
    out.push_back({ps - t, q - t});
  }
  return IntervalUnion(std::move(out)).intersect(Interval{lo, hi});
}

double alpha_v(const ProblemSpec& spec, double b, double x) {
  return SolutionField(spec).alpha_v(b, x);
}

double alpha_w(const ProblemSpec& spec, double b, double x) {
  return SolutionField(spec).alpha_w(b, x);
}

IntervalUnion sublevel_set(const ProblemSpec& spec, double b, double t) {
  return SolutionField(spec).sublevel_set(b, t);
}

IntervalUnion superlevel_set(const ProblemSpec& spec, double b, double t) {
  return SolutionField(spec).superlevel_set(b, t);
}

ProblemSpec localize(const ProblemSpec& spec, double extent) {
  if (spec.domain.is_segment()) {
    throw DomainError("localize applies to whole-line data only");
  }
  if (!(extent > 0.0)) throw InvalidProblem("localize needs extent > 0");
  const double lam = spec.lipschitz;
  auto cut = [&](const PiecewiseLinear& f, double sign) {
    const auto r = f.restricted(-extent, extent);
    return PiecewiseLinear(
        std::vector<double>(r.breakpoints().begin(), r.breakpoints().end()),
        std::vector<double>(r.values().begin(), r.values().end()),
        -sign * lam, sign * lam);
  };
  return ProblemSpec(spec.domain, cut(spec.v0, 1.0), cut(spec.w0, -1.0));
}

GridValues eval_grid(const SolutionField& field, std::span<const double> xs,
                     std::span<const double> ts) {
  GridValues g;
  g.xs.assign(xs.begin(), xs.end());
  g.ts.assign(ts.begin(), ts.end());
  const std::size_t nx = xs.size();
  g.v.assign(nx * ts.size(), 0.0);
  g.w.assign(nx * ts.size(), 0.0);
  parallel_for(g.v.size(), [&](std::size_t k) {
    const double x = g.xs[k % nx];
    const double t = g.ts[k / nx];
    g.v[k] = field.v(x, t);
    g.w[k] = field.w(x, t);
  });
  return g;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = i + 1 == n ? hi
                        : lo + (hi - lo) * static_cast<double>(i) /
                                   static_cast<double>(n - 1);
  }
  return out;
}

}  // namespace freezeflow
