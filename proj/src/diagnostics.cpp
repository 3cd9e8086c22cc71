#include "freezeflow/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freezeflow/errors.hpp"
#include "freezeflow/parallel.hpp"

namespace freezeflow {

namespace {

CheckReport make_report(std::string name, double measured, double bound,
                        std::string details) {
  CheckReport r;
  r.name = std::move(name);
  r.measured = measured;
  r.bound = bound;
  r.passed = measured <= bound;
  r.details = std::move(details);
  return r;
}

double data_span(const ProblemSpec& spec, double lo, double hi) {
  const auto [vl, vh] = spec.v0.range_on(lo, hi);
  const auto [wl, wh] = spec.w0.range_on(lo, hi);
  return std::max(1.0, std::max(vh, wh) - std::min(vl, wl));
}

void require_segment(const SolutionField& field, const char* what) {
  if (!field.spec().domain.is_segment()) {
    throw DomainError(std::string(what) + " needs a segment domain");
  }
}

// f <= g on the domain, tails included on the whole line.
bool ordered(const PiecewiseLinear& f, const PiecewiseLinear& g,
             const Domain& dom) {
  for (double x : merged_breakpoints(f, g)) {
    if (dom.is_segment() && !dom.contains(x)) continue;
    const double d = g(x) - f(x);
    if (d < -1e-12 * (1.0 + std::abs(f(x)))) return false;
  }
  if (dom.is_segment()) {
    for (double x : {dom.a1, dom.a2}) {
      if (g(x) - f(x) < -1e-12 * (1.0 + std::abs(f(x)))) return false;
    }
    return true;
  }
  return *g.left_slope() <= *f.left_slope() &&
         *g.right_slope() >= *f.right_slope();
}

std::vector<double> sorted_copy(std::span<const double> xs) {
  std::vector<double> out(xs.begin(), xs.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::vector<SamplePoint> sample_window(const Window& window, std::size_t nx,
                                       std::size_t nt) {
  std::vector<SamplePoint> out;
  out.reserve(nx * nt);
  for (double t : linspace(window.t0, window.t1, nt)) {
    for (double x : linspace(window.x0, window.x1, nx)) out.push_back({x, t});
  }
  return out;
}

std::pair<CheckReport, CheckReport> check_momentum_energy(
    const SolutionField& field, std::span<const double> times,
    std::size_t quadrature_n, double bound) {
  require_segment(field, "momentum/energy check");
  if (quadrature_n == 0 || times.empty()) {
    throw InvalidProblem("momentum/energy check needs nodes and times");
  }
  const auto& dom = field.spec().domain;
  const double h = (dom.a2 - dom.a1) / static_cast<double>(quadrature_n);
  const std::size_t nt = times.size();
  std::vector<double> mom(nt * quadrature_n), en(nt * quadrature_n);
  parallel_for(nt * quadrature_n, [&](std::size_t k) {
    const double x =
        dom.a1 + (static_cast<double>(k % quadrature_n) + 0.5) * h;
    const double t = times[k / quadrature_n];
    const double v = field.v(x, t), w = field.w(x, t);
    const double mu = v + w, sigma = v - w;
    mom[k] = mu * h;
    en[k] = (mu * mu + sigma * sigma) * h;
  });
  std::vector<double> m(nt, 0.0), e(nt, 0.0);
  for (std::size_t k = 0; k < nt * quadrature_n; ++k) {
    m[k / quadrature_n] += mom[k];
    e[k / quadrature_n] += en[k];
  }
  double dm = 0.0, de = 0.0;
  for (std::size_t i = 0; i < nt; ++i) {
    dm = std::max(dm, std::abs(m[i] - m[0]));
    de = std::max(de, std::abs(e[i] - e[0]));
  }
  const double lam = field.spec().lipschitz;
  const double b =
      bound > 0.0 ? bound
                  : lam * lam * 2.0 / static_cast<double>(quadrature_n);
  std::ostringstream dmo, deo;
  dmo << "int mu dx = " << fmt(m[0]) << " at t=" << fmt(times[0]) << "; "
      << nt << " times, n=" << quadrature_n;
  deo << "int (mu^2+sigma^2) dx = " << fmt(e[0]) << " at t=" << fmt(times[0])
      << "; " << nt << " times, n=" << quadrature_n;
  return {make_report("momentum", dm, b, dmo.str()),
          make_report("energy", de, b, deo.str())};
}

CheckReport check_occupation(const SolutionField& field,
                             std::span<const double> b_values,
                             std::span<const double> times,
                             const Window& window, double bound) {
  const auto& dom = field.spec().domain;
  const auto bs = sorted_copy(b_values);
  if (bs.empty() || times.empty()) {
    throw InvalidProblem("occupation check needs levels and times");
  }
  if (!dom.is_segment() && bs.size() < 2) {
    throw InvalidProblem("whole-line occupation check needs two levels");
  }
  const std::size_t nsets = dom.is_segment() ? bs.size() : bs.size() - 1;
  const double len = dom.is_segment() ? dom.a2 - dom.a1 : 0.0;
  // sum = D(v, B) + D(w, B); diff = D(v, B) - D(w, B), reported only.
  std::vector<double> sum(nsets * times.size()), diff(sum.size());
  parallel_for(sum.size(), [&](std::size_t k) {
    const std::size_t i = k % nsets;
    const double t = times[k / nsets];
    double dv, dw;
    if (dom.is_segment()) {
      dv = field.sublevel_set(bs[i], t).measure();
      dw = len - field.superlevel_set(bs[i], t).measure();
    } else {
      dv = field.sublevel_set(bs[i + 1], t)
               .minus(field.sublevel_set(bs[i], t))
               .measure();
      dw = field.superlevel_set(bs[i], t)
               .minus(field.superlevel_set(bs[i + 1], t))
               .measure();
    }
    sum[k] = dv + dw;
    diff[k] = dv - dw;
  });
  // Sets whose measure is infinite at the first time stay infinite; they
  // carry no information and are skipped.
  double dev = 0.0, dev_diff = 0.0;
  std::size_t skipped = 0;
  bool broke = false;
  for (std::size_t i = 0; i < nsets; ++i) {
    if (!std::isfinite(sum[i])) {
      ++skipped;
      continue;
    }
    for (std::size_t k = i; k < sum.size(); k += nsets) {
      if (!std::isfinite(sum[k])) {
        broke = true;
        continue;
      }
      dev = std::max(dev, std::abs(sum[k] - sum[i]));
      dev_diff = std::max(dev_diff, std::abs(diff[k] - diff[i]));
    }
  }
  const double b = bound > 0.0
                       ? bound
                       : 2.0 * field.tolerance() *
                             std::max(1.0, window.width());
  std::ostringstream os;
  os << (dom.is_segment() ? "B=(-inf,b]" : "B=bands between levels") << ", "
     << nsets - skipped << " sets x " << times.size()
     << " times; D(v,B)-D(w,B) varies by " << fmt(dev_diff);
  if (skipped > 0) os << "; " << skipped << " infinite set(s) skipped";
  if (broke) {
    os << "; a finite occupation measure became infinite";
    return make_report("occupation", kInf, b, os.str());
  }
  if (skipped == nsets) {
    os << "; nothing to compare";
    return make_report("occupation", 0.0, b, os.str());
  }
  return make_report("occupation", dev, b, os.str());
}

CheckReport check_total_variation(const SolutionField& field,
                                  std::span<const double> times,
                                  const Window& window, std::size_t samples) {
  const auto ts = sorted_copy(times);
  if (ts.empty() || samples < 2) {
    throw InvalidProblem("total variation check needs times and samples");
  }
  const bool seg = field.spec().domain.is_segment();
  const double lam = field.spec().lipschitz;
  struct Row {
    double lo, hi, tv_v, tv_w;
  };
  std::vector<Row> rows;
  for (double t : ts) {
    const double shrink = seg ? 0.0 : t - ts.front();
    const double lo = window.x0 + shrink, hi = window.x1 - shrink;
    if (!(hi > lo)) break;
    rows.push_back({lo, hi, 0.0, 0.0});
  }
  if (rows.size() < 2) {
    throw InvalidProblem("total variation cone closes before two times");
  }
  std::vector<double> v(rows.size() * samples), w(v.size());
  parallel_for(v.size(), [&](std::size_t k) {
    const Row& r = rows[k / samples];
    const double x =
        r.lo + (r.hi - r.lo) * static_cast<double>(k % samples) /
                   static_cast<double>(samples - 1);
    const double t = ts[k / samples];
    v[k] = field.v(x, t);
    w[k] = field.w(x, t);
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 1; j < samples; ++j) {
      const std::size_t k = i * samples + j;
      rows[i].tv_v += std::abs(v[k] - v[k - 1]);
      rows[i].tv_w += std::abs(w[k] - w[k - 1]);
    }
  }
  double worst = 0.0;
  std::ostringstream os;
  os << (seg ? "fixed window" : "cone windows") << "; TV(v), TV(w) at t=";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << (i ? ", " : "") << fmt(ts[i]) << ": " << fmt(rows[i].tv_v) << "/"
       << fmt(rows[i].tv_w);
    if (i == 0) continue;
    worst = std::max({worst, rows[i].tv_v - rows[i - 1].tv_v,
                      rows[i].tv_w - rows[i - 1].tv_w});
  }
  // Windows only shrink, so the first spacing is the coarsest.
  const double spacing =
      (rows[0].hi - rows[0].lo) / static_cast<double>(samples - 1);
  double bound = 2.0 * lam * spacing;
  if (seg) {
    // Not a theorem on a segment: reported with an infinite bound.
    os << "; segment case, slack " << fmt(bound) << " not asserted";
    bound = kInf;
  }
  return make_report("total_variation", worst, bound, os.str());
}

CheckReport check_eventual_freeze(const SolutionField& field,
                                  std::span<const double> time_factors,
                                  std::size_t samples, double bound) {
  require_segment(field, "eventual freezing check");
  const auto& dom = field.spec().domain;
  std::vector<double> factors(time_factors.begin(), time_factors.end());
  if (factors.empty()) factors = {1.0, 1.25, 1.5};
  std::sort(factors.begin(), factors.end());
  if (factors.front() < 1.0) {
    throw InvalidProblem("eventual freezing applies from t = 2 (a2 - a1)");
  }
  const double base = 2.0 * (dom.a2 - dom.a1);
  const auto xs = linspace(dom.a1, dom.a2, std::max<std::size_t>(samples, 2));
  const std::size_t n = xs.size();
  std::vector<double> v(n * factors.size()), w(v.size());
  parallel_for(v.size(), [&](std::size_t k) {
    const double t = base * factors[k / n];
    v[k] = field.v(xs[k % n], t);
    w[k] = field.w(xs[k % n], t);
  });
  double gap = 0.0, drift = 0.0, drop = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    gap = std::max(gap, std::abs(v[k] - w[k]));
    drift = std::max(drift, std::abs(v[k] - v[k % n]));
    if (k % n > 0) drop = std::max(drop, v[k - 1] - v[k]);
  }
  const double b = bound > 0.0 ? bound
                               : 2.0 * field.tolerance() *
                                     data_span(field.spec(), dom.a1, dom.a2);
  std::ostringstream os;
  os << "t from " << fmt(base * factors.front()) << " to "
     << fmt(base * factors.back()) << ": max |v-w| " << fmt(gap)
     << ", max time drift " << fmt(drift) << ", max decrease " << fmt(drop);
  return make_report("eventual_freeze", std::max({gap, drift, drop}), b,
                     os.str());
}

CheckReport check_mirror_identity(const SolutionField& field,
                                  std::size_t samples, double bound) {
  require_segment(field, "mirror identity check");
  const auto& spec = field.spec();
  const double a = spec.domain.a2;
  if (std::abs(spec.domain.a1 + a) > 1e-12 * (1.0 + a)) {
    throw InvalidProblem("mirror identity needs a segment [-a, a]");
  }
  for (double x : merged_breakpoints(spec.v0, spec.w0)) {
    if (!spec.domain.contains(x)) continue;
    if (std::abs(spec.v0(x) - spec.w0(x)) > 1e-12 * (1.0 + std::abs(x))) {
      throw InvalidProblem("mirror identity needs sigma0 = 0");
    }
  }
  for (std::size_t i = 0; i < spec.v0.segment_count(); ++i) {
    if (spec.v0.segment_slope(i) > 0.0) {
      throw InvalidProblem("mirror identity needs mu0 non-increasing");
    }
  }
  const auto xs = linspace(-a, a, std::max<std::size_t>(samples, 2));
  std::vector<double> err(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    const double mu = field.v(xs[i], 4.0 * a) + field.w(xs[i], 4.0 * a);
    const double mu0 = spec.v0(-xs[i]) + spec.w0(-xs[i]);
    err[i] = std::abs(mu - mu0);
  });
  const double worst = *std::max_element(err.begin(), err.end());
  return make_report("mirror_identity", worst, bound,
                     "mu(x, 4a) against mu(-x, 0) at " +
                         std::to_string(xs.size()) + " points, a=" + fmt(a));
}

CheckReport check_monotone_dependence(const ProblemSpec& a,
                                      const ProblemSpec& b,
                                      std::span<const SamplePoint> points,
                                      SolverOptions opts) {
  const auto& da = a.domain;
  const auto& db = b.domain;
  if (da.kind != db.kind || da.a1 != db.a1 || da.a2 != db.a2) {
    throw InvalidProblem("monotone dependence needs a common domain");
  }
  if (!ordered(a.v0, b.v0, da) || !ordered(a.w0, b.w0, da)) {
    throw InvalidProblem("monotone dependence needs v0A <= v0B, w0A <= w0B");
  }
  const SolutionField fa(a, opts), fb(b, opts);
  std::vector<double> viol(points.size()), mag(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [x, t] = points[i];
    const double va = fa.v(x, t), vb = fb.v(x, t);
    const double wa = fa.w(x, t), wb = fb.w(x, t);
    viol[i] = std::max(va - vb, wa - wb);
    mag[i] = std::max({std::abs(va), std::abs(vb), std::abs(wa),
                       std::abs(wb)});
  });
  double worst = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, viol[i]);
    scale = std::max(scale, 2.0 * mag[i]);
  }
  return make_report("monotone_dependence", worst,
                     2.0 * opts.tolerance * scale,
                     "largest excess of A over B at " +
                         std::to_string(points.size()) + " points");
}

CheckReport check_lipschitz_map(const ProblemSpec& a, const ProblemSpec& b,
                                const Window& window,
                                std::span<const SamplePoint> points,
                                double slack, SolverOptions opts) {
  const auto& da = a.domain;
  const auto& db = b.domain;
  if (da.kind != db.kind || da.a1 != db.a1 || da.a2 != db.a2) {
    throw InvalidProblem("Lipschitz check needs a common domain");
  }
  double lo = da.a1, hi = da.a2;
  if (!da.is_segment()) {
    const double c = 0.5 * (window.x0 + window.x1);
    const double r = 0.5 * window.width();
    if (!(r > 0.0)) throw InvalidProblem("Lipschitz check needs a window");
    for (const auto& p : points) {
      if (p.x < c - r || p.x > c + r || p.t < 0.0 || p.t >= r) {
        throw DomainError("sample (" + fmt(p.x) + ", " + fmt(p.t) +
                          ") outside [c-r, c+r] x [0, r)");
      }
    }
    lo = c - 2.0 * r;
    hi = c + 2.0 * r;
  }
  const double dist = std::max(sup_distance(a.v0, b.v0, lo, hi),
                               sup_distance(a.w0, b.w0, lo, hi));
  const SolutionField fa(a, opts), fb(b, opts);
  std::vector<double> diff(points.size()), mag(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    const auto [x, t] = points[i];
    const double va = fa.v(x, t), vb = fb.v(x, t);
    const double wa = fa.w(x, t), wb = fb.w(x, t);
    diff[i] = std::max(std::abs(va - vb), std::abs(wa - wb));
    mag[i] = std::max({std::abs(va), std::abs(vb), std::abs(wa),
                       std::abs(wb)});
  });
  double worst = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    worst = std::max(worst, diff[i]);
    scale = std::max(scale, 2.0 * mag[i]);
  }
  const double s = slack > 0.0 ? slack : 4.0 * opts.tolerance * scale;
  return make_report("lipschitz_map", worst, dist + s,
                     "data distance " + fmt(dist) + " on [" + fmt(lo) + ", " +
                         fmt(hi) + "]");
}

namespace {

ProblemSpec shifted(const ProblemSpec& s, double dv, double dw) {
  auto add = [](const PiecewiseLinear& f, double c) {
    std::vector<double> ys(f.values().begin(), f.values().end());
    for (auto& y : ys) y += c;
    return PiecewiseLinear(
        std::vector<double>(f.breakpoints().begin(), f.breakpoints().end()),
        std::move(ys), f.left_slope(), f.right_slope());
  };
  // The shift must keep w <= v and, on a segment, v = w at the ends.
  return ProblemSpec(s.domain, add(s.v0, dv), add(s.w0, dw));
}

}  // namespace

std::vector<CheckReport> run_default_checks(const SolutionField& field,
                                            const Window& window) {
  const auto& spec = field.spec();
  const bool seg = spec.domain.is_segment();
  Window win = window;
  if (seg) {
    const double len = spec.domain.a2 - spec.domain.a1;
    win = {spec.domain.a1, spec.domain.a2, 0.0, 2.0 * len};
  }
  const double lo = win.x0, hi = win.x1;
  const auto [vl, vh] = spec.v0.range_on(lo, hi);
  const auto [wl, wh] = spec.w0.range_on(lo, hi);
  const auto levels = linspace(std::min(vl, wl), std::max(vh, wh), 9);
  std::vector<CheckReport> out;
  if (seg) {
    const double len = spec.domain.a2 - spec.domain.a1;
    const std::vector<double> times{0.0, 0.25 * len, 0.5 * len, len,
                                    2.0 * len};
    auto [m, e] = check_momentum_energy(field, times);
    out.push_back(std::move(m));
    out.push_back(std::move(e));
    out.push_back(check_occupation(field, levels, times, win));
    out.push_back(check_total_variation(field, times, win, 201));
    out.push_back(check_eventual_freeze(field));
  } else {
    const double r = 0.5 * win.width();
    const std::vector<double> times{0.0, 0.1 * r, 0.25 * r, 0.5 * r};
    out.push_back(check_occupation(field, levels, times, win));
    out.push_back(check_total_variation(field, times, win, 401));
  }
  // Monotone dependence and Lipschitz continuity against a shifted copy.
  // On a segment only a common shift keeps v = w at the ends.
  const double shift = 0.01 * std::max(1.0, std::max(vh, wh) - std::min(vl, wl));
  const ProblemSpec up = shifted(spec, shift, shift);
  std::vector<SamplePoint> pts;
  if (seg) {
    pts = sample_window(win, 21, 11);
  } else {
    const double r = 0.5 * win.width();
    pts = sample_window({win.x0, win.x1, 0.0, 0.9 * r}, 21, 11);
  }
  out.push_back(check_monotone_dependence(spec, up, pts, field.options()));
  out.push_back(
      check_lipschitz_map(spec, up, win, pts, 0.0, field.options()));
  std::sort(out.begin(), out.end(),
            [](const CheckReport& a, const CheckReport& b) {
              return a.name < b.name;
            });
  return out;
}

}  // namespace freezeflow
