// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "freezeflow/characteristics.hpp"
#include "freezeflow/diagnostics.hpp"
#include "freezeflow/errors.hpp"
#include "freezeflow/fixtures.hpp"
#include "freezeflow/geometry.hpp"
#include "freezeflow/levelset.hpp"
#include "freezeflow/oracle.hpp"
#include "freezeflow/pinned_balls.hpp"

using namespace freezeflow;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(const char* id, const char* title,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (!o.pass) ++failures;
  std::printf("%s [%s] %s: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", id,
              title, o.detail.c_str(), secs);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t)
      .count();
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

// Closed form for v0 = |x|, w0 = x/2.
double abs_half_v(double x, double t) {
  if (x <= 0.6 * t) return t - x;
  if (x <= 3.0 * t) return 2.0 * x / 3.0;
  return x - t;
}
double abs_half_w(double x, double t) {
  if (x <= -t) return 0.5 * (x + t);
  if (x <= 0.6 * t) return 0.25 * (x + t);
  if (x <= 3.0 * t) return 2.0 * x / 3.0;
  return 0.5 * (x + t);
}

bool within_rel(double got, double want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

// Random PL perturbation added to both v0 and w0 (keeps v >= w and, on a
// segment, v = w at the ends).
ProblemSpec perturbed(const ProblemSpec& s, std::mt19937_64& rng, double amp) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double lo = -6.0, hi = 6.0;
  if (s.domain.is_segment()) {
    lo = s.domain.a1;
    hi = s.domain.a2;
  }
  const auto xs = linspace(lo, hi, 9);
  std::vector<double> ys(xs.size());
  for (auto& y : ys) y = amp * u(rng);
  const PiecewiseLinear d(xs, ys, 0.0, 0.0);
  return make_problem(s.domain, linear_combination(1.0, s.v0, 1.0, d),
                      linear_combination(1.0, s.w0, 1.0, d));
}

ProblemSpec random_case(std::uint64_t seed) {
  RandomSpecOptions o;
  o.kind = seed % 2 == 0 ? DomainKind::WholeLine : DomainKind::Segment;
  o.max_breakpoints = 12;
  return random_spec(seed, o);
}

}  // namespace

int main() {
  criterion("1", "closed-form reproduction", [] {
    setenv("FT_THREADS", "1", 1);
    const SolutionField f(get_fixture("abs_half").spec);
    const auto t0 = std::chrono::steady_clock::now();
    const auto xs = linspace(-5.0, 5.0, 201);
    const auto ts = linspace(0.0, 2.0, 101);
    const auto g = eval_grid(f, xs, ts);
    const double secs = seconds_since(t0);
    unsetenv("FT_THREADS");
    double err = 0.0;
    for (std::size_t it = 0; it < ts.size(); ++it) {
      for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        err = std::max({err, std::abs(g.v_at(ix, it) - abs_half_v(xs[ix], ts[it])),
                        std::abs(g.w_at(ix, it) - abs_half_w(xs[ix], ts[it]))});
      }
    }
    return Outcome{err <= 1e-8 && secs <= 10.0,
                   "max error " + num(err) + " (<= 1e-8), " + num(secs) +
                       " s single-threaded (<= 10 s)"};
  });

  criterion("2", "frozen-triangle geometry", [] {
    const SolutionField f(get_fixture("parabolas").spec);
    const auto t0 = std::chrono::steady_clock::now();
    const auto b = extract_boundaries(f, {0.5, 3.5, 0.4, 3.6}, {201, 215});
    const double secs = seconds_since(t0);
    const double s3 = std::sqrt(3.0);
    const double xl = (4.0 - s3) / 2.0, xr = (4.0 + s3) / 2.0;
    const double tip_t = 2.0 + std::sqrt(1.5);
    bool left = false, right = false, tip = false;
    std::ostringstream os;
    for (std::size_t i = 0; i < b.corners.size(); ++i) {
      const auto& c = b.corners[i];
      const auto s = corner_slopes(b, i);
      if (c.kind == CornerKind::Tip) {
        tip = std::hypot(c.x - 2.0, c.t - tip_t) <= 0.02;
        os << "tip (" << num(c.x) << ", " << num(c.t) << ") ";
      } else if (std::abs(c.x - xl) <= 0.01) {
        left = std::abs(c.t - xl) <= 0.01 &&
               within_rel(s.freezing_slope, -1.0, 0.05) &&
               within_rel(s.thawing_slope, 3.0, 0.05);
        os << "left (" << num(c.x) << ", " << num(c.t) << ") slopes "
           << num(s.freezing_slope) << "/" << num(s.thawing_slope) << " ";
      } else if (std::abs(c.x - xr) <= 0.01) {
        right = std::abs(c.t - xl) <= 0.01 &&
                within_rel(s.freezing_slope, 1.0, 0.05) &&
                within_rel(s.thawing_slope, -3.0, 0.05);
        os << "right (" << num(c.x) << ", " << num(c.t) << ") slopes "
           << num(s.freezing_slope) << "/" << num(s.thawing_slope) << " ";
      }
    }
    os << num(secs) << " s (<= 60 s)";
    return Outcome{left && right && tip && secs <= 60.0, os.str()};
  });

  criterion("3", "thaw-to-freeze corner", [] {
    const SolutionField f(get_fixture("thaw_freeze").spec);
    BoundaryOptions opts;
    opts.slope_tol = 0.04;  // two cells: slopes beyond 25 count as unbounded
    const auto b = extract_boundaries(f, {-3.0, 1.0, 0.0, 3.0}, {201, 151}, opts);
    for (std::size_t i = 0; i < b.corners.size(); ++i) {
      const auto& c = b.corners[i];
      if (c.kind != CornerKind::ThawFreeze) continue;
      if (std::hypot(c.x + 2.0, c.t - 2.0) > 0.05) continue;
      const auto s = corner_slopes(b, i);
      const bool ok = std::abs(s.freezing_slope) <= 0.05 &&
                      std::abs(s.thawing_slope) > 20.0 && s.thawing_unbounded;
      return Outcome{ok, "corner (" + num(c.x) + ", " + num(c.t) +
                             "), T_f' " + num(s.freezing_slope) +
                             ", thawing slope " + num(s.thawing_slope) +
                             (s.thawing_unbounded ? " (unbounded)" : "")};
    }
    return Outcome{false, "no thaw-freeze corner near (-2, 2)"};
  });

  criterion("4", "momentum and energy conservation", [] {
    const SolutionField f(get_fixture("tent").spec);
    const std::vector<double> times{0.0, 0.5, 1.0, 2.0, 4.0};
    const auto [m, e] = check_momentum_energy(f, times, 4096, 1e-4);
    return Outcome{m.passed && e.passed, "momentum drift " + num(m.measured) +
                                             ", energy drift " +
                                             num(e.measured) + " (<= 1e-4)"};
  });

  criterion("5", "occupation measure", [] {
    const std::vector<double> times{0.0, 0.5, 1.0, 1.5, 2.0};
    const SolutionField a(get_fixture("abs_half").spec);
    const auto ra = check_occupation(a, linspace(-2.0, 4.0, 20), times,
                                     {-10.0, 10.0, 0.0, 2.0}, 1e-8);
    const SolutionField s(get_fixture("segment_unit").spec);
    const auto rs = check_occupation(s, linspace(-0.6, 1.3, 20), times,
                                     {0.0, 1.0, 0.0, 2.0}, 1e-8);
    return Outcome{ra.passed && rs.passed,
                   "whole line " + num(ra.measured) + ", segment " +
                       num(rs.measured) + " (<= 1e-8)"};
  });

  criterion("6", "eventual freezing", [] {
    const SolutionField s(get_fixture("segment_unit").spec);
    const std::vector<double> factors{1.0, 1.25, 1.5};
    const auto r = check_eventual_freeze(s, factors, 201, 1e-8);
    const SolutionField m(get_fixture("instant_thaw").spec);
    const auto mi = check_mirror_identity(m, 201, 1e-6);
    return Outcome{r.passed && mi.passed,
                   "freeze " + num(r.measured) + " (<= 1e-8), mirror " +
                       num(mi.measured) + " (<= 1e-6)"};
  });

  criterion("7", "oracle equivalence", [] {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto spec = random_case(1000 + seed);
      const SolutionField f(spec);
      double lo = -6.0, hi = 6.0;
      if (spec.domain.is_segment()) {
        lo = spec.domain.a1;
        hi = spec.domain.a2;
      }
      const auto [vl, vh] = spec.v0.range_on(lo, hi);
      const auto [wl, wh] = spec.w0.range_on(lo, hi);
      for (int k = 0; k < 5; ++k) {
        const double b = std::min(vl, wl) + u(rng) * (std::max(vh, wh) -
                                                      std::min(vl, wl));
        const double t = 3.0 * u(rng);
        const auto [blue, red] = oracle_level_sets(spec, b, t);
        worst = std::max(
            {worst,
             symmetric_difference_measure(blue, f.sublevel_set(b, t)),
             symmetric_difference_measure(red, f.superlevel_set(b, t))});
      }
    }
    const double secs = seconds_since(t0);
    return Outcome{worst <= 1e-9 && secs <= 120.0,
                   "max symmetric difference " + num(worst) +
                       " over 1000 (b, t) pairs (<= 1e-9), " + num(secs) +
                       " s (<= 120 s)"};
  });

  criterion("8", "grid-scheme convergence", [] {
    const auto spec = get_fixture("abs_half").spec;
    std::vector<double> errs;
    for (double dx : {1.0 / 64, 1.0 / 128, 1.0 / 256}) {
      const auto r = grid_scheme(spec, dx, 1.0, std::make_pair(-4.0, 4.0));
      double e = 0.0;
      for (std::size_t i = 0; i < r.xs.size(); ++i) {
        e = std::max({e, std::abs(r.v[i] - abs_half_v(r.xs[i], 1.0)),
                      std::abs(r.w[i] - abs_half_w(r.xs[i], 1.0))});
      }
      errs.push_back(e);
    }
    const double r1 = errs[1] / errs[0], r2 = errs[2] / errs[1];
    return Outcome{r1 <= 0.6 && r2 <= 0.6,
                   "errors " + num(errs[0]) + ", " + num(errs[1]) + ", " +
                       num(errs[2]) + "; ratios " + num(r1) + ", " + num(r2) +
                       " (<= 0.6)"};
  });

  criterion("9", "1-Lipschitz solution map", [] {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> amp(0.001, 0.2);
    double worst_excess = -kInf;
    std::size_t failed = 0;
    for (std::uint64_t k = 0; k < 50; ++k) {
      const auto a = random_case(5000 + k);
      const auto b = perturbed(a, rng, amp(rng));
      Window win;
      if (a.domain.is_segment()) {
        const double len = a.domain.a2 - a.domain.a1;
        win = {a.domain.a1, a.domain.a2, 0.0, 2.0 * len};
      } else {
        win = {-3.0, 3.0, 0.0, 3.0};
      }
      auto pts = sample_window(
          a.domain.is_segment() ? win : Window{-3.0, 3.0, 0.0, 2.9}, 21, 11);
      const auto r = check_lipschitz_map(a, b, win, pts, 1e-8);
      worst_excess = std::max(worst_excess, r.measured - (r.bound - 1e-8));
      if (!r.passed) ++failed;
    }
    return Outcome{failed == 0, std::to_string(failed) +
                                    " of 50 pairs exceed sup|data diff| + "
                                    "1e-8; largest excess " +
                                    num(worst_excess)};
  });

  criterion("10", "property suites", [] {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t checks = 0, failed = 0;
    std::string first;
    auto note = [&](bool ok, const std::string& what) {
      ++checks;
      if (!ok) {
        ++failed;
        if (first.empty()) first = what;
      }
    };
    std::vector<std::pair<std::string, ProblemSpec>> cases;
    for (const auto& name : fixture_names()) {
      cases.emplace_back(name, get_fixture(name).spec);
    }
    for (std::uint64_t s = 0; s < 30; ++s) {
      cases.emplace_back("random " + std::to_string(s), random_case(9000 + s));
    }
    std::mt19937_64 rng(10);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& [name, spec] : cases) {
      const SolutionField f(spec);
      const bool seg = spec.domain.is_segment();
      const double lo = seg ? spec.domain.a1 : -4.0;
      const double hi = seg ? spec.domain.a2 : 4.0;
      const double tmax = seg ? 2.0 * (hi - lo) : 3.0;
      const double eps = 4.0 * f.zone_epsilon();
      // Constraint v >= w.
      for (int k = 0; k < 40; ++k) {
        const double x = lo + u(rng) * (hi - lo), t = u(rng) * tmax;
        note(f.v(x, t) >= f.w(x, t) - eps, name + ": v < w");
      }
      // Level sets nested in b.
      const auto [vl, vh] = spec.v0.range_on(lo, hi);
      for (int k = 0; k < 5; ++k) {
        const double t = u(rng) * tmax;
        const double b1 = vl + u(rng) * (vh - vl), b2 = b1 + 0.3 * u(rng);
        note(f.sublevel_set(b1, t).subset_of(f.sublevel_set(b2, t), 1e-9),
             name + ": sublevel sets not nested");
        note(f.superlevel_set(b2, t).subset_of(f.superlevel_set(b1, t), 1e-9),
             name + ": superlevel sets not nested");
      }
      // Total variation (whole line only; cone windows).
      if (!seg) {
        const std::vector<double> times{0.0, 0.5, 1.0, 2.0};
        const auto r = check_total_variation(f, times, {-6.0, 6.0, 0.0, 2.0},
                                             601);
        note(r.passed, name + ": " + r.details);
      }
      // Monotone dependence against an upward shift.
      {
        auto shift = [](const PiecewiseLinear& g, double c) {
          std::vector<double> ys(g.values().begin(), g.values().end());
          for (auto& y : ys) y += c;
          return PiecewiseLinear(std::vector<double>(g.breakpoints().begin(),
                                                     g.breakpoints().end()),
                                 ys, g.left_slope(), g.right_slope());
        };
        const double c = 0.05 + 0.5 * u(rng);
        const ProblemSpec up(spec.domain, shift(spec.v0, c), shift(spec.w0, c));
        const auto pts = sample_window({lo, hi, 0.0, tmax}, 11, 6);
        const auto r = check_monotone_dependence(spec, up, pts);
        note(r.passed, name + ": monotone dependence");
      }
      // Backward characteristics: subsonic steps and constant value.
      for (int k = 0; k < 3; ++k) {
        const double x = lo + (0.1 + 0.8 * u(rng)) * (hi - lo);
        const double t = (0.1 + 0.9 * u(rng)) * tmax * 0.5;
        TraceOptions o;
        o.dt = t / 200.0;
        o.classify_samples = false;
        const double tol = char_value_tolerance(f, o.dt);
        for (const bool is_v : {true, false}) {
          try {
            const auto c = is_v ? trace_backward_v(f, x, t, o)
                                : trace_backward_w(f, x, t, o);
            bool ok = true;
            const double c0 = c.samples.back().value;
            for (std::size_t i = 1; i < c.samples.size(); ++i) {
              const double dx = c.samples[i].x - c.samples[i - 1].x;
              const double dt = c.samples[i].t - c.samples[i - 1].t;
              const double m = is_v ? dx : -dx;
              ok = ok && dt > 0.0 && m >= -1e-12 && m <= dt + 1e-12 &&
                   std::abs(c.samples[i].value - c0) <= tol;
            }
            note(ok && std::abs(c.samples.front().value - c0) <= tol,
                 name + ": characteristic not subsonic/constant");
          } catch (const TraceError& e) {
            note(false, name + ": " + e.what());
          }
        }
      }
    }
    const double secs = seconds_since(t0);
    return Outcome{failed == 0 && secs <= 300.0,
                   std::to_string(failed) + " of " + std::to_string(checks) +
                       " property checks failed over " +
                       std::to_string(cases.size()) + " specs" +
                       (first.empty() ? "" : " (first: " + first + ")") +
                       ", " + num(secs) + " s (<= 300 s)"};
  });

  criterion("11", "pinned-balls invariants", [] {
    bool ok = true;
    std::string why;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const std::size_t n = 50;
      const auto init = random_balls(n, seed);
      const auto res = run(init, 50 * n * n, 5000);
      auto a = init.velocities, b = res.final_state.velocities;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      // Summing the sorted copies makes equal multisets give equal sums.
      double s1 = 0, s2 = 0, q1 = 0, q2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        s1 += a[i];
        s2 += b[i];
        q1 += a[i] * a[i];
        q2 += b[i] * b[i];
      }
      if (a != b || s1 != s2 || q1 != q2) {
        ok = false;
        why = "multiset changed";
      }
      if (!is_sorted(res.final_state)) {
        ok = false;
        why = "not sorted after 50 n^2 steps";
      }
      const auto again = run(res.final_state, 1000);
      if (again.final_state.velocities != res.final_state.velocities) {
        ok = false;
        why = "sorted state not absorbing";
      }
    }
    return Outcome{ok, ok ? "5 seeded runs of n=50: multiset, sum and sum of "
                            "squares exact; sorted and absorbing"
                          : why};
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
