#include "freezeflow/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "freezeflow/errors.hpp"

namespace freezeflow {

namespace {

using PL = PiecewiseLinear;

Fixture abs_half() {
  return {"abs_half",
          "v0 = |x|, w0 = x/2 on the whole line; closed-form solution with a "
          "frozen wedge between x = 3t/5 and x = 3t",
          make_problem(Domain::whole_line(), PL({0.0}, {0.0}, -1.0, 1.0),
                       PL({0.0}, {0.0}, 0.5, 0.5)),
          {-5.0, 5.0, 0.0, 2.0}};
}

Fixture parabolas() {
  auto v = PL::sample([](double x) { return x * x; }, -6.0, 10.0, 2001, true);
  auto w = PL::sample([](double x) { return -(x - 4.0) * (x - 4.0) + 3.0; },
                      -6.0, 10.0, 2001, true);
  return {"parabolas",
          "v0 = x^2, w0 = 3 - (x-4)^2 sampled at 2001 points on [-6, 10]; a "
          "frozen triangle with base corners at x = (4 -+ sqrt 3)/2",
          make_problem(Domain::whole_line(), std::move(v), std::move(w)),
          {0.0, 4.0, 0.0, 3.6}};
}

Fixture thaw_freeze() {
  std::vector<double> xs{-1.0}, ys{1.0};
  const auto mid = PL::sample([](double x) { return x * x; }, -1.0, 1.0, 401);
  for (std::size_t i = 1; i < mid.breakpoints().size(); ++i) {
    xs.push_back(mid.breakpoints()[i]);
    ys.push_back(mid.values()[i]);
  }
  return {"thaw_freeze",
          "v0 = x + 2; w0 = x + 2 left of -1, x^2 on [-1, 1], x right of 1; "
          "a thawing curve turns into a freezing curve at (-2, 2)",
          make_problem(Domain::whole_line(), PL({0.0}, {2.0}, 1.0, 1.0),
                       PL(std::move(xs), std::move(ys), 1.0, 1.0)),
          {-3.0, 1.0, 0.0, 3.0}};
}

Fixture tent() {
  return {"tent",
          "segment [0, 2], v0 = 1 - |x-1|, w0 = |x-1| - 1 (mu0 = 0, sigma0 a "
          "tent)",
          make_problem(Domain::segment(0.0, 2.0),
                       PL({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0}),
                       PL({0.0, 1.0, 2.0}, {0.0, -1.0, 0.0})),
          {0.0, 2.0, 0.0, 4.0}};
}

Fixture segment_unit() {
  return {"segment_unit",
          "segment [0, 1] with oscillating data; frozen and non-decreasing "
          "from t = 2 on",
          make_problem(Domain::segment(0.0, 1.0),
                       PL({0.0, 0.25, 0.5, 0.75, 1.0}, {0.0, 1.0, 0.5, 1.2, 0.3}),
                       PL({0.0, 0.25, 0.5, 0.75, 1.0},
                          {0.0, -0.5, 0.2, -0.3, 0.3})),
          {0.0, 1.0, 0.0, 3.0}};
}

Fixture instant_thaw() {
  const std::vector<double> xs{-1.0, -0.3, 0.4, 1.0};
  const std::vector<double> ys{1.0, 0.2, -0.1, -1.0};
  return {"instant_thaw",
          "segment [-1, 1], v0 = w0 strictly decreasing: thaws at once and "
          "ends mirrored, mu(x, 4) = mu(-x, 0)",
          make_problem(Domain::segment(-1.0, 1.0), PL(xs, ys), PL(xs, ys)),
          {-1.0, 1.0, 0.0, 4.0}};
}

Fixture frozen_unit() {
  return {"frozen_unit", "segment [0, 1], v0 = w0 = x: frozen for all time",
          make_problem(Domain::segment(0.0, 1.0), PL({0.0, 1.0}, {0.0, 1.0}),
                       PL({0.0, 1.0}, {0.0, 1.0})),
          {0.0, 1.0, 0.0, 1.0}};
}

Fixture constant() {
  return {"constant", "v0 = 1, w0 = 0 on the whole line: pure transport",
          make_problem(Domain::whole_line(), PL::constant(1.0),
                       PL::constant(0.0)),
          {-1.0, 1.0, 0.0, 1.0}};
}

Fixture ramp() {
  return {"ramp",
          "v0 = x, w0 = x - 10 on the whole line: everything freezes at t = 5",
          make_problem(Domain::whole_line(), PL::linear(1.0, 0.0),
                       PL::linear(1.0, -10.0)),
          {-10.0, 20.0, 0.0, 8.0}};
}

struct Entry {
  const char* name;
  Fixture (*make)();
};

constexpr Entry kFixtures[] = {
    {"abs_half", abs_half},         {"parabolas", parabolas},
    {"thaw_freeze", thaw_freeze},   {"tent", tent},
    {"segment_unit", segment_unit}, {"instant_thaw", instant_thaw},
    {"frozen_unit", frozen_unit},   {"constant", constant},
    {"ramp", ramp},
};

}  // namespace

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  for (const auto& e : kFixtures) out.emplace_back(e.name);
  return out;
}

Fixture get_fixture(const std::string& name) {
  for (const auto& e : kFixtures) {
    if (name == e.name) return e.make();
  }
  throw InvalidProblem("unknown fixture '" + name + "'");
}

ProblemSpec random_spec(std::uint64_t seed, const RandomSpecOptions& opts) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };
  const bool segment = opts.kind == DomainKind::Segment;
  const int n = std::max(
      2, 2 + static_cast<int>(unit(rng) * (opts.max_breakpoints - 1)));
  const double s = opts.max_slope;

  std::vector<double> xs;
  double a1 = 0.0, a2 = 0.0;
  if (segment) {
    const double half = uniform(0.5, 3.0);
    a1 = -half;
    a2 = half;
    xs.push_back(a1);
    for (int i = 0; i + 2 < n; ++i) xs.push_back(uniform(a1, a2));
    xs.push_back(a2);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  } else {
    double x = uniform(-5.0, -2.0);
    for (int i = 0; i < n; ++i) {
      xs.push_back(x);
      x += uniform(0.2, 1.5);
    }
  }

  std::vector<double> v(xs.size()), g(xs.size());
  v[0] = uniform(-2.0, 2.0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    v[i] = v[i - 1] + uniform(-s, s) * (xs[i] - xs[i - 1]);
  }
  g[0] = segment ? 0.0 : (unit(rng) < 0.3 ? 0.0 : uniform(0.0, 1.5));
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double reach = s * (xs[i] - xs[i - 1]);
    double target = unit(rng) < 0.3 ? 0.0 : uniform(0.0, 1.5);
    target = std::clamp(target, std::max(0.0, g[i - 1] - reach),
                        g[i - 1] + reach);
    g[i] = target;
  }
  if (segment) {
    // Walk the gap back down to zero at a2 within the slope limit.
    g.back() = 0.0;
    for (std::size_t i = xs.size() - 1; i-- > 0;) {
      g[i] = std::min(g[i], g[i + 1] + s * (xs[i + 1] - xs[i]));
    }
    g.front() = 0.0;
  }
  std::vector<double> w(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) w[i] = v[i] - g[i];

  if (segment) {
    return make_problem(Domain::segment(a1, a2), PL(xs, v), PL(xs, w));
  }
  const double vl = uniform(-s, s), vr = uniform(-s, s);
  const double gl = uniform(-s, 0.0), gr = uniform(0.0, s);
  return make_problem(Domain::whole_line(), PL(xs, v, vl, vr),
                      PL(xs, w, vl - gl, vr - gr));
}

}  // namespace freezeflow
