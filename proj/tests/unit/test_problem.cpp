#include <doctest.h>

#include <cmath>
#include <random>

#include "freezeflow/errors.hpp"
#include "freezeflow/fixtures.hpp"
#include "freezeflow/levelset.hpp"
#include "freezeflow/problem.hpp"

using namespace freezeflow;
using PL = PiecewiseLinear;

namespace {

bool has_kind(const ValidationReport& r, IssueKind k) {
  for (const auto& i : r.issues)
    if (i.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("validate accepts |x| over x/2") {
  ProblemSpec s(Domain::whole_line(), PL({0.0}, {0.0}, -1.0, 1.0),
                PL::linear(0.5, 0.0));
  auto r = validate(s);
  CHECK(r.admissible());
  CHECK(s.lipschitz == 1.0);
}

TEST_CASE("validate accepts frozen increasing segment data") {
  ProblemSpec s(Domain::segment(0.0, 1.0), PL({0.0, 1.0}, {0.0, 1.0}),
                PL({0.0, 1.0}, {0.0, 1.0}));
  CHECK(validate(s).admissible());
}

TEST_CASE("validate rejects v below w") {
  ProblemSpec s(Domain::whole_line(), PL::constant(0.0), PL::constant(1.0));
  auto r = validate(s);
  CHECK(r.has_errors());
  CHECK(has_kind(r, IssueKind::Constraint));
  CHECK_THROWS_AS(
      make_problem(Domain::whole_line(), PL::constant(0.0), PL::constant(1.0)),
      ConstraintViolation);
}

TEST_CASE("validate flags boundary mismatch and flat segments") {
  ProblemSpec b(Domain::segment(0.0, 1.0), PL({0.0, 1.0}, {1.0, 2.0}),
                PL({0.0, 1.0}, {0.0, 2.0}));
  CHECK(has_kind(validate(b), IssueKind::Boundary));
  CHECK(validate(b).has_errors());

  ProblemSpec f(Domain::whole_line(), PL({0.0, 1.0}, {1.0, 1.0}, 1.0, 1.0),
                PL({0.0, 1.0}, {0.0, 0.0}, 1.0, 1.0));
  auto r = validate(f);
  CHECK(has_kind(r, IssueKind::Flat));
  CHECK_FALSE(r.admissible());
  CHECK_FALSE(r.has_errors());
}

TEST_CASE("validate reports data undefined on the domain") {
  ProblemSpec s(Domain::whole_line(), PL({0.0, 1.0}, {1.0, 2.0}),
                PL::linear(1.0, 0.0));
  CHECK(has_kind(validate(s), IssueKind::Definition));
  CHECK_THROWS_AS(Domain::segment(1.0, 1.0), InvalidProblem);
}

TEST_CASE("lambda is the largest slope") {
  ProblemSpec s(Domain::whole_line(), PL({0.0, 1.0}, {0.0, 3.0}, 0.5, 0.25),
                PL({0.0, 2.0}, {-1.0, -2.0}, -2.5, 0.0));
  CHECK(s.lipschitz == 3.0);
}

TEST_CASE("mu sigma conversion") {
  auto [v, w] = to_vw({PL::constant(0.0), PL::constant(0.0)});
  CHECK(v(3.0) == 0.0);
  CHECK(w(-3.0) == 0.0);

  auto [v2, w2] = to_vw({PL::linear(1.0, 0.0), PL::constant(2.0)});
  for (double x : {-2.0, 0.0, 3.0}) {
    CHECK(v2(x) == doctest::Approx(x / 2 + 1));
    CHECK(w2(x) == doctest::Approx(x / 2 - 1));
  }

  auto ms = from_vw(PL::linear(1.0, 0.0), PL::linear(1.0, 0.0));
  CHECK(ms.mu(2.0) == 4.0);
  CHECK(ms.sigma(2.0) == 0.0);

  auto ms2 = from_vw(PL({0.0}, {0.0}, -1.0, 1.0), PL::linear(0.5, 0.0));
  for (double x : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
    CHECK(ms2.mu(x) == doctest::Approx(std::abs(x) + x / 2));
    CHECK(ms2.sigma(x) == doctest::Approx(std::abs(x) - x / 2));
  }

  auto ms3 = from_vw(PL::constant(1.0), PL::constant(0.0));
  CHECK(ms3.mu(0.0) == 1.0);
  CHECK(ms3.sigma(0.0) == 1.0);

  CHECK_THROWS_AS(from_vw(PL::constant(0.0), PL::constant(1.0)),
                  ConstraintViolation);
}

TEST_CASE("mu sigma round trip on random data") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomSpecOptions o;
    o.kind = seed % 2 ? DomainKind::WholeLine : DomainKind::Segment;
    auto s = random_spec(seed, o);
    auto ms = from_vw(s.v0, s.w0);
    auto [v, w] = to_vw(ms);
    for (double x : s.v0.breakpoints()) {
      CHECK(std::abs(v(x) - s.v0(x)) <= 1e-12 * (1 + std::abs(s.v0(x))));
      CHECK(std::abs(w(x) - s.w0(x)) <= 1e-12 * (1 + std::abs(s.w0(x))));
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(s.v0.front(), s.v0.back());
    for (int i = 0; i < 100; ++i) {
      double x = U(rng);
      CHECK(std::abs(v(x) - s.v0(x)) <= 1e-12 * (1 + std::abs(s.v0(x))));
      CHECK(std::abs(w(x) - s.w0(x)) <= 1e-12 * (1 + std::abs(s.w0(x))));
    }
  }
}

TEST_CASE("terminal data T = 0 gives frozen data") {
  auto s = initial_from_terminal(PL::constant(0.0), PL::linear(1.0, 0.0));
  for (double x : {-2.0, 0.0, 1.5}) {
    CHECK(s.v0(x) == doctest::Approx(x));
    CHECK(s.w0(x) == doctest::Approx(x));
  }
}

TEST_CASE("terminal data T = c freezes at time c") {
  const double c = 0.75;
  auto s = initial_from_terminal(PL::constant(c), PL::linear(1.0, 0.0));
  for (double x : {-2.0, 0.0, 1.5}) {
    CHECK(s.v0(x) == doctest::Approx(x + c));
    CHECK(s.w0(x) == doctest::Approx(x - c));
  }
  SolutionField field(s);
  for (double x : {-1.0, 0.0, 0.5, 2.0}) {
    CHECK(field.v(x, c) - field.w(x, c) <= 1e-8);
    CHECK((field.v(x, c) + field.w(x, c)) / 2 == doctest::Approx(x));
    CHECK(field.v(x, c + 1.0) == doctest::Approx(x));
  }
}

TEST_CASE("terminal data T = |x|/2") {
  // Hand solution of T(z) = z - x and T(z) = x - z for f(x) = x.
  auto y = [](double x) { return x >= 0 ? 2 * x : 2 * x / 3; };
  auto r = [](double x) { return x >= 0 ? 2 * x / 3 : 2 * x; };
  PL T({0.0}, {0.0}, -0.5, 0.5);
  auto s = initial_from_terminal(T, PL::linear(1.0, 0.0));
  CHECK(validate(s).admissible());
  SolutionField field(s);
  for (double x : {-3.0, -1.0, -0.2, 0.0, 0.4, 2.0}) {
    CHECK(s.v0(x) == doctest::Approx(y(x)));
    CHECK(s.w0(x) == doctest::Approx(r(x)));
    double t = std::abs(x) / 2;
    CHECK(field.v(x, t) - field.w(x, t) <= 1e-8);
    CHECK(field.v(x, t) == doctest::Approx(x).epsilon(1e-8));
  }
}

TEST_CASE("terminal data preconditions") {
  CHECK_THROWS_AS(initial_from_terminal(PL::linear(1.5, 0.0),
                                        PL::linear(1.0, 0.0)),
                  InvalidProblem);
  CHECK_THROWS_AS(initial_from_terminal(PL::constant(1.0), PL::constant(0.0)),
                  InvalidProblem);
  CHECK_THROWS_AS(initial_from_terminal(PL({0.0, 1.0}, {0.0, 0.0}),
                                        PL::linear(1.0, 0.0)),
                  InvalidProblem);
}

TEST_CASE("random terminal data always validates") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> slope(-0.9, 0.9), step(0.2, 2.0);
  for (int k = 0; k < 20; ++k) {
    std::vector<double> xs{-5.0}, ts{3.0}, fs{-5.0};
    for (int i = 0; i < 6; ++i) {
      double h = step(rng);
      xs.push_back(xs.back() + h);
      ts.push_back(std::max(0.0, ts.back() + slope(rng) * h));
      fs.push_back(fs.back() + h * (0.5 + step(rng)));
    }
    // Clamping at zero keeps slopes inside (-1, 1).
    auto s = initial_from_terminal(PL(xs, ts, 0.0, 0.0), PL(xs, fs, 1.0, 1.0));
    CHECK_FALSE(validate(s).has_errors());
  }
}
