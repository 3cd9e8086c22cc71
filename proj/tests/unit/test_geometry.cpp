#include <doctest.h>

#include <cmath>

#include "freezeflow/errors.hpp"
#include "freezeflow/fixtures.hpp"
#include "freezeflow/geometry.hpp"

using namespace freezeflow;

TEST_CASE("boundaries of |x| over x/2") {
  SolutionField f(get_fixture("abs_half").spec);
  auto b = extract_boundaries(f, {-1.0, 5.0, 0.0, 1.5}, {121, 61});
  REQUIRE(!b.freezing.empty());
  REQUIRE(!b.thawing.empty());
  const double cell = std::max(b.cell_x, b.cell_t);
  for (const auto& c : b.freezing) {
    CHECK(c.kind == CurveKind::Freezing);
    for (const auto& s : c.samples) CHECK(std::abs(s.x - 3.0 * s.t) <= 2 * cell);
    for (std::size_t i = 1; i < c.samples.size(); ++i)
      CHECK(c.samples[i - 1].x <= c.samples[i].x);
  }
  for (const auto& c : b.thawing) {
    for (const auto& s : c.samples)
      CHECK(std::abs(s.x - 0.6 * s.t) <= 2 * cell);
    for (std::size_t i = 1; i < c.samples.size(); ++i)
      CHECK(c.samples[i - 1].t <= c.samples[i].t);
  }
}

TEST_CASE("pure transport has no boundary") {
  SolutionField f(get_fixture("constant").spec);
  auto b = extract_boundaries(f, {-2.0, 2.0, 0.0, 2.0}, {21, 21});
  CHECK(b.empty());
  CHECK(b.corners.empty());
}

TEST_CASE("exact freezing curve for increasing data") {
  auto s = get_fixture("ramp").spec;
  auto c = freezing_curve_monotone_case(s, -10.0, 10.0, 11);
  REQUIRE(c.samples.size() == 11);
  for (const auto& p : c.samples) CHECK(p.t == doctest::Approx(5.0));

  SolutionField f(s);
  for (const auto& p : c.samples) {
    CHECK(f.v(p.x, p.t + 0.1) - f.w(p.x, p.t + 0.1) <= 1e-8);
    CHECK(f.v(p.x, p.t - 0.1) - f.w(p.x, p.t - 0.1) > 0.1);
  }
  CHECK_THROWS_AS(freezing_curve_monotone_case(s, 1.0, 1.0, 5), InvalidProblem);
  CHECK_THROWS_AS(
      freezing_curve_monotone_case(get_fixture("abs_half").spec, -1.0, 1.0, 5),
      InvalidProblem);
}

TEST_CASE("exact freezing curve of |x| over x/2 on the right") {
  // v0 = x, w0 = x/2 for x > 0: meeting at xi = c, eta = 2c, so x = 3t.
  auto c = freezing_curve_monotone_case(get_fixture("abs_half").spec, 0.1, 4.0,
                                        9);
  for (const auto& p : c.samples) CHECK(p.x == doctest::Approx(3.0 * p.t));
}

TEST_CASE("thaw to freeze corner") {
  SolutionField f(get_fixture("thaw_freeze").spec);
  auto b = extract_boundaries(f, {-3.0, 1.0, 0.0, 3.0}, {101, 76});
  bool found = false;
  for (std::size_t i = 0; i < b.corners.size(); ++i) {
    const auto& c = b.corners[i];
    if (c.kind != CornerKind::ThawFreeze) continue;
    if (std::abs(c.x + 2.0) > 0.1 || std::abs(c.t - 2.0) > 0.1) continue;
    found = true;
    auto s = corner_slopes(b, i);
    CHECK(std::abs(s.freezing_slope) <= 0.1);
    CHECK(std::abs(s.thawing_slope) > 10.0);
  }
  CHECK(found);
  CHECK_THROWS_AS(corner_slopes(b, b.corners.size()), InsufficientSamples);
}

TEST_CASE("boundary argument checks") {
  SolutionField f(get_fixture("tent").spec);
  CHECK_THROWS_AS(extract_boundaries(f, {5.0, 6.0, 0.0, 1.0}, {11, 11}),
                  DomainError);
  CHECK_THROWS_AS(extract_boundaries(f, {0.0, 2.0, 0.0, 1.0}, {2, 11}),
                  InvalidProblem);
  CHECK_THROWS_AS(extract_boundaries(f, {0.0, 2.0, 1.0, 0.5}, {11, 11}),
                  DomainError);
}
