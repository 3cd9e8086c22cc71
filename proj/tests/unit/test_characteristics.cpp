#include <doctest.h>

#include <cmath>

#include "freezeflow/characteristics.hpp"
#include "freezeflow/errors.hpp"
#include "freezeflow/fixtures.hpp"

using namespace freezeflow;

namespace {

const SolutionField& abs_half() {
  static const SolutionField f(get_fixture("abs_half").spec);
  return f;
}

// Maximal runs of constant dx/dt along a trace.
int slope_runs(const Curve& c) {
  int runs = 0;
  double last = NAN;
  for (std::size_t i = 1; i < c.samples.size(); ++i) {
    double dt = c.samples[i].t - c.samples[i - 1].t;
    if (dt <= 0.0) continue;
    double s = std::round((c.samples[i].x - c.samples[i - 1].x) / dt * 4) / 4;
    if (!(s == last)) ++runs;
    last = s;
  }
  return runs;
}

}  // namespace

TEST_CASE("classification") {
  CHECK(classify(abs_half(), 2.0, 0.9) == Zone::Frozen);
  CHECK(classify(abs_half(), 4.0, 0.1) == Zone::Liquid);
  CHECK(classify(abs_half(), 3.0, 1.0) == Zone::Boundary);
  CHECK(std::string(zone_name(Zone::Frozen)) == "frozen");
}

TEST_CASE("backward v trace through the liquid region") {
  auto c = trace_backward_v(abs_half(), 4.0, 1.0);
  REQUIRE(c.samples.size() >= 2);
  CHECK(c.kind == CurveKind::VChar);
  CHECK(c.samples.front().t == 0.0);
  CHECK(c.samples.front().x == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(c.samples.back().x == 4.0);
  for (const auto& s : c.samples) CHECK(s.value == doctest::Approx(3.0));
  CHECK(slope_runs(c) == 1);
}

TEST_CASE("backward v trace from the frozen band") {
  auto c = trace_backward_v(abs_half(), 1.0, 1.0);
  CHECK(c.samples.front().t == 0.0);
  CHECK(std::abs(c.samples.front().x - 2.0 / 3.0) <= 2e-3);
  // Vertical above the freezing point (1, 1/3), slope 1 below it; the kink
  // is resolved to within a step.
  const double step = 2e-3;
  for (const auto& s : c.samples) {
    if (s.t >= 1.0 / 3.0 + step) CHECK(std::abs(s.x - 1.0) <= step);
    if (s.t <= 1.0 / 3.0 - step)
      CHECK(std::abs(s.x - (2.0 / 3.0 + s.t)) <= step);
  }
  CHECK(slope_runs(c) <= 3);
}

TEST_CASE("backward w trace") {
  auto c = trace_backward_w(abs_half(), -2.0, 1.0);
  CHECK(c.kind == CurveKind::WChar);
  CHECK(c.samples.front().x == doctest::Approx(-1.0).epsilon(1e-6));
  CHECK(c.samples.front().value == doctest::Approx(-0.5));

  // Through the frozen band: vertical, then slope -1 down to w0 = 2/3.
  auto d = trace_backward_w(abs_half(), 1.0, 1.0);
  CHECK(d.samples.front().t == 0.0);
  CHECK(std::abs(d.samples.front().x - 4.0 / 3.0) <= 2e-3);
  CHECK(slope_runs(d) <= 3);
}

TEST_CASE("frozen data gives vertical characteristics") {
  SolutionField f(get_fixture("frozen_unit").spec);
  for (auto c : {trace_backward_v(f, 0.4, 1.0), trace_backward_w(f, 0.4, 1.0),
                 trace_forward_v(f, 0.4, 0.0, 1.0),
                 trace_forward_w(f, 0.4, 0.0, 1.0)}) {
    for (const auto& s : c.samples) CHECK(s.x == doctest::Approx(0.4));
  }
}

TEST_CASE("forward traces reverse the backward ones") {
  auto c = trace_forward_v(abs_half(), 3.0, 0.0, 1.0);
  CHECK(c.samples.back().t == doctest::Approx(1.0));
  CHECK(c.samples.back().x == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(c.stop_reason.empty());

  auto d = trace_forward_w(abs_half(), -1.0, 0.0, 1.0);
  CHECK(d.samples.back().x == doctest::Approx(-2.0).epsilon(1e-6));

  // Into the frozen band: slope 1 until x = 3t, then vertical.
  auto e = trace_forward_v(abs_half(), 2.0 / 3.0, 0.0, 1.0);
  CHECK(std::abs(e.samples.back().x - 1.0) <= 2e-3);
}

TEST_CASE("trace argument checks") {
  CHECK_THROWS_AS(trace_backward_v(abs_half(), 0.0, -1.0), DomainError);
  CHECK_THROWS_AS(trace_forward_v(abs_half(), 0.0, 1.0, 0.5), DomainError);
}

TEST_CASE("segment characteristics enter through the boundary") {
  SolutionField f(get_fixture("tent").spec);
  auto c = trace_backward_v(f, 0.5, 1.0);
  const auto& first = c.samples.front();
  CHECK((first.t == doctest::Approx(0.0) || first.x == doctest::Approx(0.0)));
  for (const auto& s : c.samples) {
    CHECK(s.x >= -1e-12);
    CHECK(std::abs(s.value - c.samples.back().value) <=
          char_value_tolerance(f, 1e-3) + 1e-9);
  }
}
