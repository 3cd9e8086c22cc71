#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "freezeflow/levelset.hpp"

namespace freezeflow {

enum class Zone { Liquid, Frozen, Boundary };
const char* zone_name(Zone z);

// Liquid when v - w exceeds the field's zone epsilon.  Otherwise the point
// is Frozen if short vertical probes at t +- probe (only t + probe at
// t = 0) stay frozen with unchanged v, and Boundary if not.
Zone classify(const SolutionField& field, double x, double t,
              double probe = 1e-3);

enum class CurveKind { VChar, WChar, Freezing, Thawing };
const char* curve_kind_name(CurveKind k);

struct CurveSample {
  double x;
  double t;
  double value;  // traced field value (NaN for boundary curves)
  Zone zone;
};

struct Curve {
  CurveKind kind = CurveKind::VChar;
  std::vector<CurveSample> samples;
  // Why a forward trace stopped before t_end (empty when it did not).
  std::string stop_reason;
  // Sample indices where a forward trace could continue either way.
  std::vector<std::size_t> ambiguous;
};

struct TraceOptions {
  // Step in t; <= 0 picks 1e-3 of the traced time span.
  double dt = 0.0;
  // Classify every sample (three extra evaluations each).
  bool classify_samples = true;
};

// The value tolerance a trace with step dt is held to.
double char_value_tolerance(const SolutionField& field, double dt);

// Backward traces run from (x, t) down to t = 0, or to the boundary point
// where a segment characteristic enters; samples come out with increasing
// t.  They throw TraceError when neither move keeps the value.
Curve trace_backward_v(const SolutionField& field, double x, double t,
                       const TraceOptions& opts = {});
Curve trace_backward_w(const SolutionField& field, double x, double t,
                       const TraceOptions& opts = {});

// Forward traces run to t_end and stop early (recording why) when no move
// keeps the value or the trace leaves a segment.
Curve trace_forward_v(const SolutionField& field, double x, double t,
                      double t_end, const TraceOptions& opts = {});
Curve trace_forward_w(const SolutionField& field, double x, double t,
                      double t_end, const TraceOptions& opts = {});

}  // namespace freezeflow
