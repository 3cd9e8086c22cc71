#include "freezeflow/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "freezeflow/errors.hpp"

namespace freezeflow {

const char* zone_name(Zone z) {
  switch (z) {
    case Zone::Liquid:
      return "liquid";
    case Zone::Frozen:
      return "frozen";
    case Zone::Boundary:
      return "boundary";
  }
  return "?";
}

const char* curve_kind_name(CurveKind k) {
  switch (k) {
    case CurveKind::VChar:
      return "v_characteristic";
    case CurveKind::WChar:
      return "w_characteristic";
    case CurveKind::Freezing:
      return "freezing";
    case CurveKind::Thawing:
      return "thawing";
  }
  return "?";
}

Zone classify(const SolutionField& field, double x, double t, double probe) {
  const double eps = field.zone_epsilon();
  const double v = field.v(x, t);
  const double w = field.w(x, t);
  if (v - w > eps) return Zone::Liquid;
  std::vector<double> probes{t + probe};
  if (t >= probe) probes.push_back(t - probe);
  for (double s : probes) {
    const double vs = field.v(x, s);
    const double ws = field.w(x, s);
    if (vs - ws > eps || std::abs(vs - v) > eps) return Zone::Boundary;
  }
  return Zone::Frozen;
}

double char_value_tolerance(const SolutionField& field, double dt) {
  return field.spec().lipschitz * dt + field.zone_epsilon();
}

namespace {

struct TraceSetup {
  bool is_v;       // tracing v (liquid moves right) or w (left)
  bool backward;
};

double value_of(const SolutionField& f, bool is_v, double x, double t) {
  return is_v ? f.v(x, t) : f.w(x, t);
}

Curve trace(const SolutionField& field, double x, double t, double t_end,
            const TraceOptions& opts, TraceSetup setup) {
  const auto& dom = field.spec().domain;
  const double span = setup.backward ? t : t_end - t;
  if (!(t >= 0.0) || (setup.backward && !(t > 0.0))) {
    throw DomainError("trace needs t > 0 (backward) or t >= 0");
  }
  if (!setup.backward && !(t_end >= t)) {
    throw DomainError("forward trace needs t_end >= t");
  }
  const double dt = opts.dt > 0.0 ? opts.dt : 1e-3 * std::max(span, 1e-12);
  const double tol = char_value_tolerance(field, dt);
  const double tie = field.zone_epsilon();
  const double dir = setup.is_v ? 1.0 : -1.0;
  // Liquid moves go against dir backward in time and along dir forward.
  const double lx = setup.backward ? -dir : dir;
  const double c = value_of(field, setup.is_v, x, t);

  Curve curve;
  curve.kind = setup.is_v ? CurveKind::VChar : CurveKind::WChar;
  auto push = [&](double px, double pt) {
    const double val = value_of(field, setup.is_v, px, pt);
    const Zone z = opts.classify_samples ? classify(field, px, pt)
                                         : Zone::Boundary;
    curve.samples.push_back({px, pt, val, z});
  };
  push(x, t);

  double cx = x, ct = t;
  for (;;) {
    const double remaining = setup.backward ? ct : t_end - ct;
    if (remaining <= 0.0) break;
    double h = std::min(dt, remaining);
    const double tsign = setup.backward ? -1.0 : 1.0;
    // Candidate liquid move, clipped where it would leave a segment.
    double lx_new = cx + lx * h;
    double lt_new = ct + tsign * h;
    bool leaves = false;
    if (dom.is_segment()) {
      if (lx_new < dom.a1) {
        lt_new = ct + tsign * (cx - dom.a1);
        lx_new = dom.a1;
        leaves = true;
      } else if (lx_new > dom.a2) {
        lt_new = ct + tsign * (dom.a2 - cx);
        lx_new = dom.a2;
        leaves = true;
      }
    }
    const double ft_new = ct + tsign * h;
    const double dev_l =
        std::abs(value_of(field, setup.is_v, lx_new, lt_new) - c);
    const double dev_f = std::abs(value_of(field, setup.is_v, cx, ft_new) - c);

    bool liquid;
    if (std::abs(dev_l - dev_f) <= tie) {
      const Zone z = classify(field, cx, ct + 0.5 * tsign * h);
      if (z == Zone::Liquid) {
        liquid = true;
      } else if (z == Zone::Frozen) {
        liquid = false;
      } else {
        liquid = !setup.backward;
      }
    } else {
      liquid = dev_l < dev_f;
    }
    const double dev = liquid ? dev_l : dev_f;
    if (dev > tol) {
      std::ostringstream os;
      os << "no subsonic move keeps the value within " << tol << " at ("
         << cx << ", " << ct << "); deviations " << dev_l << " (moving), "
         << dev_f << " (vertical)";
      if (setup.backward) throw TraceError(os.str(), cx, ct);
      curve.stop_reason = os.str();
      break;
    }
    if (!setup.backward && dev_l <= tol && dev_f <= tol &&
        std::abs(dev_l - dev_f) <= tol &&
        classify(field, cx, ct) == Zone::Boundary) {
      curve.ambiguous.push_back(curve.samples.size() - 1);
    }
    if (liquid) {
      cx = lx_new;
      ct = lt_new;
    } else {
      ct = ft_new;
    }
    push(cx, ct);
    if (liquid && leaves) {
      if (!setup.backward) curve.stop_reason = "reached the domain boundary";
      break;
    }
  }
  if (setup.backward) std::reverse(curve.samples.begin(), curve.samples.end());
  return curve;
}

}  // namespace

Curve trace_backward_v(const SolutionField& field, double x, double t,
                       const TraceOptions& opts) {
  return trace(field, x, t, 0.0, opts, {true, true});
}

Curve trace_backward_w(const SolutionField& field, double x, double t,
                       const TraceOptions& opts) {
  return trace(field, x, t, 0.0, opts, {false, true});
}

Curve trace_forward_v(const SolutionField& field, double x, double t,
                      double t_end, const TraceOptions& opts) {
  return trace(field, x, t, t_end, opts, {true, false});
}

Curve trace_forward_w(const SolutionField& field, double x, double t,
                      double t_end, const TraceOptions& opts) {
  return trace(field, x, t, t_end, opts, {false, false});
}

}  // namespace freezeflow
