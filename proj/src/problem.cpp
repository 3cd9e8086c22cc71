#include "freezeflow/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freezeflow/errors.hpp"

namespace freezeflow {

Domain Domain::segment(double a1, double a2) {
  if (!(std::isfinite(a1) && std::isfinite(a2) && a1 < a2)) {
    throw InvalidProblem("segment domain needs finite a1 < a2");
  }
  return {DomainKind::Segment, a1, a2};
}

ProblemSpec::ProblemSpec(Domain d, PiecewiseLinear v, PiecewiseLinear w)
    : domain(d),
      v0(std::move(v)),
      w0(std::move(w)),
      lipschitz(std::max(v0.lipschitz(), w0.lipschitz())) {}

bool ValidationReport::has_errors() const {
  return std::any_of(issues.begin(), issues.end(), [](const auto& i) {
    return i.kind != IssueKind::Flat;
  });
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  for (const auto& i : issues) os << i.message << '\n';
  return os.str();
}

namespace {

double tie_tolerance(double v, double w) {
  return 1e-12 * (1.0 + std::abs(v) + std::abs(w));
}

void check_definition(const ProblemSpec& spec, ValidationReport& rep) {
  const auto& d = spec.domain;
  for (const auto* f : {&spec.v0, &spec.w0}) {
    const char* name = f == &spec.v0 ? "v0" : "w0";
    if (d.is_segment()) {
      if (!f->defined_at(d.a1) || !f->defined_at(d.a2)) {
        rep.issues.push_back({IssueKind::Definition, d.a1, d.a2,
                              std::string(name) +
                                  " does not cover the segment domain"});
      }
    } else if (!f->has_tails()) {
      rep.issues.push_back({IssueKind::Definition, -kInf, kInf,
                            std::string(name) +
                                " needs tail slopes on the whole line"});
    }
  }
}

void check_constraint(const ProblemSpec& spec, ValidationReport& rep) {
  const auto& d = spec.domain;
  std::vector<double> xs = merged_breakpoints(spec.v0, spec.w0);
  if (d.is_segment()) {
    std::erase_if(xs, [&](double x) { return !d.contains(x); });
    xs.push_back(d.a1);
    xs.push_back(d.a2);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  }
  bool open = false;
  double start = 0.0;
  double prev = 0.0;
  auto close = [&](double end) {
    std::ostringstream os;
    os << "v0 < w0 on [" << start << ", " << end << "]";
    rep.issues.push_back({IssueKind::Constraint, start, end, os.str()});
    open = false;
  };
  for (double x : xs) {
    const double v = spec.v0(x);
    const double w = spec.w0(x);
    const bool bad = v - w < -tie_tolerance(v, w);
    if (bad && !open) {
      open = true;
      start = x;
    } else if (!bad && open) {
      close(prev);
    }
    prev = x;
  }
  if (open) close(prev);
  if (!d.is_segment()) {
    const double sl = *spec.v0.left_slope() - *spec.w0.left_slope();
    const double sr = *spec.v0.right_slope() - *spec.w0.right_slope();
    if (sl > 0.0) {
      rep.issues.push_back({IssueKind::Constraint, -kInf, xs.front(),
                            "v0 - w0 decreases to -inf along the left tail"});
    }
    if (sr < 0.0) {
      rep.issues.push_back({IssueKind::Constraint, xs.back(), kInf,
                            "v0 - w0 decreases to -inf along the right tail"});
    }
  }
}

void check_boundary(const ProblemSpec& spec, ValidationReport& rep) {
  for (double a : {spec.domain.a1, spec.domain.a2}) {
    const double v = spec.v0(a);
    const double w = spec.w0(a);
    if (std::abs(v - w) > tie_tolerance(v, w)) {
      std::ostringstream os;
      os << "v0 != w0 at endpoint " << a << " (" << v << " vs " << w << ")";
      rep.issues.push_back({IssueKind::Boundary, a, a, os.str()});
    }
  }
}

void check_flat(const ProblemSpec& spec, ValidationReport& rep) {
  const auto& d = spec.domain;
  for (const auto* f : {&spec.v0, &spec.w0}) {
    const char* name = f == &spec.v0 ? "v0" : "w0";
    for (double x : f->flat_segments()) {
      if (!d.contains(x)) continue;
      std::ostringstream os;
      os << name << " has a flat segment around x=" << x;
      rep.issues.push_back({IssueKind::Flat, x, x, os.str()});
    }
    if (!d.is_segment()) {
      if (f->left_slope() == 0.0) {
        rep.issues.push_back({IssueKind::Flat, -kInf, f->front(),
                              std::string(name) + " has a flat left tail"});
      }
      if (f->right_slope() == 0.0) {
        rep.issues.push_back({IssueKind::Flat, f->back(), kInf,
                              std::string(name) + " has a flat right tail"});
      }
    }
  }
}

}  // namespace

ValidationReport validate(const ProblemSpec& spec) {
  ValidationReport rep;
  check_definition(spec, rep);
  if (!rep.issues.empty()) return rep;
  check_constraint(spec, rep);
  if (spec.domain.is_segment()) check_boundary(spec, rep);
  check_flat(spec, rep);
  return rep;
}

ProblemSpec make_problem(Domain domain, PiecewiseLinear v0,
                         PiecewiseLinear w0) {
  ProblemSpec spec(domain, std::move(v0), std::move(w0));
  const auto rep = validate(spec);
  for (const auto& i : rep.issues) {
    if (i.kind == IssueKind::Constraint || i.kind == IssueKind::Boundary) {
      throw ConstraintViolation(i.message);
    }
    if (i.kind == IssueKind::Definition) throw InvalidProblem(i.message);
  }
  if (domain.is_segment()) {
    return ProblemSpec(domain, spec.v0.restricted(domain.a1, domain.a2),
                       spec.w0.restricted(domain.a1, domain.a2));
  }
  return spec;
}

std::pair<PiecewiseLinear, PiecewiseLinear> to_vw(const MuSigmaPair& ms) {
  return {linear_combination(0.5, ms.mu, 0.5, ms.sigma),
          linear_combination(0.5, ms.mu, -0.5, ms.sigma)};
}

MuSigmaPair from_vw(const PiecewiseLinear& v, const PiecewiseLinear& w) {
  MuSigmaPair ms{linear_combination(1.0, v, 1.0, w),
                 linear_combination(1.0, v, -1.0, w)};
  const auto xs = ms.sigma.breakpoints();
  const auto vals = ms.sigma.values();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (vals[i] < -tie_tolerance(v(xs[i]), w(xs[i]))) {
      std::ostringstream os;
      os << "v < w at x=" << xs[i];
      throw ConstraintViolation(os.str());
    }
  }
  if ((ms.sigma.left_slope() && *ms.sigma.left_slope() > 0.0) ||
      (ms.sigma.right_slope() && *ms.sigma.right_slope() < 0.0)) {
    throw ConstraintViolation("v < w along a tail");
  }
  return ms;
}

ProblemSpec initial_from_terminal(const PiecewiseLinear& T,
                                  const PiecewiseLinear& f) {
  if (!T.has_tails() || !f.has_tails()) {
    throw InvalidProblem("terminal data needs tail slopes on both T and f");
  }
  for (std::size_t i = 0; i < T.segment_count(); ++i) {
    if (!(std::abs(T.segment_slope(i)) < 1.0)) {
      throw InvalidProblem("terminal time T must have slopes in (-1, 1)");
    }
  }
  const double sTl = *T.left_slope();
  const double sTr = *T.right_slope();
  if (!(std::abs(sTl) < 1.0 && std::abs(sTr) < 1.0)) {
    throw InvalidProblem("terminal time T must have slopes in (-1, 1)");
  }
  for (double y : T.values()) {
    if (y < 0.0) throw InvalidProblem("terminal time T must be >= 0");
  }
  if (sTl > 0.0 || sTr < 0.0) {
    // A tail that keeps decreasing eventually crosses zero.
    throw InvalidProblem("terminal time T must be >= 0 along its tails");
  }
  for (std::size_t i = 0; i < f.segment_count(); ++i) {
    if (!(f.segment_slope(i) > 0.0)) {
      throw InvalidProblem("f must be strictly increasing");
    }
  }
  const double sfl = *f.left_slope();
  const double sfr = *f.right_slope();
  if (!(sfl > 0.0 && sfr > 0.0)) {
    throw InvalidProblem("f must be strictly increasing");
  }

  // z -> z - T(z) and z -> z + T(z) are strictly increasing, so each x has a
  // unique preimage and both initial functions are PL in x with breakpoints
  // at the images of the breakpoints of T and f.
  const auto ys = merged_breakpoints(T, f);
  std::vector<double> xv, xw, vals;
  for (double y : ys) {
    const double ty = T(y);
    xv.push_back(y - ty);
    xw.push_back(y + ty);
    vals.push_back(f(y));
  }
  auto strip_duplicates = [](std::vector<double>& xs,
                             std::vector<double>& vs) {
    std::vector<double> ox, ov;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!ox.empty() && !(xs[i] > ox.back())) continue;
      ox.push_back(xs[i]);
      ov.push_back(vs[i]);
    }
    xs = std::move(ox);
    vs = std::move(ov);
  };
  auto vv = vals;
  auto wv = vals;
  strip_duplicates(xv, vv);
  strip_duplicates(xw, wv);
  PiecewiseLinear v0(std::move(xv), std::move(vv), sfl / (1.0 - sTl),
                     sfr / (1.0 - sTr));
  PiecewiseLinear w0(std::move(xw), std::move(wv), sfl / (1.0 + sTl),
                     sfr / (1.0 + sTr));
  return make_problem(Domain::whole_line(), std::move(v0), std::move(w0));
}

}  // namespace freezeflow
