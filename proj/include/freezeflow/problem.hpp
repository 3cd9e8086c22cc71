#pragma once

#include <string>
#include <utility>
#include <vector>

#include "freezeflow/piecewise_linear.hpp"

namespace freezeflow {

enum class DomainKind { WholeLine, Segment };

struct Domain {
  DomainKind kind = DomainKind::WholeLine;
  double a1 = -kInf;
  double a2 = kInf;

  static Domain whole_line() { return {}; }
  static Domain segment(double a1, double a2);

  bool is_segment() const { return kind == DomainKind::Segment; }
  bool contains(double x) const { return a1 <= x && x <= a2; }
};

// Initial data on a domain.  Construct through make_problem() unless an
// unvalidated spec is wanted on purpose (e.g. to feed validate()).
struct ProblemSpec {
  Domain domain;
  PiecewiseLinear v0;
  PiecewiseLinear w0;
  double lipschitz = 0.0;

  ProblemSpec(Domain d, PiecewiseLinear v, PiecewiseLinear w);
};

enum class IssueKind { Definition, Constraint, Boundary, Flat };

struct ValidationIssue {
  IssueKind kind;
  double lo;  // location, or the stretch [lo, hi] it covers
  double hi;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  // No issue at all, flat segments included.
  bool admissible() const { return issues.empty(); }
  // Issues other than flat segments; the solver refuses these.
  bool has_errors() const;
  std::string summary() const;
};

ValidationReport validate(const ProblemSpec& spec);

// Builds a spec and throws ConstraintViolation / InvalidProblem when
// validate() reports errors.  Segment data is restricted to [a1, a2].
ProblemSpec make_problem(Domain domain, PiecewiseLinear v0,
                         PiecewiseLinear w0);

struct MuSigmaPair {
  PiecewiseLinear mu;
  PiecewiseLinear sigma;
};

std::pair<PiecewiseLinear, PiecewiseLinear> to_vw(const MuSigmaPair& ms);
MuSigmaPair from_vw(const PiecewiseLinear& v, const PiecewiseLinear& w);

// Initial data whose solution freezes along t = T(x) with v = w = f(x)
// there.  T needs slopes in (-1, 1), f strictly increasing; both must have
// tails (the result lives on the whole line).
ProblemSpec initial_from_terminal(const PiecewiseLinear& T,
                                  const PiecewiseLinear& f);

}  // namespace freezeflow
