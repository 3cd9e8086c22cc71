#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "freezeflow/diagnostics.hpp"
#include "freezeflow/fixtures.hpp"
#include "freezeflow/geometry.hpp"
#include "freezeflow/pinned_balls.hpp"
#include "freezeflow/problem.hpp"

namespace freezeflow {

using Json = nlohmann::json;

// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_double(double x);

// {"domain": {"kind": "whole_line" | "segment", "a1", "a2"},
//  "v0": {"breakpoints", "values", "left_slope", "right_slope"}, "w0": ...}
// or the same with "mu_sigma": true and "mu"/"sigma" in place of v0/w0.
// Throws InvalidProblem on malformed input and ConstraintViolation when the
// data is not admissible.
ProblemSpec problem_from_json(const Json& j);
Json problem_to_json(const ProblemSpec& spec);
ProblemSpec load_problem(const std::string& path);

Json to_json(const PiecewiseLinear& f);
Json to_json(const Curve& c);
Json to_json(const BoundarySet& b);
Json to_json(const CheckReport& r);

// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

// Rows joined by ',' and '\n', header first.
void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace freezeflow
