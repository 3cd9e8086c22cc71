#include "freezeflow/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "freezeflow/errors.hpp"

namespace freezeflow {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

// JSON has no infinities; they travel as strings.
Json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

double read_number(const Json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InvalidProblem(std::string(what) + " must be a number");
}

PiecewiseLinear read_function(const Json& j, const char* what) {
  if (!j.is_object()) {
    throw InvalidProblem(std::string(what) + " must be an object");
  }
  if (!j.contains("breakpoints") || !j.contains("values")) {
    throw InvalidProblem(std::string(what) +
                         " needs \"breakpoints\" and \"values\"");
  }
  std::vector<double> xs, ys;
  for (const auto& x : j.at("breakpoints")) xs.push_back(read_number(x, what));
  for (const auto& y : j.at("values")) ys.push_back(read_number(y, what));
  std::optional<double> ls, rs;
  if (j.contains("left_slope") && !j.at("left_slope").is_null()) {
    ls = read_number(j.at("left_slope"), "left_slope");
  }
  if (j.contains("right_slope") && !j.at("right_slope").is_null()) {
    rs = read_number(j.at("right_slope"), "right_slope");
  }
  return PiecewiseLinear(std::move(xs), std::move(ys), ls, rs);
}

Domain read_domain(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) {
    throw InvalidProblem("\"domain\" needs a \"kind\"");
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "whole_line") return Domain::whole_line();
  if (kind == "segment") {
    if (!j.contains("a1") || !j.contains("a2")) {
      throw InvalidProblem("segment domain needs \"a1\" and \"a2\"");
    }
    return Domain::segment(read_number(j.at("a1"), "a1"),
                           read_number(j.at("a2"), "a2"));
  }
  throw InvalidProblem("unknown domain kind \"" + kind + "\"");
}

}  // namespace

ProblemSpec problem_from_json(const Json& j) {
  try {
    if (!j.is_object()) throw InvalidProblem("problem must be a JSON object");
    const Domain dom = j.contains("domain") ? read_domain(j.at("domain"))
                                            : Domain::whole_line();
    if (j.value("mu_sigma", false)) {
      if (!j.contains("mu") || !j.contains("sigma")) {
        throw InvalidProblem("mu_sigma form needs \"mu\" and \"sigma\"");
      }
      const MuSigmaPair ms{read_function(j.at("mu"), "mu"),
                           read_function(j.at("sigma"), "sigma")};
      auto [v, w] = to_vw(ms);
      return make_problem(dom, std::move(v), std::move(w));
    }
    if (!j.contains("v0") || !j.contains("w0")) {
      throw InvalidProblem("problem needs \"v0\" and \"w0\"");
    }
    return make_problem(dom, read_function(j.at("v0"), "v0"),
                        read_function(j.at("w0"), "w0"));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidProblem(std::string("malformed problem: ") + e.what());
  }
}

Json to_json(const PiecewiseLinear& f) {
  Json j;
  j["breakpoints"] = Json::array();
  j["values"] = Json::array();
  for (double x : f.breakpoints()) j["breakpoints"].push_back(num(x));
  for (double y : f.values()) j["values"].push_back(num(y));
  if (f.left_slope()) j["left_slope"] = *f.left_slope();
  if (f.right_slope()) j["right_slope"] = *f.right_slope();
  return j;
}

Json problem_to_json(const ProblemSpec& spec) {
  Json j;
  Json d;
  if (spec.domain.is_segment()) {
    d["kind"] = "segment";
    d["a1"] = spec.domain.a1;
    d["a2"] = spec.domain.a2;
  } else {
    d["kind"] = "whole_line";
  }
  j["domain"] = d;
  j["v0"] = to_json(spec.v0);
  j["w0"] = to_json(spec.w0);
  return j;
}

ProblemSpec load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidProblem("cannot read problem file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidProblem(path + ": " + e.what());
  }
  return problem_from_json(j);
}

Json to_json(const Curve& c) {
  Json j;
  j["kind"] = curve_kind_name(c.kind);
  Json samples = Json::array();
  for (const auto& s : c.samples) {
    Json p;
    p["t"] = num(s.t);
    p["x"] = num(s.x);
    if (!std::isnan(s.value)) p["value"] = num(s.value);
    p["zone"] = zone_name(s.zone);
    samples.push_back(p);
  }
  j["samples"] = samples;
  if (!c.stop_reason.empty()) j["stop_reason"] = c.stop_reason;
  if (!c.ambiguous.empty()) j["ambiguous"] = c.ambiguous;
  return j;
}

Json to_json(const BoundarySet& b) {
  Json j;
  j["cell_t"] = b.cell_t;
  j["cell_x"] = b.cell_x;
  Json corners = Json::array();
  for (const auto& c : b.corners) {
    Json k;
    k["first"] = c.first;
    k["first_slope"] = num(c.first_slope);
    k["kind"] = corner_kind_name(c.kind);
    k["second"] = c.second;
    k["second_slope"] = num(c.second_slope);
    k["second_unbounded"] = c.second_unbounded;
    k["slopes_valid"] = c.slopes_valid;
    k["t"] = c.t;
    k["x"] = c.x;
    corners.push_back(k);
  }
  j["corners"] = corners;
  j["freezing"] = Json::array();
  for (const auto& c : b.freezing) j["freezing"].push_back(to_json(c));
  j["slope_tol"] = b.slope_tol;
  j["thawing"] = Json::array();
  for (const auto& c : b.thawing) j["thawing"].push_back(to_json(c));
  j["warnings"] = b.warnings;
  return j;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["bound"] = num(r.bound);
  j["details"] = r.details;
  j["measured"] = num(r.measured);
  j["name"] = r.name;
  j["passed"] = r.passed;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

}  // namespace freezeflow
