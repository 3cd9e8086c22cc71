#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "freezeflow/window.hpp"

namespace freezeflow {

enum class ExitCode : int {
  Ok = 0,
  CheckFailed = 1,
  InvalidProblem = 2,
  DomainError = 3,
  TraceFailed = 4,
  InsufficientSamples = 5,
  Usage = 6,
  Internal = 7,
};

enum class Format { Csv, Json };

struct RunConfig {
  std::optional<std::string> problem_file;
  std::optional<std::string> fixture;
  std::size_t nx = 101;
  std::size_t nt = 51;
  std::optional<Window> window;
  std::vector<double> times;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  std::string out;  // empty: stdout
  Format format = Format::Csv;

  // boundary
  double slope_tol = 0.0;
  // trace
  double x = 0.0;
  double t = 0.0;
  char field = 'v';
  bool forward = false;
  double t_end = 0.0;
  double dt = 0.0;
  // oracle
  std::size_t samples = 20;
  double dx = 0.0;
  // pinned-balls
  std::size_t n = 50;
  std::uint64_t steps = 1000;
  std::uint64_t stride = 0;
  // examples
  std::string action = "list";
};

// Each command writes its result to `out` and returns the exit code.
// Library errors propagate; run_command maps them to exit codes.
ExitCode cmd_solve(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_boundary(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_trace(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_check(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_oracle(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_pinned(const RunConfig& cfg, std::ostream& out);
ExitCode cmd_examples(const RunConfig& cfg, std::ostream& out);

// Runs the named subcommand, writing to cfg.out (or `out` when empty) and
// error messages to `err`.
int run_command(const std::string& name, const RunConfig& cfg,
                std::ostream& out, std::ostream& err);

}  // namespace freezeflow
