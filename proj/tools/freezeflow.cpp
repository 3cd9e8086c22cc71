#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "freezeflow/commands.hpp"

namespace {

using freezeflow::RunConfig;

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(item, &used));
    if (used != item.size()) throw std::invalid_argument(item);
  }
  return out;
}

// Flags shared by every problem-based subcommand.
void add_common(CLI::App* sub, RunConfig& cfg, std::string& grid,
                std::string& window, std::string& times, std::string& format) {
  sub->add_option("--problem", cfg.problem_file, "problem JSON file");
  sub->add_option("--fixture", cfg.fixture, "builtin fixture name");
  sub->add_option("--grid", grid, "NX,NT node counts");
  sub->add_option("--window", window, "x0,x1,t0,t1");
  sub->add_option("--times", times, "comma-separated times");
  sub->add_option("--tol", cfg.tol, "solver tolerance");
  sub->add_option("--seed", cfg.seed, "random seed");
  sub->add_option("--out", cfg.out, "output path (default stdout)");
  sub->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Freezing/thawing two-field transport solver"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid, window, times, format = "csv";
  std::string field = "v", direction = "backward";

  auto* solve = app.add_subcommand("solve", "evaluate v, w on a grid");
  add_common(solve, cfg, grid, window, times, format);

  auto* boundary =
      app.add_subcommand("boundary", "extract freezing/thawing curves");
  add_common(boundary, cfg, grid, window, times, format);
  boundary->add_option("--slope-tol", cfg.slope_tol,
                       "unbounded-slope threshold (default one cell)");

  auto* trace = app.add_subcommand("trace", "trace a characteristic");
  add_common(trace, cfg, grid, window, times, format);
  trace->add_option("--x", cfg.x)->required();
  trace->add_option("--t", cfg.t)->required();
  trace->add_option("--field", field)->check(CLI::IsMember({"v", "w"}));
  trace->add_option("--direction", direction)
      ->check(CLI::IsMember({"backward", "forward"}));
  trace->add_option("--t-end", cfg.t_end, "end time of a forward trace");
  trace->add_option("--dt", cfg.dt, "time step (default 1e-3 of the span)");

  auto* check = app.add_subcommand("check", "run the diagnostic checks");
  add_common(check, cfg, grid, window, times, format);

  auto* oracle =
      app.add_subcommand("oracle", "compare against the brute-force oracles");
  add_common(oracle, cfg, grid, window, times, format);
  oracle->add_option("--samples", cfg.samples, "random (b, t) pairs");
  oracle->add_option("--dx", cfg.dx, "grid-scheme spacing (0: skip)");

  auto* pinned =
      app.add_subcommand("pinned-balls", "simulate the pinned-balls model");
  pinned->add_option("--n", cfg.n, "number of balls");
  pinned->add_option("--steps", cfg.steps, "collision steps");
  pinned->add_option("--seed", cfg.seed, "random seed");
  pinned->add_option("--stride", cfg.stride, "snapshot stride (0: ends)");
  pinned->add_option("--out", cfg.out, "output path (default stdout)");
  pinned->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* examples = app.add_subcommand("examples", "list or run fixtures");
  add_common(examples, cfg, grid, window, times, format);
  examples->add_option("action", cfg.action, "list or run")
      ->check(CLI::IsMember({"list", "run"}));
  std::string example_name;
  examples->add_option("name", example_name, "fixture to run");

  try {
    app.parse(argc, argv);
    if (!grid.empty()) {
      const auto g = parse_list(grid);
      if (g.size() != 2 || g[0] < 1 || g[1] < 1) {
        throw CLI::ValidationError("--grid", "expects NX,NT");
      }
      cfg.nx = static_cast<std::size_t>(g[0]);
      cfg.nt = static_cast<std::size_t>(g[1]);
    }
    if (!window.empty()) {
      const auto w = parse_list(window);
      if (w.size() != 4) {
        throw CLI::ValidationError("--window", "expects x0,x1,t0,t1");
      }
      cfg.window = freezeflow::Window{w[0], w[1], w[2], w[3]};
    }
    if (!times.empty()) cfg.times = parse_list(times);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(freezeflow::ExitCode::Usage);
  } catch (const std::exception& e) {
    std::cerr << "usage error: bad number list (" << e.what() << ")\n";
    return static_cast<int>(freezeflow::ExitCode::Usage);
  }
  cfg.format =
      format == "json" ? freezeflow::Format::Json : freezeflow::Format::Csv;
  cfg.field = field[0];
  cfg.forward = direction == "forward";
  if (!example_name.empty()) cfg.fixture = example_name;

  const auto* sub = app.get_subcommands().front();
  return freezeflow::run_command(sub->get_name(), cfg, std::cout, std::cerr);
}
