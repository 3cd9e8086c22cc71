#include "freezeflow/commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "freezeflow/characteristics.hpp"
#include "freezeflow/diagnostics.hpp"
#include "freezeflow/errors.hpp"
#include "freezeflow/fixtures.hpp"
#include "freezeflow/geometry.hpp"
#include "freezeflow/io.hpp"
#include "freezeflow/oracle.hpp"
#include "freezeflow/parallel.hpp"
#include "freezeflow/pinned_balls.hpp"

namespace freezeflow {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Loaded {
  ProblemSpec spec;
  Window window;
};

void check_config(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw UsageError("--tol must be positive");
  if (cfg.nx < 2 || cfg.nt < 1) {
    throw UsageError("--grid needs at least 2 x nodes and 1 t node");
  }
  if (cfg.slope_tol < 0.0 || cfg.dt < 0.0 || cfg.dx < 0.0) {
    throw UsageError("tolerances and steps must be non-negative");
  }
}

Loaded load(const RunConfig& cfg) {
  check_config(cfg);
  if (cfg.fixture && cfg.problem_file) {
    throw UsageError("give either --fixture or --problem, not both");
  }
  std::optional<Window> fallback;
  std::optional<ProblemSpec> spec;
  if (cfg.fixture) {
    auto fx = get_fixture(*cfg.fixture);
    fallback = fx.window;
    spec = std::move(fx.spec);
  } else if (cfg.problem_file) {
    spec = load_problem(*cfg.problem_file);
    if (spec->domain.is_segment()) {
      const double len = spec->domain.a2 - spec->domain.a1;
      fallback = Window{spec->domain.a1, spec->domain.a2, 0.0, 2.0 * len};
    }
  } else {
    throw UsageError("a problem is needed: --fixture NAME or --problem FILE");
  }
  const auto win = cfg.window ? cfg.window : fallback;
  if (!win) throw UsageError("whole-line problems need --window");
  if (!(win->x1 > win->x0) || !(win->t1 >= win->t0) || win->t0 < 0.0) {
    throw UsageError("--window needs x0 < x1 and 0 <= t0 <= t1");
  }
  return {std::move(*spec), *win};
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> cells(std::initializer_list<double> xs) {
  std::vector<std::string> out;
  for (double x : xs) out.push_back(format_double(x));
  return out;
}

}  // namespace

ExitCode cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const auto [spec, win] = load(cfg);
  const SolutionField field(spec, {cfg.tol, 60});
  const auto xs = linspace(win.x0, win.x1, cfg.nx);
  const auto ts = cfg.times.empty() ? linspace(win.t0, win.t1, cfg.nt)
                                    : cfg.times;
  const auto grid = eval_grid(field, xs, ts);
  std::vector<Zone> zones(grid.v.size());
  parallel_for(zones.size(), [&](std::size_t k) {
    zones[k] = classify(field, xs[k % xs.size()], ts[k / xs.size()]);
  });
  const std::vector<std::string> header{"x",  "t",     "v",   "w",
                                        "mu", "sigma", "zone"};
  if (cfg.format == Format::Json) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < grid.v.size(); ++k) {
      const double v = grid.v[k], w = grid.w[k];
      rows.push_back({xs[k % xs.size()], ts[k / xs.size()], v, w, v + w,
                      v - w, zone_name(zones[k])});
    }
    Json j;
    j["columns"] = header;
    j["rows"] = rows;
    out << dump(j);
    return ExitCode::Ok;
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < grid.v.size(); ++k) {
    const double v = grid.v[k], w = grid.w[k];
    auto r = cells({xs[k % xs.size()], ts[k / xs.size()], v, w, v + w, v - w});
    r.push_back(zone_name(zones[k]));
    rows.push_back(std::move(r));
  }
  write_csv(out, header, rows);
  return ExitCode::Ok;
}

ExitCode cmd_boundary(const RunConfig& cfg, std::ostream& out) {
  const auto [spec, win] = load(cfg);
  if (cfg.nt < 2) throw UsageError("--grid needs at least 2 t nodes");
  const SolutionField field(spec, {cfg.tol, 60});
  BoundaryOptions opts;
  opts.slope_tol = cfg.slope_tol;
  const auto bset = extract_boundaries(field, win, {cfg.nx, cfg.nt}, opts);
  if (cfg.format == Format::Json) {
    out << dump(to_json(bset));
    return ExitCode::Ok;
  }
  std::vector<std::vector<std::string>> rows;
  auto add_curves = [&](const std::vector<Curve>& curves) {
    for (std::size_t i = 0; i < curves.size(); ++i) {
      for (const auto& s : curves[i].samples) {
        std::vector<std::string> r{curve_kind_name(curves[i].kind),
                                   std::to_string(i)};
        for (auto& c : cells({s.t, s.x})) r.push_back(std::move(c));
        r.insert(r.end(), {"", "", ""});
        rows.push_back(std::move(r));
      }
    }
  };
  add_curves(bset.freezing);
  add_curves(bset.thawing);
  for (std::size_t i = 0; i < bset.corners.size(); ++i) {
    const auto& c = bset.corners[i];
    std::vector<std::string> r{corner_kind_name(c.kind), std::to_string(i)};
    for (auto& s : cells({c.t, c.x, c.first_slope, c.second_slope})) {
      r.push_back(std::move(s));
    }
    r.push_back(c.second_unbounded ? "1" : "0");
    rows.push_back(std::move(r));
  }
  write_csv(out,
            {"kind", "index", "t", "x", "first_slope", "second_slope",
             "unbounded"},
            rows);
  return ExitCode::Ok;
}

ExitCode cmd_trace(const RunConfig& cfg, std::ostream& out) {
  const auto [spec, win] = load(cfg);
  (void)win;
  if (cfg.field != 'v' && cfg.field != 'w') {
    throw UsageError("--field must be v or w");
  }
  const SolutionField field(spec, {cfg.tol, 60});
  TraceOptions opts;
  opts.dt = cfg.dt;
  Curve c;
  if (cfg.forward) {
    c = cfg.field == 'v' ? trace_forward_v(field, cfg.x, cfg.t, cfg.t_end, opts)
                         : trace_forward_w(field, cfg.x, cfg.t, cfg.t_end, opts);
  } else {
    c = cfg.field == 'v' ? trace_backward_v(field, cfg.x, cfg.t, opts)
                         : trace_backward_w(field, cfg.x, cfg.t, opts);
  }
  if (cfg.format == Format::Json) {
    out << dump(to_json(c));
    return ExitCode::Ok;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : c.samples) {
    auto r = cells({s.t, s.x, s.value});
    r.push_back(zone_name(s.zone));
    rows.push_back(std::move(r));
  }
  write_csv(out, {"t", "x", "value", "zone"}, rows);
  return ExitCode::Ok;
}

ExitCode cmd_check(const RunConfig& cfg, std::ostream& out) {
  const auto [spec, win] = load(cfg);
  const SolutionField field(spec, {cfg.tol, 60});
  const auto reports = run_default_checks(field, win);
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed;
  if (cfg.format == Format::Json) {
    Json j = Json::array();
    for (const auto& r : reports) j.push_back(to_json(r));
    out << dump(j);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : reports) {
      rows.push_back({r.name, r.passed ? "1" : "0", format_double(r.measured),
                      format_double(r.bound), csv_quote(r.details)});
    }
    write_csv(out, {"name", "passed", "measured", "bound", "details"}, rows);
  }
  return ok ? ExitCode::Ok : ExitCode::CheckFailed;
}

ExitCode cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  const auto [spec, win] = load(cfg);
  const SolutionField field(spec, {cfg.tol, 60});
  double lo = win.x0, hi = win.x1;
  if (spec.domain.is_segment()) {
    lo = std::max(lo, spec.domain.a1);
    hi = std::min(hi, spec.domain.a2);
  }
  const auto [vl, vh] = spec.v0.range_on(lo, hi);
  const auto [wl, wh] = spec.w0.range_on(lo, hi);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ub(std::min(vl, wl),
                                            std::max(vh, wh));
  std::uniform_real_distribution<double> ut(win.t0, win.t1);
  struct Sample {
    double b, t, blue, red;
  };
  std::vector<Sample> samples(cfg.samples);
  for (auto& s : samples) {
    s.b = ub(rng);
    s.t = ut(rng);
  }
  parallel_for(samples.size(), [&](std::size_t i) {
    auto& s = samples[i];
    const auto [blue, red] = oracle_level_sets(spec, s.b, s.t);
    s.blue = symmetric_difference_measure(blue, field.sublevel_set(s.b, s.t));
    s.red = symmetric_difference_measure(red, field.superlevel_set(s.b, s.t));
  });
  double worst = 0.0;
  for (const auto& s : samples) worst = std::max({worst, s.blue, s.red});
  std::optional<double> scheme_err;
  double scheme_t = 0.0;
  if (cfg.dx > 0.0) {
    scheme_t = cfg.times.empty() ? win.t1 : cfg.times.back();
    const auto res = grid_scheme(spec, cfg.dx, scheme_t,
                                 std::make_pair(win.x0, win.x1));
    std::vector<double> err(res.xs.size());
    parallel_for(res.xs.size(), [&](std::size_t i) {
      err[i] = std::max(std::abs(res.v[i] - field.v(res.xs[i], res.t)),
                        std::abs(res.w[i] - field.w(res.xs[i], res.t)));
    });
    scheme_err = err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
  }
  const bool ok = worst <= 1e-9;
  if (cfg.format == Format::Json) {
    Json j;
    Json rows = Json::array();
    for (const auto& s : samples) {
      rows.push_back({{"b", s.b}, {"t", s.t}, {"blue_difference", s.blue},
                      {"red_difference", s.red}});
    }
    j["level_sets"] = rows;
    j["max_difference"] = worst;
    if (scheme_err) {
      j["scheme"] = {{"dx", cfg.dx}, {"t", scheme_t},
                     {"max_error", *scheme_err}};
    }
    out << dump(j);
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : samples) {
      auto r = cells({s.b, s.t, s.blue, s.red});
      r.insert(r.begin(), "level_sets");
      rows.push_back(std::move(r));
    }
    if (scheme_err) {
      auto r = cells({cfg.dx, scheme_t, *scheme_err, *scheme_err});
      r.insert(r.begin(), "scheme");
      rows.push_back(std::move(r));
    }
    write_csv(out, {"kind", "b_or_dx", "t", "blue_or_error", "red_or_error"},
              rows);
  }
  return ok ? ExitCode::Ok : ExitCode::CheckFailed;
}

ExitCode cmd_pinned(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n < 2) throw UsageError("--n must be at least 2");
  const BallState init = random_balls(cfg.n, cfg.seed);
  const BallRun res = run(init, cfg.steps, cfg.stride);
  if (cfg.format == Format::Json) {
    Json snaps = Json::array();
    for (const auto& s : res.snapshots) {
      snaps.push_back({{"t", s.t}, {"velocities", s.velocities}});
    }
    Json j;
    j["seed"] = cfg.seed;
    j["snapshots"] = snaps;
    j["sorted"] = is_sorted(res.final_state);
    out << dump(j);
    return ExitCode::Ok;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : res.snapshots) {
    for (std::size_t i = 0; i < s.velocities.size(); ++i) {
      rows.push_back({std::to_string(s.t), std::to_string(i + 1),
                      format_double(s.velocities[i])});
    }
  }
  write_csv(out, {"step", "x", "velocity"}, rows);
  return ExitCode::Ok;
}

ExitCode cmd_examples(const RunConfig& cfg, std::ostream& out) {
  if (cfg.action == "run") {
    if (!cfg.fixture) throw UsageError("examples run needs a fixture name");
    return cmd_solve(cfg, out);
  }
  if (cfg.action != "list") {
    throw UsageError("examples action must be list or run");
  }
  if (cfg.format == Format::Json) {
    Json j = Json::array();
    for (const auto& name : fixture_names()) {
      const auto fx = get_fixture(name);
      j.push_back({{"name", name},
                   {"description", fx.description},
                   {"domain", fx.spec.domain.is_segment() ? "segment"
                                                          : "whole_line"},
                   {"window",
                    {fx.window.x0, fx.window.x1, fx.window.t0, fx.window.t1}}});
    }
    out << dump(j);
    return ExitCode::Ok;
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& name : fixture_names()) {
    rows.push_back({name, csv_quote(get_fixture(name).description)});
  }
  write_csv(out, {"name", "description"}, rows);
  return ExitCode::Ok;
}

int run_command(const std::string& name, const RunConfig& cfg,
                std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* dest = &out;
    if (!cfg.out.empty()) {
      file.open(cfg.out, std::ios::binary);
      if (!file) throw UsageError("cannot write " + cfg.out);
      dest = &file;
    }
    ExitCode code;
    if (name == "solve") {
      code = cmd_solve(cfg, *dest);
    } else if (name == "boundary") {
      code = cmd_boundary(cfg, *dest);
    } else if (name == "trace") {
      code = cmd_trace(cfg, *dest);
    } else if (name == "check") {
      code = cmd_check(cfg, *dest);
    } else if (name == "oracle") {
      code = cmd_oracle(cfg, *dest);
    } else if (name == "pinned-balls") {
      code = cmd_pinned(cfg, *dest);
    } else if (name == "examples") {
      code = cmd_examples(cfg, *dest);
    } else {
      throw UsageError("unknown command " + name);
    }
    dest->flush();
    return static_cast<int>(code);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Usage);
  } catch (const InvalidProblem& e) {
    err << "invalid problem: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InvalidProblem);
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::DomainError);
  } catch (const TraceError& e) {
    err << "trace failed at (" << e.x() << ", " << e.t() << "): " << e.what()
        << '\n';
    return static_cast<int>(ExitCode::TraceFailed);
  } catch (const InsufficientSamples& e) {
    err << "insufficient samples: " << e.what() << '\n';
    return static_cast<int>(ExitCode::InsufficientSamples);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ExitCode::Internal);
  }
}

}  // namespace freezeflow
