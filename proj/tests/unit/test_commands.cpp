#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "freezeflow/commands.hpp"
#include "freezeflow/io.hpp"

using namespace freezeflow;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::string& name, const RunConfig& cfg) {
  std::ostringstream out, err;
  int code = run_command(name, cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig fixture(const std::string& name) {
  RunConfig cfg;
  cfg.fixture = name;
  return cfg;
}

}  // namespace

TEST_CASE("solve reproduces the closed form") {
  auto cfg = fixture("abs_half");
  cfg.nx = 11;
  cfg.nt = 6;
  cfg.window = Window{-5.0, 5.0, 0.0, 2.0};
  cfg.format = Format::Json;
  auto r = run("solve", cfg);
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j["rows"].size() == 66);
  for (const auto& row : j["rows"]) {
    double x = row[0], t = row[1], v = row[2];
    double want = x <= 0.6 * t ? t - x : x <= 3 * t ? 2 * x / 3 : x - t;
    CHECK(v == doctest::Approx(want));
  }
}

TEST_CASE("commands are deterministic") {
  auto cfg = fixture("segment_unit");
  cfg.nx = 9;
  cfg.nt = 4;
  CHECK(run("solve", cfg).out == run("solve", cfg).out);
  RunConfig p;
  p.n = 12;
  p.steps = 400;
  p.seed = 5;
  p.stride = 100;
  CHECK(run("pinned-balls", p).out == run("pinned-balls", p).out);
}

TEST_CASE("exit codes") {
  CHECK(run("solve", fixture("no_such_fixture")).code ==
        static_cast<int>(ExitCode::InvalidProblem));
  auto bad_window = fixture("tent");
  bad_window.window = Window{5.0, 6.0, 0.0, 1.0};
  CHECK(run("solve", bad_window).code ==
        static_cast<int>(ExitCode::DomainError));
  CHECK(run("frobnicate", fixture("tent")).code ==
        static_cast<int>(ExitCode::Usage));
  CHECK(run("solve", RunConfig{}).code == static_cast<int>(ExitCode::Usage));
  auto ok = run("check", fixture("segment_unit"));
  CHECK(ok.code == 0);
}

TEST_CASE("check emits one report per check") {
  auto cfg = fixture("tent");
  cfg.format = Format::Json;
  auto r = run("check", cfg);
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j.is_array());
  for (const auto& rep : j) CHECK(rep["passed"] == true);
}

TEST_CASE("trace and oracle commands") {
  auto cfg = fixture("abs_half");
  cfg.x = 4.0;
  cfg.t = 1.0;
  cfg.format = Format::Json;
  auto r = run("trace", cfg);
  CHECK(r.code == 0);

  auto o = fixture("abs_half");
  o.samples = 5;
  CHECK(run("oracle", o).code == 0);
}

TEST_CASE("examples list names every fixture") {
  auto r = run("examples", RunConfig{});
  REQUIRE(r.code == 0);
  for (const auto& name : fixture_names())
    CHECK(r.out.find(name) != std::string::npos);
}
