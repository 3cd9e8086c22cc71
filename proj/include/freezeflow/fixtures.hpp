#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "freezeflow/problem.hpp"
#include "freezeflow/window.hpp"

namespace freezeflow {

struct Fixture {
  std::string name;
  std::string description;
  ProblemSpec spec;
  Window window;  // where the interesting structure lives
};

std::vector<std::string> fixture_names();
// Throws InvalidProblem for an unknown name.
Fixture get_fixture(const std::string& name);

struct RandomSpecOptions {
  DomainKind kind = DomainKind::WholeLine;
  int max_breakpoints = 10;
  double max_slope = 2.0;  // per function; w gets at most twice this
};

// Seeded random admissible data: v is a random PL walk, w = v - g with a
// nonnegative PL gap g (zero patches give frozen stretches).  Segment data
// lives on [-L, L] with g = 0 at both ends.
ProblemSpec random_spec(std::uint64_t seed, const RandomSpecOptions& opts = {});

}  // namespace freezeflow
