#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace freezeflow {

// Pseudo-velocities of n motionless balls at positions 1..n (stored 0-based).
struct BallState {
  std::vector<double> velocities;
  std::uint64_t t = 0;
  std::uint64_t rng_seed = 0;
};

// Orders the pair at 1-based positions (x, x + 1): the smaller velocity goes
// left.  Throws DomainError unless 1 <= x <= n - 1.
BallState collide(const BallState& state, std::size_t x);
// In-place form used by run().
void collide_in_place(BallState& state, std::size_t x);

struct BallRun {
  BallState final_state;
  // Snapshots at t = 0, stride, 2 stride, ... and the final step.
  std::vector<BallState> snapshots;
};

// Applies collide at uniformly random adjacent pairs for `steps` steps.
// stride = 0 records only the initial and final states.
BallRun run(const BallState& state, std::uint64_t steps, std::mt19937_64& rng,
            std::uint64_t stride = 0);
// Seeds a generator from state.rng_seed.
BallRun run(const BallState& state, std::uint64_t steps,
            std::uint64_t stride = 0);

// n velocities drawn uniformly from [-1, 1].
BallState random_balls(std::size_t n, std::uint64_t seed);

bool is_sorted(const BallState& state);

}  // namespace freezeflow
