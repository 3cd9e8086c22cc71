#include "freezeflow/pinned_balls.hpp"

#include <algorithm>
#include <string>

#include "freezeflow/errors.hpp"

namespace freezeflow {

void collide_in_place(BallState& state, std::size_t x) {
  const std::size_t n = state.velocities.size();
  if (x < 1 || x + 1 > n) {
    throw DomainError("collision index " + std::to_string(x) +
                      " outside [1, " + std::to_string(n == 0 ? 0 : n - 1) +
                      "]");
  }
  double& a = state.velocities[x - 1];
  double& b = state.velocities[x];
  if (b < a) std::swap(a, b);
  ++state.t;
}

BallState collide(const BallState& state, std::size_t x) {
  BallState next = state;
  collide_in_place(next, x);
  return next;
}

BallRun run(const BallState& state, std::uint64_t steps, std::mt19937_64& rng,
            std::uint64_t stride) {
  BallRun out;
  out.final_state = state;
  out.snapshots.push_back(state);
  const std::size_t n = state.velocities.size();
  if (steps > 0 && n < 2) {
    throw DomainError("random collisions need at least two balls");
  }
  std::uniform_int_distribution<std::size_t> pick(1, n < 2 ? 1 : n - 1);
  for (std::uint64_t s = 1; s <= steps; ++s) {
    collide_in_place(out.final_state, pick(rng));
    if (stride > 0 && s % stride == 0 && s != steps) {
      out.snapshots.push_back(out.final_state);
    }
  }
  if (steps > 0) out.snapshots.push_back(out.final_state);
  return out;
}

BallRun run(const BallState& state, std::uint64_t steps,
            std::uint64_t stride) {
  std::mt19937_64 rng(state.rng_seed);
  return run(state, steps, rng, stride);
}

BallState random_balls(std::size_t n, std::uint64_t seed) {
  // A separate stream from the one run() draws collisions from.
  std::seed_seq seq{seed, std::uint64_t{0x62616c6c}};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  BallState s;
  s.rng_seed = seed;
  s.velocities.resize(n);
  for (auto& v : s.velocities) v = u(rng);
  return s;
}

bool is_sorted(const BallState& state) {
  return std::is_sorted(state.velocities.begin(), state.velocities.end());
}

}  // namespace freezeflow
