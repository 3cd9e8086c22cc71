#include <doctest.h>

#include <algorithm>

#include "freezeflow/errors.hpp"
#include "freezeflow/pinned_balls.hpp"

using namespace freezeflow;

TEST_CASE("collide orders one pair") {
  BallState s{{3.0, 1.0}, 0, 0};
  auto n = collide(s, 1);
  CHECK(n.velocities == std::vector<double>{1.0, 3.0});
  CHECK(n.t == 1);
  CHECK(collide(n, 1).velocities == std::vector<double>{1.0, 3.0});

  BallState three{{2.0, 0.0, 1.0}, 0, 0};
  CHECK(collide(three, 2).velocities == std::vector<double>{2.0, 0.0, 1.0});
  CHECK(collide(three, 1).velocities == std::vector<double>{0.0, 2.0, 1.0});
}

TEST_CASE("collide range checks") {
  BallState s{{1.0, 2.0, 3.0}, 0, 0};
  CHECK_THROWS_AS(collide(s, 0), DomainError);
  CHECK_THROWS_AS(collide(s, 3), DomainError);
}

TEST_CASE("run with zero steps is the identity") {
  auto s = random_balls(10, 4);
  auto r = run(s, 0);
  CHECK(r.final_state.velocities == s.velocities);
  CHECK(r.final_state.t == 0);
}

TEST_CASE("sorted states are absorbing") {
  BallState s{{-1.0, 0.0, 0.5, 2.0}, 0, 9};
  auto r = run(s, 200, 50);
  CHECK(r.final_state.velocities == s.velocities);
  for (const auto& snap : r.snapshots) CHECK(is_sorted(snap));
}

TEST_CASE("random runs sort and conserve the multiset") {
  const std::size_t n = 50;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    auto s = random_balls(n, seed);
    for (double v : s.velocities) {
      CHECK(v >= -1.0);
      CHECK(v <= 1.0);
    }
    auto r = run(s, 50 * n * n, 5000);
    CHECK(is_sorted(r.final_state));
    CHECK(r.final_state.t == 50 * n * n);
    auto a = s.velocities, b = r.final_state.velocities;
    std::sort(a.begin(), a.end());
    CHECK(a == b);
    for (const auto& snap : r.snapshots) {
      auto c = snap.velocities;
      std::sort(c.begin(), c.end());
      CHECK(c == a);
    }
    CHECK(r.snapshots.front().t == 0);
    CHECK(r.snapshots.back().t == r.final_state.t);
  }
}

TEST_CASE("runs are deterministic in the seed") {
  auto s = random_balls(20, 8);
  CHECK(random_balls(20, 8).velocities == s.velocities);
  CHECK(run(s, 300).final_state.velocities ==
        run(s, 300).final_state.velocities);
  auto other = s;
  other.rng_seed = 99;
  std::mt19937_64 rng(1);
  auto r = run(other, 300, rng, 100);
  CHECK(r.snapshots.size() == 4);
}
