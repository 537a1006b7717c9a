#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "vfc/gwo.hpp"

using namespace vfc;
using namespace vfc::gwo;

namespace {

const CostRates kRates{};
const Weights kWeights{};

BoxObjective sphere(int dims) {
  BoxObjective obj;
  obj.dims = dims;
  obj.lo = -10.0;
  obj.hi = 10.0;
  obj.score = [](const Position& x) { return -x.square().sum(); };
  return obj;
}

// Frozen from a seeded run of this suite (seed 42, 30 agents, 100 iterations).
constexpr double kSphereGoldenBest = 3.652239559466708e-58;

}  // namespace

TEST_CASE("the convergence coefficient decays linearly") {
  CHECK(a_schedule(0, 2.0, 100) == 2.0);
  CHECK(a_schedule(100, 2.0, 100) == 0.0);
  CHECK(a_schedule(50, 2.0, 100) == 1.0);

  // exact linearity between arbitrary points
  for (int t1 = 0; t1 <= 80; t1 += 13) {
    for (int t2 = t1 + 1; t2 <= 100; t2 += 17) {
      const double lhs = a_schedule(t1, 3.0, 100) - a_schedule(t2, 3.0, 100);
      const double rhs = 3.0 * (t2 - t1) / 100.0;
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("coefficient mapping endpoints") {
  Eigen::ArrayXd r1(3), r2(3);
  r1 << 0.0, 0.5, 1.0;
  r2 << 0.0, 0.5, 1.0;
  const auto draw = coefficients_from_uniforms(2.0, r1, r2);
  CHECK(draw.A[0] == -2.0);
  CHECK(draw.A[1] == 0.0);
  CHECK(draw.A[2] == 2.0);  // boundary r1 = 1
  CHECK(draw.C[0] == 0.0);
  CHECK(draw.C[1] == 1.0);
  CHECK(draw.C[2] == 2.0);

  const auto zero = coefficients_from_uniforms(0.0, r1, r2);
  for (int d = 0; d < 3; ++d) CHECK(zero.A[d] == 0.0);
}

TEST_CASE("coefficient draws are in range and deterministic") {
  SplitMix64 rng1(9), rng2(9);
  const auto a = draw_coefficients(1.5, 64, rng1);
  const auto b = draw_coefficients(1.5, 64, rng2);
  for (int d = 0; d < 64; ++d) {
    CHECK(a.A[d] == b.A[d]);
    CHECK(a.C[d] == b.C[d]);
    CHECK(a.A[d] >= -1.5);
    CHECK(a.A[d] <= 1.5);
    CHECK(a.C[d] >= 0.0);
    CHECK(a.C[d] <= 2.0);
  }
}

TEST_CASE("hunt update fixes points and averages leaders when a = 0") {
  PackState pack;
  Position p(2);
  p << 3.0, 4.0;
  pack.alpha = {p, 1.0};
  pack.beta = {p, 0.9};
  pack.delta = {p, 0.8};

  SplitMix64 rng(1);
  const Position moved = hunt_update(p, pack, 0.0, 0.0, 10.0, rng);
  CHECK(moved[0] == 3.0);
  CHECK(moved[1] == 4.0);

  Position l1(1), l2(1), l3(1), wolf(1);
  l1 << 1.0;
  l2 << 2.0;
  l3 << 3.0;
  wolf << 9.0;
  pack.alpha = {l1, 1.0};
  pack.beta = {l2, 0.9};
  pack.delta = {l3, 0.8};
  const Position mean = hunt_update(wolf, pack, 0.0, 0.0, 10.0, rng);
  CHECK(mean[0] == 2.0);  // centroid regardless of the wolf's position
}

TEST_CASE("updates never leave the position box") {
  SplitMix64 seeds(33);
  PackState pack;
  for (int round = 0; round < 200; ++round) {
    const int dims = 3;
    auto draw_pos = [&] {
      Position p(dims);
      for (int d = 0; d < dims; ++d) p[d] = seeds.next_in(-5.0, 25.0);
      return p;
    };
    pack.alpha = {draw_pos(), 1.0};
    pack.beta = {draw_pos(), 0.9};
    pack.delta = {draw_pos(), 0.8};
    SplitMix64 rng(seeds.next());
    const Position moved = hunt_update(draw_pos(), pack, 2.0, 0.0, 17.0, rng);
    for (int d = 0; d < dims; ++d) {
      CHECK(moved[d] >= 0.0);
      CHECK(moved[d] < 17.0);
    }
  }
}

TEST_CASE("decode rounds to the nearest node and clamps") {
  Position p(3);
  p << 2.4, -0.7, 7.9;
  const auto idx = decode(p, 5);
  CHECK(idx == std::vector<int>{2, 0, 4});
}

TEST_CASE("sphere self-test reaches the frozen golden optimum") {
  GwoParams params;
  params.search_agents = 30;
  params.iterations = 100;
  params.a0 = 2.0;
  params.seed = 42;

  const auto result = maximize(sphere(2), params);
  const double best_value = -result.best_score;  // objective was negated
  CHECK(best_value < 1e-4);
  CHECK(best_value == doctest::Approx(kSphereGoldenBest).epsilon(1e-6));

  for (std::size_t t = 1; t < result.trace.size(); ++t) {
    CHECK(result.trace[t] >= result.trace[t - 1]);
  }
  CHECK(result.trace.size() == static_cast<std::size_t>(params.iterations));
}

TEST_CASE("identical seeds give bit-identical traces and solutions") {
  GwoParams params;
  params.search_agents = 12;
  params.iterations = 40;
  params.seed = 777;

  const auto a = maximize(sphere(4), params);
  const auto b = maximize(sphere(4), params);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t t = 0; t < a.trace.size(); ++t) CHECK(a.trace[t] == b.trace[t]);
  for (int d = 0; d < 4; ++d) CHECK(a.best_position[d] == b.best_position[d]);

  GwoParams other = params;
  other.seed = 778;
  const auto c = maximize(sphere(4), other);
  CHECK(c.best_score != a.best_score);
}

TEST_CASE("leader scores stay ordered after every iteration") {
  GwoParams params;
  params.search_agents = 10;
  params.iterations = 30;
  params.seed = 5;

  int calls = 0;
  maximize(sphere(3), params, [&](int, const PackState& pack) {
    ++calls;
    CHECK(pack.alpha.score >= pack.beta.score);
    CHECK(pack.beta.score >= pack.delta.score);
  });
  CHECK(calls == params.iterations);
}

TEST_CASE("invalid parameters are rejected") {
  GwoParams params;
  params.search_agents = 2;
  CHECK_THROWS_AS(gwo::validate(params), Error);
  params.search_agents = 3;
  params.iterations = 0;
  CHECK_THROWS_AS(gwo::validate(params), Error);
  params.iterations = 1;
  params.a0 = 0.0;
  CHECK_THROWS_AS(gwo::validate(params), Error);
}

TEST_CASE("one task on one node reproduces the closed-form fitness") {
  const Workload w{{0, 2, 10.0}};
  const std::vector<ComputeNode> nodes{{0, Tier::StaticFog, 4}};
  GwoParams params;
  params.search_agents = 4;
  params.iterations = 5;
  params.seed = 1;

  const auto result = optimize(w, nodes, kRates, kWeights, params);
  // Only schedule: 2 cores on the static node, no waiting.
  const double cost = 2 * 10.0 * kRates.static_per_core_s;
  const double ideal =
      2 * 10.0 * std::min(kRates.static_per_core_s, kRates.dynamic_per_core_s);
  const double expected =
      kWeights.cost_weight * (ideal / cost) + kWeights.makespan_weight * (10.0 / 10.0);
  CHECK(result.schedule.metrics.fitness == doctest::Approx(expected).epsilon(1e-12));
  CHECK(result.trace.size() == 5);
}

TEST_CASE("scheduling optimization is reproducible and its trace monotone") {
  Workload w;
  SplitMix64 rng(2);
  for (int i = 0; i < 8; ++i) w.push_back({i, rng.next_int(1, 4), 1.0 * rng.next_int(1, 10)});
  const std::vector<ComputeNode> nodes{{0, Tier::StaticFog, 4},
                                       {1, Tier::DynamicFog, 3},
                                       {2, Tier::DynamicFog, 2},
                                       {3, Tier::Cloud, 6}};
  GwoParams params;
  params.search_agents = 8;
  params.iterations = 25;
  params.seed = 9;

  const auto a = optimize(w, nodes, kRates, kWeights, params);
  const auto b = optimize(w, nodes, kRates, kWeights, params);
  CHECK(a.schedule.metrics.fitness == b.schedule.metrics.fitness);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t t = 0; t < a.trace.size(); ++t) {
    CHECK(a.trace[t] == b.trace[t]);
    if (t) CHECK(a.trace[t] >= a.trace[t - 1]);
  }
  // final trace entry matches the returned schedule's fitness
  CHECK(a.trace.back() == a.schedule.metrics.fitness);
  CHECK(validate(a.schedule.assignment, nodes, w).empty());
}

TEST_CASE("wall clock grows about linearly in agents x iterations") {
  Workload w;
  SplitMix64 rng(3);
  for (int i = 0; i < 30; ++i) w.push_back({i, rng.next_int(1, 5), 1.0 * rng.next_int(5, 50)});
  const std::vector<ComputeNode> nodes{{0, Tier::StaticFog, 5},
                                       {1, Tier::DynamicFog, 4},
                                       {2, Tier::Cloud, 8}};

  auto time_once = [&](int agents, int iterations) {
    GwoParams params;
    params.search_agents = agents;
    params.iterations = iterations;
    params.seed = 4;
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      optimize(w, nodes, kRates, kWeights, params);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
  };

  const double base = time_once(10, 40);
  const double doubled = time_once(20, 40);
  const double ratio = doubled / base;
  CHECK(ratio > 1.0);
  CHECK(ratio < 4.0);
}
