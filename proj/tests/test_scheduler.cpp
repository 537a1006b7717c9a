#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "event_oracle.hpp"
#include "vfc/rng.hpp"
#include "vfc/scheduler.hpp"

using namespace vfc;

namespace {

// Table-3 inventory: 5 static, 10 dynamic, 2 cloud nodes.
std::vector<ComputeNode> table3_nodes() {
  std::vector<ComputeNode> nodes;
  int id = 0;
  for (int c : {2, 5, 6, 1, 2}) nodes.push_back({id++, Tier::StaticFog, c});
  for (int c : {5, 2, 3, 4, 2, 4, 3, 5, 1, 4}) nodes.push_back({id++, Tier::DynamicFog, c});
  for (int c : {20, 12}) nodes.push_back({id++, Tier::Cloud, c});
  return nodes;
}

const CostRates kRates{};
const Weights kWeights{};

Workload random_workload(SplitMix64& rng, int max_tasks, int max_cores) {
  Workload w;
  const int n = rng.next_int(1, max_tasks);
  for (int i = 0; i < n; ++i) {
    // coarse duration grid so distinct tasks often share boundaries
    const double dur = 0.5 * rng.next_int(1, 20);
    w.push_back({i, rng.next_int(1, max_cores), dur});
  }
  return w;
}

void check_against_oracle(const Workload& w, std::span<const ComputeNode> nodes,
                          std::span<const int> pref, const SimOptions& opts) {
  const auto got = simulate(w, nodes, pref, kRates, kWeights, opts);
  const auto want = oracle::simulate(w, nodes, pref, opts);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CAPTURE(i);
    CHECK(got.placements[i].start_s == want[i].start);
    CHECK(got.placements[i].timing.wait_s == want[i].wait);
    CHECK(got.placements[i].timing.processing_s == want[i].processing);
    CHECK(got.placements[i].timing.finish_s == want[i].finish);
  }
}

}  // namespace

TEST_CASE("earliest_slot basics") {
  NodeTimeline tl({0, Tier::StaticFog, 3});
  CHECK(tl.earliest_slot(2, 4.0) == 0.0);

  tl.reserve(0.0, 5.0, 3);
  CHECK(tl.earliest_slot(1, 2.0) == 5.0);
  CHECK_THROWS_AS(tl.earliest_slot(4, 1.0), NeverFitsError);
}

TEST_CASE("earliest_slot finds interior gaps and respects partial occupancy") {
  NodeTimeline tl({0, Tier::StaticFog, 3});
  tl.reserve(0.0, 2.0, 3);
  tl.reserve(6.0, 2.0, 3);
  CHECK(tl.earliest_slot(3, 4.0) == 2.0);   // exact-fit gap
  CHECK(tl.earliest_slot(3, 5.0) == 8.0);   // gap too small

  NodeTimeline tl2({1, Tier::StaticFog, 4});
  tl2.reserve(0.0, 10.0, 2);
  CHECK(tl2.earliest_slot(2, 3.0) == 0.0);  // two cores still free
  CHECK(tl2.earliest_slot(3, 3.0) == 10.0);
}

TEST_CASE("two tasks on one small node queue up") {
  const Workload w{{0, 3, 5.0}, {1, 1, 5.0}};
  const std::vector<ComputeNode> nodes{{0, Tier::StaticFog, 3}};
  const auto result = simulate(w, nodes, {}, kRates, kWeights);

  CHECK(result.placements[0].timing.wait_s == 0.0);
  CHECK(result.placements[0].timing.finish_s == 5.0);
  CHECK(result.placements[1].timing.wait_s == 5.0);
  CHECK(result.placements[1].timing.finish_s == 10.0);
  CHECK(result.metrics.makespan_s == 10.0);
  CHECK(result.metrics.wait_max_s == 5.0);
  CHECK(result.metrics.wait_mean_s == 2.5);
}

TEST_CASE("a fitting preferred node runs without waiting") {
  const Workload w{{0, 2, 7.0}};
  const auto nodes = table3_nodes();
  const std::vector<int> pref{6};  // dynamic node, 2 cores
  const auto result = simulate(w, nodes, pref, kRates, kWeights);
  CHECK(result.placements[0].timing.wait_s == 0.0);
  CHECK(result.placements[0].timing.processing_s == 7.0);
  CHECK(result.placements[0].slices.size() == 1);
  CHECK(result.placements[0].slices[0].node_id == 6);
}

TEST_CASE("a demand larger than every node splits across the cloud tier") {
  const Workload w{{0, 30, 4.0}};
  const auto nodes = table3_nodes();
  const auto result = simulate(w, nodes, {}, kRates, kWeights);

  REQUIRE(result.placements[0].slices.size() == 2);
  int total = 0;
  for (const CoreSlice& s : result.placements[0].slices) {
    CHECK(node_by_id(nodes, s.node_id).tier == Tier::Cloud);
    total += s.cores;
  }
  CHECK(total == 30);
  CHECK(result.placements[0].slices[0].node_id == 15);  // 20-core node first
  CHECK(result.placements[0].slices[0].cores == 20);
  CHECK(result.placements[0].slices[1].cores == 10);
  CHECK(validate(result.assignment, nodes, w).empty());
}

TEST_CASE("a demand beyond the cloud widens into fog tiers; beyond everything fails") {
  const auto nodes = table3_nodes();  // 16 + 33 + 32 cores
  const Workload big{{0, 40, 2.0}};
  const auto result = simulate(big, nodes, {}, kRates, kWeights);
  int total = 0;
  bool saw_dynamic = false;
  for (const CoreSlice& s : result.placements[0].slices) {
    total += s.cores;
    saw_dynamic |= node_by_id(nodes, s.node_id).tier == Tier::DynamicFog;
  }
  CHECK(total == 40);
  CHECK(saw_dynamic);

  const Workload impossible{{0, 100, 2.0}};
  CHECK_THROWS_AS(simulate(impossible, nodes, {}, kRates, kWeights), InfeasibleError);
}

TEST_CASE("start race: the preference wins ties but loses later starts") {
  // Node 0: static 2 cores. Node 1: dynamic 2 cores.
  const std::vector<ComputeNode> nodes{{0, Tier::StaticFog, 2}, {1, Tier::DynamicFog, 2}};
  const Workload w{{0, 2, 5.0}, {1, 2, 5.0}, {2, 2, 5.0}};
  const std::vector<int> pref{1, 1, 1};

  SimOptions race;
  race.preference_rule = PreferenceRule::StartRace;
  const auto result = simulate(w, nodes, pref, kRates, kWeights, race);

  // Task 0: both start at 0 -> preference (dynamic). Task 1: dynamic busy
  // until 5, static idle -> tier choice. Task 2: both busy until 5 ->
  // preference again.
  CHECK(result.placements[0].slices[0].node_id == 1);
  CHECK(result.placements[1].slices[0].node_id == 0);
  CHECK(result.placements[2].slices[0].node_id == 1);
  CHECK(result.placements[2].timing.wait_s == 5.0);
}

TEST_CASE("capacity-only rule sticks with the preferred node despite queueing") {
  const std::vector<ComputeNode> nodes{{0, Tier::StaticFog, 2}, {1, Tier::DynamicFog, 2}};
  const Workload w{{0, 2, 5.0}, {1, 2, 5.0}, {2, 2, 5.0}};
  const std::vector<int> pref{1, 1, 1};

  SimOptions opts;
  opts.preference_rule = PreferenceRule::CapacityOnly;
  const auto result = simulate(w, nodes, pref, kRates, kWeights, opts);
  for (int i = 0; i < 3; ++i) CHECK(result.placements[i].slices[0].node_id == 1);
  CHECK(result.metrics.makespan_s == 15.0);
}

TEST_CASE("tier priority is honored whenever a static node has the capacity") {
  SplitMix64 rng(11);
  const auto nodes = table3_nodes();
  for (int round = 0; round < 20; ++round) {
    const auto w = random_workload(rng, 12, 6);
    const auto result = simulate(w, nodes, {}, kRates, kWeights);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Tier chosen = node_by_id(nodes, result.placements[i].slices[0].node_id).tier;
      // All demands <= 6 fit some static node, so nothing may leave the tier.
      CHECK(chosen == Tier::StaticFog);
    }
  }
}

TEST_CASE("processing order is by descending demand, ties by id") {
  const Workload w{{0, 2, 1.0}, {1, 5, 1.0}, {2, 2, 1.0}, {3, 5, 1.0}};
  const auto order = detail::demand_order(w, true);
  CHECK(order == std::vector<std::size_t>{1, 3, 0, 2});
  const auto asc = detail::demand_order(w, false);
  CHECK(asc == std::vector<std::size_t>{0, 2, 1, 3});
}

TEST_CASE("capacity is never exceeded when reservations are replayed") {
  SplitMix64 rng(99);
  const auto nodes = table3_nodes();
  for (int round = 0; round < 30; ++round) {
    const auto w = random_workload(rng, 15, 25);  // some demands force splits
    const auto result = simulate(w, nodes, {}, kRates, kWeights);

    std::map<int, std::vector<std::pair<double, int>>> deltas;
    for (const auto& p : result.placements) {
      for (const auto& s : p.slices) {
        deltas[s.node_id].push_back({p.start_s, s.cores});
        deltas[s.node_id].push_back({p.timing.finish_s, -s.cores});
      }
    }
    for (auto& [node_id, events] : deltas) {
      std::sort(events.begin(), events.end());
      int used = 0;
      for (auto [t, d] : events) {
        used += d;
        CHECK(used <= node_by_id(nodes, node_id).cores);
      }
      CHECK(used == 0);
    }
    CHECK(validate(result.assignment, nodes, w).empty());
  }
}

TEST_CASE("simulation is deterministic") {
  SplitMix64 rng(5);
  const auto nodes = table3_nodes();
  const auto w = random_workload(rng, 20, 6);
  const auto a = simulate(w, nodes, {}, kRates, kWeights);
  const auto b = simulate(w, nodes, {}, kRates, kWeights);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(a.placements[i].start_s == b.placements[i].start_s);
    CHECK(a.placements[i].slices[0].node_id == b.placements[i].slices[0].node_id);
  }
  CHECK(a.metrics.fitness == b.metrics.fitness);
}

TEST_CASE("timings always satisfy finish = wait + processing and the makespan") {
  SplitMix64 rng(123);
  const auto nodes = table3_nodes();
  for (int round = 0; round < 20; ++round) {
    const auto w = random_workload(rng, 10, 8);
    const auto result = simulate(w, nodes, {}, kRates, kWeights);
    double makespan = 0.0;
    for (const auto& p : result.placements) {
      CHECK(p.timing.finish_s == p.timing.wait_s + p.timing.processing_s);
      makespan = std::max(makespan, p.timing.finish_s);
    }
    CHECK(result.metrics.makespan_s == makespan);
    CHECK(result.metrics.cost >= ideal_cost(w, kRates));
    CHECK(result.metrics.fitness > 0.0);
    CHECK(result.metrics.fitness <= 1.0);
  }
}

TEST_CASE("matches the brute-force event oracle on small random instances") {
  SplitMix64 rng(321);
  for (int round = 0; round < 60; ++round) {
    const int n_nodes = rng.next_int(1, 3);
    std::vector<ComputeNode> nodes;
    for (int j = 0; j < n_nodes; ++j) {
      const Tier tier = static_cast<Tier>(rng.next_int(0, 2));
      nodes.push_back({j, tier, rng.next_int(1, 4)});
    }
    const auto w = random_workload(rng, 8, 5);

    int total = 0;
    for (const auto& n : nodes) total += n.cores;
    bool feasible = true;
    for (const auto& t : w) feasible &= t.cores <= total;
    if (!feasible) continue;

    std::vector<int> pref;
    SimOptions opts;
    if (rng.next_below(2)) {
      for (std::size_t i = 0; i < w.size(); ++i) {
        pref.push_back(rng.next_int(0, n_nodes - 1));
      }
      opts.preference_rule =
          rng.next_below(2) ? PreferenceRule::StartRace : PreferenceRule::CapacityOnly;
    }
    CAPTURE(round);
    check_against_oracle(w, nodes, pref, opts);
  }
}

TEST_CASE("cloud transfer seconds extend occupancy of cloud placements only") {
  const std::vector<ComputeNode> nodes{{0, Tier::Cloud, 4}, {1, Tier::StaticFog, 1}};
  SimOptions opts;
  opts.cloud_transfer_seconds = 2.5;

  const Workload w{{0, 4, 10.0}, {1, 1, 10.0}};
  const auto result = simulate(w, nodes, {}, kRates, kWeights, opts);
  CHECK(result.placements[0].timing.processing_s == 12.5);  // cloud
  CHECK(result.placements[1].timing.processing_s == 10.0);  // static
}
