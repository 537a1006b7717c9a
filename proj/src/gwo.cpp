#include "vfc/gwo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vfc::gwo {

void validate(const GwoParams& params) {
  if (params.search_agents < 3) {
    throw Error("search_agents must be >= 3, got " + std::to_string(params.search_agents));
  }
  if (params.iterations < 1) {
    throw Error("iterations must be >= 1, got " + std::to_string(params.iterations));
  }
  if (!(params.a0 > 0.0)) throw Error("a0 must be > 0");
}

double a_schedule(int t, double a0, int iterations) {
  return a0 - a0 * static_cast<double>(t) / static_cast<double>(iterations);
}

CoefficientDraw coefficients_from_uniforms(double a, const Eigen::ArrayXd& r1,
                                           const Eigen::ArrayXd& r2) {
  return {2.0 * a * r1 - a, 2.0 * r2};
}

CoefficientDraw draw_coefficients(double a, Eigen::Index dims, SplitMix64& rng) {
  Eigen::ArrayXd r1(dims), r2(dims);
  for (Eigen::Index d = 0; d < dims; ++d) r1[d] = rng.next_double();
  for (Eigen::Index d = 0; d < dims; ++d) r2[d] = rng.next_double();
  return coefficients_from_uniforms(a, r1, r2);
}

namespace {

// Keeps coordinates inside [lo, hi): the upper bound is approached but never
// reached, matching the decode range.
Position clamp_box(Position p, double lo, double hi) {
  const double top = std::nextafter(hi, lo);
  return p.max(lo).min(top);
}

Position leader_move(const Position& wolf, const Position& leader, double a,
                     SplitMix64& rng) {
  const CoefficientDraw draw = draw_coefficients(a, wolf.size(), rng);
  const Eigen::ArrayXd distance = (draw.C * leader - wolf).abs();
  return leader - draw.A * distance;
}

void offer_leader(PackState& pack, const Position& position, double score) {
  if (score > pack.alpha.score) {
    pack.delta = std::move(pack.beta);
    pack.beta = std::move(pack.alpha);
    pack.alpha = {position, score};
  } else if (score > pack.beta.score) {
    pack.delta = std::move(pack.beta);
    pack.beta = {position, score};
  } else if (score > pack.delta.score) {
    pack.delta = {position, score};
  }
}

}  // namespace

Position hunt_update(const Position& wolf, const PackState& pack, double a, double lo,
                     double hi, SplitMix64& rng) {
  const Position x1 = leader_move(wolf, pack.alpha.position, a, rng);
  const Position x2 = leader_move(wolf, pack.beta.position, a, rng);
  const Position x3 = leader_move(wolf, pack.delta.position, a, rng);
  return clamp_box((x1 + x2 + x3) / 3.0, lo, hi);
}

std::vector<int> decode(const Position& position, int node_count) {
  std::vector<int> preferred(position.size());
  for (Eigen::Index d = 0; d < position.size(); ++d) {
    const long rounded = std::lround(position[d]);
    preferred[d] = static_cast<int>(std::clamp<long>(rounded, 0, node_count - 1));
  }
  return preferred;
}

BoxResult maximize(const BoxObjective& objective, const GwoParams& params,
                   const IterationObserver& observer) {
  validate(params);
  if (objective.dims < 1) throw Error("objective must have at least one dimension");
  if (!(objective.lo < objective.hi)) throw Error("objective box is empty");

  const int m = params.search_agents;
  std::vector<Position> pack_positions(m);
  for (int j = 0; j < m; ++j) {
    SplitMix64 rng(substream_seed(params.seed, 0, static_cast<std::uint64_t>(j)));
    Position p(objective.dims);
    for (Eigen::Index d = 0; d < objective.dims; ++d) {
      p[d] = rng.next_in(objective.lo, objective.hi);
    }
    pack_positions[j] = std::move(p);
  }

  PackState pack;
  const double lowest = -std::numeric_limits<double>::infinity();
  pack.alpha.score = pack.beta.score = pack.delta.score = lowest;
  for (int j = 0; j < m; ++j) {
    offer_leader(pack, pack_positions[j], objective.score(pack_positions[j]));
  }

  pack.trace.reserve(params.iterations);
  for (int t = 0; t < params.iterations; ++t) {
    const double a = a_schedule(t, params.a0, params.iterations);
    for (int j = 0; j < m; ++j) {
      SplitMix64 rng(substream_seed(params.seed, static_cast<std::uint64_t>(t) + 1,
                                    static_cast<std::uint64_t>(j)));
      pack_positions[j] =
          hunt_update(pack_positions[j], pack, a, objective.lo, objective.hi, rng);
    }
    for (int j = 0; j < m; ++j) {
      offer_leader(pack, pack_positions[j], objective.score(pack_positions[j]));
    }
    pack.trace.push_back(pack.alpha.score);
    if (observer) observer(t, pack);
  }

  return {pack.alpha.position, pack.alpha.score, std::move(pack.trace)};
}

OptimizeResult optimize(const Workload& workload, std::span<const ComputeNode> nodes,
                        const CostRates& rates, const Weights& weights,
                        const GwoParams& params, const SimOptions& options,
                        const IterationObserver& observer) {
  if (workload.empty()) throw EmptyWorkloadError("cannot optimize an empty workload");
  if (nodes.empty()) throw Error("cannot optimize without compute nodes");

  const int node_count = static_cast<int>(nodes.size());
  BoxObjective objective;
  objective.dims = static_cast<Eigen::Index>(workload.size());
  objective.lo = 0.0;
  objective.hi = static_cast<double>(node_count);
  objective.score = [&](const Position& position) {
    const auto preference = decode(position, node_count);
    return simulate(workload, nodes, preference, rates, weights, options).metrics.fitness;
  };

  BoxResult box = maximize(objective, params, observer);

  OptimizeResult result;
  result.best_position = std::move(box.best_position);
  result.trace = std::move(box.trace);
  // The simulation is pure, so re-running the winner reproduces the exact
  // schedule that produced the best score.
  result.schedule = simulate(workload, nodes, decode(result.best_position, node_count),
                             rates, weights, options);
  return result;
}

}  // namespace vfc::gwo
