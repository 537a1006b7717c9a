#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "vfc/rng.hpp"
#include "vfc/scheduler.hpp"

namespace vfc::gwo {

using Position = Eigen::ArrayXd;

struct GwoParams {
  int search_agents = 30;  ///< pack size, >= 3 so the three leader roles exist
  int iterations = 100;
  double a0 = 2.0;         ///< initial value of the convergence coefficient
  std::uint64_t seed = 0;
};

void validate(const GwoParams& params);

/// Per-dimension step coefficients of one leader interaction.
struct CoefficientDraw {
  Eigen::ArrayXd A;  ///< each entry in [-a, a]
  Eigen::ArrayXd C;  ///< each entry in [0, 2]
};

struct ScoredWolf {
  Position position;
  double score = 0;
};

/// The three best solutions seen so far plus the per-iteration best-score
/// trace. score(alpha) >= score(beta) >= score(delta) throughout a run.
struct PackState {
  ScoredWolf alpha, beta, delta;
  std::vector<double> trace;
};

/// Convergence coefficient, decaying linearly from a0 at t = 0 to 0 at
/// t = iterations.
double a_schedule(int t, double a0, int iterations);

/// A = 2a*r1 - a and C = 2*r2 from explicit uniforms (one r1, r2 pair per
/// dimension). Split out so the endpoints are testable.
CoefficientDraw coefficients_from_uniforms(double a, const Eigen::ArrayXd& r1,
                                           const Eigen::ArrayXd& r2);

/// Random draw of the above; consumes 2*dims uniforms from `rng`, r1 first,
/// r2 second, dimension-major.
CoefficientDraw draw_coefficients(double a, Eigen::Index dims, SplitMix64& rng);

/// One position update: the mean of the three leader-guided moves, clamped
/// back into [lo, hi). Draws coefficients independently per leader, in
/// alpha, beta, delta order.
Position hunt_update(const Position& wolf, const PackState& pack, double a, double lo,
                     double hi, SplitMix64& rng);

/// Continuous position -> one preferred node index per task (round to
/// nearest, clamp into [0, node_count - 1]).
std::vector<int> decode(const Position& position, int node_count);

/// A box-bounded score function to maximize. Used directly by the self-test
/// benchmarks; the scheduling objective below is built on top of it.
struct BoxObjective {
  Eigen::Index dims = 0;
  double lo = 0;
  double hi = 1;
  std::function<double(const Position&)> score;
};

struct BoxResult {
  Position best_position;
  double best_score = 0;
  std::vector<double> trace;  ///< best score after each iteration, non-decreasing
};

using IterationObserver = std::function<void(int iteration, const PackState&)>;

/// The pack loop: uniform initialization over the box, leader selection,
/// `iterations` rounds of hunt updates. Deterministic for a fixed seed: the
/// wolf at index j in iteration t always draws from substream (t + 1, j),
/// initialization from substream (0, j).
BoxResult maximize(const BoxObjective& objective, const GwoParams& params,
                   const IterationObserver& observer = {});

struct OptimizeResult {
  Position best_position;
  ScheduleResult schedule;
  std::vector<double> trace;
};

/// Searches task->node preferences for the schedule with the best fitness.
/// Every evaluation decodes a position and runs the queueing simulation.
OptimizeResult optimize(const Workload& workload, std::span<const ComputeNode> nodes,
                        const CostRates& rates, const Weights& weights,
                        const GwoParams& params, const SimOptions& options = {},
                        const IterationObserver& observer = {});

}  // namespace vfc::gwo
