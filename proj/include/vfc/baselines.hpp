#pragma once

#include <cstdint>
#include <span>

#include "vfc/scheduler.hpp"

namespace vfc {

/// Uniformly random node per task (among nodes large enough for it), tasks
/// taken in input order, timing via the shared queueing simulation.
ScheduleResult random_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                               const CostRates& rates, const Weights& weights,
                               std::uint64_t seed, const SimOptions& options = {});

/// Ascending core demand, each task on the node that finishes it earliest.
/// The three list heuristics (min, max, met) share this placement engine and
/// differ only in their task ordering.
ScheduleResult min_based_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                                  const CostRates& rates, const Weights& weights,
                                  const SimOptions& options = {});

/// Descending core demand, earliest-finish placement.
ScheduleResult max_based_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                                  const CostRates& rates, const Weights& weights,
                                  const SimOptions& options = {});

/// Minimum-execution-time heuristic: shortest tasks first, earliest-finish
/// placement given current reservations, all tiers considered alike.
ScheduleResult met_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                            const CostRates& rates, const Weights& weights,
                            const SimOptions& options = {});

}  // namespace vfc
