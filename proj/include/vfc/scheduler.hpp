#pragma once

#include <map>
#include <span>
#include <vector>

#include "vfc/model.hpp"

namespace vfc {

/// Piecewise-constant core reservation profile of one node. Reservations are
/// half-open intervals [start, start + duration).
class NodeTimeline {
 public:
  explicit NodeTimeline(ComputeNode node) : node_(node) {}

  const ComputeNode& node() const { return node_; }

  /// Earliest start t >= 0 with `cores` free throughout [t, t + duration).
  double earliest_slot(int cores, double duration) const {
    return earliest_slot_after(0.0, cores, duration);
  }

  /// Same, constrained to t >= from.
  double earliest_slot_after(double from, int cores, double duration) const;

  void reserve(double start, double duration, int cores);

  /// Free cores during the segment beginning at time t.
  int free_cores_at(double t) const;

  const std::map<double, int>& usage_deltas() const { return deltas_; }

 private:
  ComputeNode node_;
  std::map<double, int> deltas_;  // time -> change in reserved cores
};

/// How a decoded optimizer preference interacts with the tier-priority scan.
///  - StartRace: the preferred node wins only if it starts the task no later
///    than the tier-priority pick.
///  - CapacityOnly: the preferred node always wins when it is large enough;
///    the scan is used purely as the fallback for infeasible preferences.
enum class PreferenceRule { StartRace, CapacityOnly };

struct SimOptions {
  /// Extra seconds added to a task's occupancy when it executes on the cloud.
  double cloud_transfer_seconds = 0.0;
  IdealMakespanRule ideal_makespan_rule = IdealMakespanRule::MinDuration;
  PreferenceRule preference_rule = PreferenceRule::StartRace;
};

struct PlacedTask {
  int task_id = 0;
  std::vector<CoreSlice> slices;
  double start_s = 0;
  TaskTiming timing;
};

struct ScheduleResult {
  std::vector<PlacedTask> placements;  ///< aligned with the workload order
  Assignment assignment;
  ScheduleMetrics metrics;
};

/// Tier-prioritized queueing simulation. Tasks are processed in descending
/// core demand (ties by ascending id) and every task is released at t = 0.
/// `preference`, when nonempty, gives one proposed node index per task
/// (indices into `nodes`); preferences too small for the task fall back to
/// the tier scan. Tasks larger than every single node are split, cloud tier
/// first, then dynamic, then static.
ScheduleResult simulate(const Workload& workload, std::span<const ComputeNode> nodes,
                        std::span<const int> preference, const CostRates& rates,
                        const Weights& weights, const SimOptions& options = {});

namespace detail {

/// Node choice rule shared by the tier scheduler and the baselines.
enum class Policy {
  TierPriority,       // static, then dynamic, then cloud; earliest start within tier
  MinFinishAllNodes,  // earliest finish across every node, no tier ordering
  ForcedNode,         // pre-drawn node per task (random baseline)
};

/// Core loop behind simulate() and the baselines: places `order[k]`-th tasks
/// one at a time against the node timelines and assembles the result.
ScheduleResult run_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                            std::span<const std::size_t> order, Policy policy,
                            std::span<const int> per_task_node, const CostRates& rates,
                            const Weights& weights, const SimOptions& options);

/// Descending demand, ties by ascending task id.
std::vector<std::size_t> demand_order(const Workload& workload, bool descending);

}  // namespace detail

}  // namespace vfc
