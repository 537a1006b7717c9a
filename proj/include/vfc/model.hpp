#pragma once

#include <span>
#include <string>
#include <vector>

#include "vfc/errors.hpp"

namespace vfc {

/// One unit of work: a core demand held for a fixed duration.
struct Task {
  int id = 0;
  int cores = 1;          ///< requested core count, >= 1
  double duration_s = 0;  ///< resource occupancy time in seconds, > 0
};

using Workload = std::vector<Task>;

enum class Tier { StaticFog, DynamicFog, Cloud };

const char* tier_name(Tier t);

/// A static fog server, a parked-vehicle fog node, or a cloud VM.
struct ComputeNode {
  int id = 0;
  Tier tier = Tier::StaticFog;
  int cores = 1;
};

/// Per-tier price of one core-second, plus the flat fee charged once for
/// every task that touches the cloud.
struct CostRates {
  double static_per_core_s = 1.0;
  double dynamic_per_core_s = 0.5;
  double cloud_per_core_s = 2.0;
  double cloud_transfer_fee = 100.0;
};

/// Scalarization weights: cost_weight + makespan_weight must equal 1.
struct Weights {
  double cost_weight = 0.5;
  double makespan_weight = 0.5;
};

bool weights_valid(const Weights& w);

/// Cores allocated to one task on one node.
struct CoreSlice {
  int node_id = 0;
  int cores = 0;
};

/// Which node(s) serve each task. rows[i] belongs to workload[i]; a row with
/// several slices means the task runs concurrently on several nodes.
struct Assignment {
  std::vector<std::vector<CoreSlice>> rows;
};

/// Realized timing of one task. finish_s == wait_s + processing_s always.
struct TaskTiming {
  double wait_s = 0;
  double processing_s = 0;
  double finish_s = 0;
};

struct ScheduleMetrics {
  double makespan_s = 0;   ///< finish time of the last task
  double wait_max_s = 0;
  double wait_mean_s = 0;
  double cost = 0;         ///< total monetary cost, abstract currency
  double fitness = 0;      ///< weighted ratio score in (0, 1]
};

/// Reading of the normalization constant for the makespan ratio:
/// MinDuration uses the shortest zero-wait task time, MaxDuration the longest.
enum class IdealMakespanRule { MinDuration, MaxDuration };

/// Occupancy time of a task given its row. Independent of which nodes serve
/// it; the row only has to be nonempty.
double processing_time(const Task& task, std::span<const CoreSlice> row);

/// Cost of the fog-tier part of a row: sum of cores x duration x tier rate
/// over static and dynamic slices. Rejects cloud slices.
double fog_cost(const Task& task, std::span<const CoreSlice> row,
                std::span<const ComputeNode> nodes, const CostRates& rates);

/// Cost of the cloud part of a row, plus one transfer fee when the row is
/// nonempty. Rejects fog slices.
double cloud_cost(const Task& task, std::span<const CoreSlice> row,
                  std::span<const ComputeNode> nodes, const CostRates& rates);

/// Total monetary cost of a complete assignment.
double total_cost(const Workload& workload, const Assignment& assignment,
                  std::span<const ComputeNode> nodes, const CostRates& rates);

/// Cheapest conceivable cost: every task billed at the cheaper fog rate.
double ideal_cost(const Workload& workload, const CostRates& rates);

/// Zero-wait reference makespan used to normalize the time ratio.
double ideal_makespan(const Workload& workload,
                      IdealMakespanRule rule = IdealMakespanRule::MinDuration);

/// Weighted-ratio score: cost_weight * ideal_cost/cost +
/// makespan_weight * ideal_makespan/makespan. Higher is better; equals 1
/// exactly when both quantities reach their ideals.
double fitness(double cost, double makespan_s, double ideal_cost_value,
               double ideal_makespan_s, const Weights& w);

struct Violation {
  enum class Kind { UnassignedTask, NodeOverloaded };
  Kind kind;
  int subject_id;  ///< task id or node id
  std::string detail;
};

/// Checks the two structural constraints: every task covered by at least one
/// slice, and no node carrying more entries than there are tasks. Empty
/// result means the assignment is valid.
std::vector<Violation> validate(const Assignment& assignment,
                                std::span<const ComputeNode> nodes,
                                const Workload& workload);

/// Rejects duplicate ids and non-positive demands/durations.
void validate_workload(const Workload& workload);

const ComputeNode& node_by_id(std::span<const ComputeNode> nodes, int id);

}  // namespace vfc
