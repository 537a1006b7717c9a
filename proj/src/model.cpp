#include "vfc/model.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace vfc {

const char* tier_name(Tier t) {
  switch (t) {
    case Tier::StaticFog: return "static";
    case Tier::DynamicFog: return "dynamic";
    case Tier::Cloud: return "cloud";
  }
  return "?";
}

bool weights_valid(const Weights& w) {
  return w.cost_weight > 0.0 && w.cost_weight < 1.0 && w.makespan_weight > 0.0 &&
         w.makespan_weight < 1.0 &&
         std::abs(w.cost_weight + w.makespan_weight - 1.0) <= 1e-12;
}

const ComputeNode& node_by_id(std::span<const ComputeNode> nodes, int id) {
  for (const ComputeNode& n : nodes) {
    if (n.id == id) return n;
  }
  throw Error("unknown node id " + std::to_string(id));
}

double processing_time(const Task& task, std::span<const CoreSlice> row) {
  if (row.empty()) {
    throw UnassignedTaskError("task " + std::to_string(task.id) +
                              " has no assigned compute node");
  }
  return task.duration_s;
}

double fog_cost(const Task& task, std::span<const CoreSlice> row,
                std::span<const ComputeNode> nodes, const CostRates& rates) {
  double cost = 0.0;
  for (const CoreSlice& slice : row) {
    const ComputeNode& node = node_by_id(nodes, slice.node_id);
    switch (node.tier) {
      case Tier::StaticFog:
        cost += slice.cores * task.duration_s * rates.static_per_core_s;
        break;
      case Tier::DynamicFog:
        cost += slice.cores * task.duration_s * rates.dynamic_per_core_s;
        break;
      case Tier::Cloud:
        throw TierMismatchError("cloud node " + std::to_string(node.id) +
                                " in fog cost of task " + std::to_string(task.id));
    }
  }
  return cost;
}

double cloud_cost(const Task& task, std::span<const CoreSlice> row,
                  std::span<const ComputeNode> nodes, const CostRates& rates) {
  if (row.empty()) return 0.0;
  double cost = 0.0;
  for (const CoreSlice& slice : row) {
    const ComputeNode& node = node_by_id(nodes, slice.node_id);
    if (node.tier != Tier::Cloud) {
      throw TierMismatchError("fog node " + std::to_string(node.id) +
                              " in cloud cost of task " + std::to_string(task.id));
    }
    cost += slice.cores * task.duration_s * rates.cloud_per_core_s;
  }
  // One transfer fee per cloud-executed task, not per slice.
  return cost + rates.cloud_transfer_fee;
}

double total_cost(const Workload& workload, const Assignment& assignment,
                  std::span<const ComputeNode> nodes, const CostRates& rates) {
  if (assignment.rows.size() != workload.size()) {
    throw Error("assignment rows do not match workload size");
  }
  double total = 0.0;
  std::vector<CoreSlice> fog_part, cloud_part;
  for (std::size_t i = 0; i < workload.size(); ++i) {
    const auto& row = assignment.rows[i];
    if (row.empty()) {
      throw UnassignedTaskError("task " + std::to_string(workload[i].id) +
                                " has no assigned compute node");
    }
    fog_part.clear();
    cloud_part.clear();
    for (const CoreSlice& slice : row) {
      if (node_by_id(nodes, slice.node_id).tier == Tier::Cloud) {
        cloud_part.push_back(slice);
      } else {
        fog_part.push_back(slice);
      }
    }
    total += fog_cost(workload[i], fog_part, nodes, rates);
    total += cloud_cost(workload[i], cloud_part, nodes, rates);
  }
  return total;
}

double ideal_cost(const Workload& workload, const CostRates& rates) {
  const double rate = std::min(rates.static_per_core_s, rates.dynamic_per_core_s);
  double total = 0.0;
  for (const Task& t : workload) total += t.cores * t.duration_s * rate;
  return total;
}

double ideal_makespan(const Workload& workload, IdealMakespanRule rule) {
  if (workload.empty()) throw EmptyWorkloadError("ideal makespan of empty workload");
  double value = workload.front().duration_s;
  for (const Task& t : workload) {
    value = rule == IdealMakespanRule::MinDuration ? std::min(value, t.duration_s)
                                                   : std::max(value, t.duration_s);
  }
  return value;
}

double fitness(double cost, double makespan_s, double ideal_cost_value,
               double ideal_makespan_s, const Weights& w) {
  if (cost == 0.0 || makespan_s == 0.0) {
    throw DivisionByZeroError("fitness with zero cost or zero makespan");
  }
  return w.cost_weight * (ideal_cost_value / cost) +
         w.makespan_weight * (ideal_makespan_s / makespan_s);
}

std::vector<Violation> validate(const Assignment& assignment,
                                std::span<const ComputeNode> nodes,
                                const Workload& workload) {
  std::vector<Violation> violations;
  const auto n_tasks = static_cast<long>(workload.size());
  std::unordered_map<int, long> entries_per_node;

  for (std::size_t i = 0; i < workload.size(); ++i) {
    const auto& row = i < assignment.rows.size() ? assignment.rows[i]
                                                 : std::vector<CoreSlice>{};
    if (row.empty()) {
      violations.push_back({Violation::Kind::UnassignedTask, workload[i].id,
                            "task " + std::to_string(workload[i].id) +
                                " has no compute entries"});
      continue;
    }
    for (const CoreSlice& slice : row) ++entries_per_node[slice.node_id];
  }

  for (const ComputeNode& node : nodes) {
    auto it = entries_per_node.find(node.id);
    if (it != entries_per_node.end() && it->second > n_tasks) {
      violations.push_back({Violation::Kind::NodeOverloaded, node.id,
                            "node " + std::to_string(node.id) + " serves " +
                                std::to_string(it->second) + " entries for " +
                                std::to_string(n_tasks) + " tasks"});
    }
  }
  return violations;
}

void validate_workload(const Workload& workload) {
  std::unordered_set<int> ids;
  for (const Task& t : workload) {
    if (!ids.insert(t.id).second) {
      throw ParseError("duplicate task id " + std::to_string(t.id));
    }
    if (t.cores < 1) {
      throw ParseError("task " + std::to_string(t.id) + ": cores must be >= 1");
    }
    if (!(t.duration_s > 0.0)) {
      throw ParseError("task " + std::to_string(t.id) + ": duration_s must be > 0");
    }
  }
}

}  // namespace vfc
