#include "vfc/scheduler.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

namespace vfc {

double NodeTimeline::earliest_slot_after(double from, int cores, double duration) const {
  if (cores < 1) throw Error("reservation must request at least one core");
  if (cores > node_.cores) {
    throw NeverFitsError("node " + std::to_string(node_.id) + " has " +
                         std::to_string(node_.cores) + " cores, request needs " +
                         std::to_string(cores));
  }
  double candidate = from < 0.0 ? 0.0 : from;
  int used = 0;
  for (const auto& [t, delta] : deltas_) {
    if (t > candidate) {
      // Segment [prev, t) carries `used` reserved cores.
      if (node_.cores - used >= cores) {
        if (candidate + duration <= t) return candidate;
      } else {
        candidate = t;
      }
    }
    used += delta;
  }
  return candidate;  // tail is fully free
}

void NodeTimeline::reserve(double start, double duration, int cores) {
  if (cores < 1 || cores > node_.cores) {
    throw NeverFitsError("bad reservation of " + std::to_string(cores) +
                         " cores on node " + std::to_string(node_.id));
  }
  deltas_[start] += cores;
  deltas_[start + duration] -= cores;
}

int NodeTimeline::free_cores_at(double t) const {
  int used = 0;
  for (const auto& [time, delta] : deltas_) {
    if (time > t) break;
    used += delta;
  }
  return node_.cores - used;
}

namespace detail {

std::vector<std::size_t> demand_order(const Workload& workload, bool descending) {
  std::vector<std::size_t> order(workload.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (workload[a].cores != workload[b].cores) {
      return descending ? workload[a].cores > workload[b].cores
                        : workload[a].cores < workload[b].cores;
    }
    return workload[a].id < workload[b].id;
  });
  return order;
}

namespace {

struct Candidate {
  std::size_t node_index;
  double start;
};

/// Earliest single-node start among capacity-feasible nodes of one tier;
/// ties go to the lower node index.
std::optional<Candidate> best_in_tier(const std::vector<NodeTimeline>& timelines,
                                      Tier tier, int cores, double duration) {
  std::optional<Candidate> best;
  for (std::size_t j = 0; j < timelines.size(); ++j) {
    const NodeTimeline& tl = timelines[j];
    if (tl.node().tier != tier || tl.node().cores < cores) continue;
    const double start = tl.earliest_slot(cores, duration);
    if (!best || start < best->start) best = Candidate{j, start};
  }
  return best;
}

std::optional<Candidate> tier_priority_choice(const std::vector<NodeTimeline>& timelines,
                                              int cores, double duration) {
  for (Tier tier : {Tier::StaticFog, Tier::DynamicFog, Tier::Cloud}) {
    if (auto c = best_in_tier(timelines, tier, cores, duration)) return c;
  }
  return std::nullopt;
}

std::optional<Candidate> min_finish_choice(const std::vector<NodeTimeline>& timelines,
                                           int cores, const Task& task,
                                           const SimOptions& options) {
  std::optional<Candidate> best;
  double best_finish = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < timelines.size(); ++j) {
    const NodeTimeline& tl = timelines[j];
    if (tl.node().cores < cores) continue;
    const double duration =
        task.duration_s + (tl.node().tier == Tier::Cloud ? options.cloud_transfer_seconds : 0.0);
    const double start = tl.earliest_slot(cores, duration);
    const double finish = start + duration;
    if (finish < best_finish) {
      best_finish = finish;
      best = Candidate{j, start};
    }
  }
  return best;
}

struct SplitPlan {
  std::vector<std::pair<std::size_t, int>> parts;  // (node index, cores)
  double start = 0;
  bool touches_cloud = false;
};

/// Fallback when no single node can hold the demand: the task is sent to the
/// cloud tier and split across its nodes, widening into dynamic and then
/// static nodes only if the cloud alone is too small. All parts run
/// concurrently, so the start is the earliest instant every part fits.
std::optional<SplitPlan> split_placement(const std::vector<NodeTimeline>& timelines,
                                         const Task& task, const SimOptions& options) {
  std::vector<std::size_t> by_tier;
  for (Tier tier : {Tier::Cloud, Tier::DynamicFog, Tier::StaticFog}) {
    for (std::size_t j = 0; j < timelines.size(); ++j) {
      if (timelines[j].node().tier == tier) by_tier.push_back(j);
    }
  }

  SplitPlan plan;
  int remaining = task.cores;
  for (std::size_t j : by_tier) {
    if (remaining <= 0) break;
    const int take = std::min(remaining, timelines[j].node().cores);
    plan.parts.emplace_back(j, take);
    remaining -= take;
    if (timelines[j].node().tier == Tier::Cloud) plan.touches_cloud = true;
  }
  if (remaining > 0) return std::nullopt;

  const double duration =
      task.duration_s + (plan.touches_cloud ? options.cloud_transfer_seconds : 0.0);

  // Earliest common start: push the candidate forward until every part
  // accepts it. Each round either converges or lands on a later reservation
  // boundary, so the loop terminates.
  double start = 0.0;
  for (;;) {
    double next = start;
    for (const auto& [j, take] : plan.parts) {
      next = std::max(next, timelines[j].earliest_slot_after(start, take, duration));
    }
    if (next == start) break;
    start = next;
  }
  plan.start = start;
  return plan;
}

}  // namespace

ScheduleResult run_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                            std::span<const std::size_t> order, Policy policy,
                            std::span<const int> per_task_node, const CostRates& rates,
                            const Weights& weights, const SimOptions& options) {
  if (workload.empty()) throw EmptyWorkloadError("cannot schedule an empty workload");
  if (nodes.empty()) throw Error("cannot schedule without compute nodes");

  std::vector<NodeTimeline> timelines;
  timelines.reserve(nodes.size());
  for (const ComputeNode& n : nodes) timelines.emplace_back(n);

  ScheduleResult result;
  result.placements.resize(workload.size());
  result.assignment.rows.resize(workload.size());

  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    const Task& task = workload[i];

    std::optional<Candidate> choice;
    switch (policy) {
      case Policy::TierPriority: {
        choice = tier_priority_choice(timelines, task.cores, task.duration_s);
        if (!per_task_node.empty()) {
          const int p = per_task_node[i];
          if (p >= 0 && p < static_cast<int>(timelines.size()) &&
              timelines[p].node().cores >= task.cores) {
            const double pref_duration =
                task.duration_s + (timelines[p].node().tier == Tier::Cloud
                                       ? options.cloud_transfer_seconds
                                       : 0.0);
            const double pref_start =
                timelines[p].earliest_slot(task.cores, pref_duration);
            const bool prefer =
                options.preference_rule == PreferenceRule::CapacityOnly ||
                !choice || pref_start <= choice->start;
            if (prefer) choice = Candidate{static_cast<std::size_t>(p), pref_start};
          }
        }
        break;
      }
      case Policy::MinFinishAllNodes:
        choice = min_finish_choice(timelines, task.cores, task, options);
        break;
      case Policy::ForcedNode: {
        const int p = per_task_node[i];
        if (p >= 0 && p < static_cast<int>(timelines.size()) &&
            timelines[p].node().cores >= task.cores) {
          const double duration =
              task.duration_s + (timelines[p].node().tier == Tier::Cloud
                                     ? options.cloud_transfer_seconds
                                     : 0.0);
          choice = Candidate{static_cast<std::size_t>(p),
                             timelines[p].earliest_slot(task.cores, duration)};
        }
        break;
      }
    }

    PlacedTask placed;
    placed.task_id = task.id;

    if (choice) {
      const NodeTimeline& tl = timelines[choice->node_index];
      const double duration =
          task.duration_s +
          (tl.node().tier == Tier::Cloud ? options.cloud_transfer_seconds : 0.0);
      timelines[choice->node_index].reserve(choice->start, duration, task.cores);
      placed.slices.push_back({tl.node().id, task.cores});
      placed.start_s = choice->start;
      placed.timing = {choice->start, duration, choice->start + duration};
    } else {
      auto plan = split_placement(timelines, task, options);
      if (!plan) {
        throw InfeasibleError("task " + std::to_string(task.id) + " needs " +
                              std::to_string(task.cores) +
                              " cores, more than all nodes combined");
      }
      const double duration =
          task.duration_s + (plan->touches_cloud ? options.cloud_transfer_seconds : 0.0);
      for (const auto& [j, take] : plan->parts) {
        timelines[j].reserve(plan->start, duration, take);
        placed.slices.push_back({timelines[j].node().id, take});
      }
      placed.start_s = plan->start;
      placed.timing = {plan->start, duration, plan->start + duration};
    }

    result.assignment.rows[i] = placed.slices;
    result.placements[i] = std::move(placed);
  }

  double makespan = 0.0, wait_max = 0.0, wait_sum = 0.0;
  for (const PlacedTask& p : result.placements) {
    makespan = std::max(makespan, p.timing.finish_s);
    wait_max = std::max(wait_max, p.timing.wait_s);
    wait_sum += p.timing.wait_s;
  }
  result.metrics.makespan_s = makespan;
  result.metrics.wait_max_s = wait_max;
  result.metrics.wait_mean_s = wait_sum / static_cast<double>(workload.size());
  result.metrics.cost = total_cost(workload, result.assignment, nodes, rates);
  result.metrics.fitness =
      fitness(result.metrics.cost, makespan, ideal_cost(workload, rates),
              ideal_makespan(workload, options.ideal_makespan_rule), weights);
  return result;
}

}  // namespace detail

ScheduleResult simulate(const Workload& workload, std::span<const ComputeNode> nodes,
                        std::span<const int> preference, const CostRates& rates,
                        const Weights& weights, const SimOptions& options) {
  if (!preference.empty() && preference.size() != workload.size()) {
    throw Error("preference length does not match workload size");
  }
  const auto order = detail::demand_order(workload, /*descending=*/true);
  return detail::run_schedule(workload, nodes, order, detail::Policy::TierPriority,
                              preference, rates, weights, options);
}

}  // namespace vfc
