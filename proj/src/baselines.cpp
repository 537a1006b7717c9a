#include "vfc/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "vfc/rng.hpp"

namespace vfc {

ScheduleResult random_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                               const CostRates& rates, const Weights& weights,
                               std::uint64_t seed, const SimOptions& options) {
  if (workload.empty()) throw EmptyWorkloadError("cannot schedule an empty workload");

  SplitMix64 rng(seed);
  std::vector<int> drawn(workload.size(), -1);
  std::vector<int> fitting;
  for (std::size_t i = 0; i < workload.size(); ++i) {
    fitting.clear();
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (nodes[j].cores >= workload[i].cores) fitting.push_back(static_cast<int>(j));
    }
    // Tasks too large for any single node keep -1 and take the split path.
    if (!fitting.empty()) {
      drawn[i] = fitting[rng.next_below(fitting.size())];
    }
  }

  std::vector<std::size_t> order(workload.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return detail::run_schedule(workload, nodes, order, detail::Policy::ForcedNode, drawn,
                              rates, weights, options);
}

ScheduleResult min_based_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                                  const CostRates& rates, const Weights& weights,
                                  const SimOptions& options) {
  const auto order = detail::demand_order(workload, /*descending=*/false);
  return detail::run_schedule(workload, nodes, order, detail::Policy::MinFinishAllNodes,
                              {}, rates, weights, options);
}

ScheduleResult max_based_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                                  const CostRates& rates, const Weights& weights,
                                  const SimOptions& options) {
  const auto order = detail::demand_order(workload, /*descending=*/true);
  return detail::run_schedule(workload, nodes, order, detail::Policy::MinFinishAllNodes,
                              {}, rates, weights, options);
}

ScheduleResult met_schedule(const Workload& workload, std::span<const ComputeNode> nodes,
                            const CostRates& rates, const Weights& weights,
                            const SimOptions& options) {
  std::vector<std::size_t> order(workload.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (workload[a].duration_s != workload[b].duration_s) {
      return workload[a].duration_s < workload[b].duration_s;
    }
    return workload[a].id < workload[b].id;
  });
  return detail::run_schedule(workload, nodes, order, detail::Policy::MinFinishAllNodes,
                              {}, rates, weights, options);
}

}  // namespace vfc
