#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

#include "vfc/model.hpp"

namespace vfc {

/// Parameters of a seeded random task set.
struct RandomWorkloadSpec {
  int n_tasks = 50;
  int demand_min = 1;        ///< cores
  int demand_max = 6;
  double duration_min = 50.0;   ///< seconds
  double duration_max = 1000.0;
  std::uint64_t seed = 0;
};

Workload generate_random(const RandomWorkloadSpec& spec);

/// One task type of the Montage mosaic workflow: how many instances and how
/// long each runs.
struct MontageRow {
  int count;
  double duration_s;
};

/// The nine Montage task types. 10429 tasks in total.
std::span<const MontageRow> montage_profile();

/// Expands the Montage profile into a flat bag of tasks, one core each by
/// default. `scale` divides every type count (rounding up) for desk-size
/// runs; `cores_per_type`, when given, overrides the demand of each type.
Workload montage_workload(int scale = 1, std::span<const int> cores_per_type = {});

/// JSON workload file: { "tasks": [ { "id", "cores", "duration_s" }, ... ] }.
/// Unknown fields are rejected; ids must be unique.
Workload read_workload(const std::filesystem::path& path);
void write_workload(const Workload& workload, const std::filesystem::path& path);

}  // namespace vfc
