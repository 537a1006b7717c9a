#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "vfc/baselines.hpp"
#include "vfc/gwo.hpp"
#include "vfc/svg.hpp"
#include "vfc/workloads.hpp"

namespace vfc::experiment {

/// Per-tier core counts of the node inventory; build() lays the nodes out
/// with ids 0..n-1 in static, dynamic, cloud order (the optimizer's position
/// box indexes nodes in exactly this order).
struct NodeInventory {
  std::vector<int> static_cores{2, 5, 6, 1, 2};
  std::vector<int> dynamic_cores{5, 2, 3, 4, 2, 4, 3, 5, 1, 4};
  std::vector<int> cloud_cores{20, 12};

  std::vector<ComputeNode> build() const;
};

/// Cartesian optimizer-parameter grid.
struct GwoGrid {
  std::vector<int> search_agents{70};
  std::vector<double> a0{2.0};
  std::vector<int> iterations{100};
};

struct WorkloadSource {
  enum class Kind { Random, Montage, File };
  Kind kind = Kind::Random;

  // Random: one workload variant per entry of n_tasks; replicate r draws
  // its tasks from workload_seed + r.
  std::vector<int> n_tasks{10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  int demand_min = 1;
  int demand_max = 6;
  double duration_min = 50.0;
  double duration_max = 1000.0;
  std::uint64_t workload_seed = 7;

  // Montage:
  int montage_scale = 1;
  std::vector<int> montage_cores;  // optional per-type demand override

  // File:
  std::string path;
};

/// Node-count variations rerun by the sensitivity study. Counts larger than
/// the base inventory take extra cores from the extension vectors; a count of
/// zero removes the tier (the no-vehicles ablation).
struct SensitivityConfig {
  std::vector<int> static_counts{5, 7};
  std::vector<int> dynamic_counts{10, 12};
  bool include_ablation = true;
};

struct ExperimentConfig {
  NodeInventory nodes;
  CostRates rates;
  Weights weights;
  std::vector<std::string> algorithms{"gwo", "random", "min", "max", "met"};
  GwoGrid grid;
  WorkloadSource workload;
  int repetitions = 5;
  std::uint64_t base_seed = 1;
  SimOptions sim;
  /// When false (the default) the elapsed_s column is written as 0 so that
  /// equal configs yield byte-identical CSVs; measured wall-clock is
  /// inherently run-dependent.
  bool emit_measured_elapsed = false;
  std::vector<int> static_extension{3, 4};
  std::vector<int> dynamic_extension{3, 2};
  SensitivityConfig sensitivity;
};

void validate(const ExperimentConfig& config);

/// One finished run. `seed` is the algorithm seed; averaged rows carry the
/// replicate mean and are flagged instead of seeded.
struct ResultRow {
  std::string algo;
  int n_tasks = 0;
  std::uint64_t seed = 0;
  bool averaged = false;
  double fitness = 0;
  double cost = 0;
  double makespan = 0;
  double wait_max = 0;
  double wait_mean = 0;
  double elapsed_s = 0;
  // GWO parameter columns; empty for the baselines.
  std::optional<int> agents;
  std::optional<double> a0;
  std::optional<int> iterations;
};

struct CellError {
  std::string algo;
  int n_tasks = 0;
  std::uint64_t seed = 0;
  std::string message;
};

struct RunOutput {
  std::vector<ResultRow> raw;       ///< canonically sorted
  std::vector<ResultRow> averaged;  ///< one row per (algo, workload, grid) group
  std::vector<CellError> errors;    ///< infeasible cells, sweep not aborted
  std::vector<std::filesystem::path> files;
};

/// Executes every (algorithm x workload x grid x replicate) cell, writes
/// raw.csv, avg.csv, one convergence SVG per optimizer cell and a grouped-bar
/// cost chart. Cells run on up to `jobs` threads; outputs are canonicalized
/// so the thread count never changes a byte.
RunOutput run_experiment(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir, int jobs = 1);

/// Reruns the configured workload under each node-count variation
/// (sensitivity.static_counts x dynamic_counts, plus the dynamic-free
/// ablation); one output file set per variation.
RunOutput sensitivity_fog_nodes(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir, int jobs = 1);

/// Fixed column set:
/// algo,n_tasks,seed,fitness,cost,makespan,wait_max,wait_mean,elapsed_s,agents,a0,iterations
void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path);
std::vector<ResultRow> parse_csv(const std::filesystem::path& path);

void emit_svg(const std::vector<svg::Series>& series, const std::string& title,
              const std::string& x_label, const std::string& y_label,
              const std::filesystem::path& path);

/// Reads a .json or .toml config; both spell the same structure.
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace vfc::experiment
