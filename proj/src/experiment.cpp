#include "vfc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "vfc/toml_lite.hpp"

namespace vfc::experiment {

namespace {

constexpr const char* kCsvHeader =
    "algo,n_tasks,seed,fitness,cost,makespan,wait_max,wait_mean,elapsed_s,"
    "agents,a0,iterations";

const std::vector<std::string> kKnownAlgorithms{"gwo", "random", "min", "max", "met"};

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, p);
}

double parse_double(std::string_view s, const std::string& where) {
  double v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(where + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

long long parse_int(std::string_view s, const std::string& where) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(where + ": bad integer '" + std::string(s) + "'");
  }
  return v;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  const int n = std::min<int>(jobs, static_cast<int>(count));
  threads.reserve(n);
  for (int k = 0; k < n; ++k) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

struct WorkloadVariant {
  std::string tag;  // "n50", "montage", "file"
  int n_tasks = 0;
  std::vector<Workload> per_replicate;
};

std::vector<WorkloadVariant> build_variants(const ExperimentConfig& config) {
  const WorkloadSource& src = config.workload;
  std::vector<WorkloadVariant> variants;

  switch (src.kind) {
    case WorkloadSource::Kind::Random: {
      for (int n : src.n_tasks) {
        WorkloadVariant v;
        v.tag = "n" + std::to_string(n);
        v.n_tasks = n;
        for (int r = 0; r < config.repetitions; ++r) {
          RandomWorkloadSpec spec;
          spec.n_tasks = n;
          spec.demand_min = src.demand_min;
          spec.demand_max = src.demand_max;
          spec.duration_min = src.duration_min;
          spec.duration_max = src.duration_max;
          spec.seed = src.workload_seed + static_cast<std::uint64_t>(r);
          v.per_replicate.push_back(generate_random(spec));
        }
        variants.push_back(std::move(v));
      }
      break;
    }
    case WorkloadSource::Kind::Montage: {
      WorkloadVariant v;
      v.tag = "montage";
      Workload w = montage_workload(src.montage_scale, src.montage_cores);
      v.n_tasks = static_cast<int>(w.size());
      v.per_replicate.assign(config.repetitions, w);
      variants.push_back(std::move(v));
      break;
    }
    case WorkloadSource::Kind::File: {
      WorkloadVariant v;
      v.tag = "file";
      Workload w = read_workload(src.path);
      v.n_tasks = static_cast<int>(w.size());
      v.per_replicate.assign(config.repetitions, w);
      variants.push_back(std::move(v));
      break;
    }
  }
  return variants;
}

struct Cell {
  std::string algo;
  std::size_t variant = 0;
  int replicate = 0;
  std::optional<int> agents;
  std::optional<double> a0;
  std::optional<int> iterations;
};

struct CellOutcome {
  bool ok = false;
  ResultRow row;
  std::vector<double> trace;  // optimizer cells only
  std::string error;
};

std::vector<Cell> enumerate_cells(const ExperimentConfig& config, std::size_t n_variants) {
  std::vector<Cell> cells;
  for (std::size_t v = 0; v < n_variants; ++v) {
    for (const std::string& algo : config.algorithms) {
      if (algo == "gwo") {
        for (int m : config.grid.search_agents) {
          for (double a0 : config.grid.a0) {
            for (int iters : config.grid.iterations) {
              for (int r = 0; r < config.repetitions; ++r) {
                cells.push_back({algo, v, r, m, a0, iters});
              }
            }
          }
        }
      } else {
        for (int r = 0; r < config.repetitions; ++r) {
          cells.push_back({algo, v, r, {}, {}, {}});
        }
      }
    }
  }
  return cells;
}

CellOutcome run_cell(const ExperimentConfig& config, const std::vector<WorkloadVariant>& variants,
                     const std::vector<ComputeNode>& nodes, const Cell& cell) {
  const Workload& workload = variants[cell.variant].per_replicate[cell.replicate];
  const std::uint64_t seed = config.base_seed + static_cast<std::uint64_t>(cell.replicate);

  CellOutcome outcome;
  outcome.row.algo = cell.algo;
  outcome.row.n_tasks = variants[cell.variant].n_tasks;
  outcome.row.seed = seed;
  outcome.row.agents = cell.agents;
  outcome.row.a0 = cell.a0;
  outcome.row.iterations = cell.iterations;

  const auto start = std::chrono::steady_clock::now();
  try {
    ScheduleResult result;
    if (cell.algo == "gwo") {
      gwo::GwoParams params;
      params.search_agents = *cell.agents;
      params.a0 = *cell.a0;
      params.iterations = *cell.iterations;
      params.seed = seed;
      auto out = gwo::optimize(workload, nodes, config.rates, config.weights, params,
                               config.sim);
      result = std::move(out.schedule);
      outcome.trace = std::move(out.trace);
    } else if (cell.algo == "random") {
      result = random_schedule(workload, nodes, config.rates, config.weights, seed,
                               config.sim);
    } else if (cell.algo == "min") {
      result = min_based_schedule(workload, nodes, config.rates, config.weights, config.sim);
    } else if (cell.algo == "max") {
      result = max_based_schedule(workload, nodes, config.rates, config.weights, config.sim);
    } else if (cell.algo == "met") {
      result = met_schedule(workload, nodes, config.rates, config.weights, config.sim);
    } else {
      throw ConfigError("unknown algorithm '" + cell.algo + "'");
    }
    const auto stop = std::chrono::steady_clock::now();
    outcome.ok = true;
    outcome.row.fitness = result.metrics.fitness;
    outcome.row.cost = result.metrics.cost;
    outcome.row.makespan = result.metrics.makespan_s;
    outcome.row.wait_max = result.metrics.wait_max_s;
    outcome.row.wait_mean = result.metrics.wait_mean_s;
    outcome.row.elapsed_s =
        config.emit_measured_elapsed
            ? std::chrono::duration<double>(stop - start).count()
            : 0.0;
  } catch (const InfeasibleError& e) {
    outcome.error = e.what();
  }
  return outcome;
}

/// Canonical row order: everything the grouping key contains, then the seed.
bool row_less(const ResultRow& a, const ResultRow& b) {
  auto key = [](const ResultRow& r) {
    return std::make_tuple(r.algo, r.n_tasks, r.agents.value_or(-1), r.a0.value_or(-1.0),
                           r.iterations.value_or(-1), r.seed);
  };
  return key(a) < key(b);
}

std::vector<ResultRow> average_rows(const std::vector<ResultRow>& raw) {
  std::vector<ResultRow> averaged;
  std::size_t i = 0;
  while (i < raw.size()) {
    std::size_t j = i;
    ResultRow mean = raw[i];
    mean.averaged = true;
    mean.seed = 0;
    double fitness = 0, cost = 0, makespan = 0, wait_max = 0, wait_mean = 0, elapsed = 0;
    while (j < raw.size() && raw[j].algo == raw[i].algo && raw[j].n_tasks == raw[i].n_tasks &&
           raw[j].agents == raw[i].agents && raw[j].a0 == raw[i].a0 &&
           raw[j].iterations == raw[i].iterations) {
      fitness += raw[j].fitness;
      cost += raw[j].cost;
      makespan += raw[j].makespan;
      wait_max += raw[j].wait_max;
      wait_mean += raw[j].wait_mean;
      elapsed += raw[j].elapsed_s;
      ++j;
    }
    const double k = static_cast<double>(j - i);
    mean.fitness = fitness / k;
    mean.cost = cost / k;
    mean.makespan = makespan / k;
    mean.wait_max = wait_max / k;
    mean.wait_mean = wait_mean / k;
    mean.elapsed_s = elapsed / k;
    averaged.push_back(std::move(mean));
    i = j;
  }
  return averaged;
}

std::string a0_tag(double a0) {
  std::string s = format_double(a0);
  for (char& c : s) {
    if (c == '.') c = 'p';
  }
  return s;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

RunOutput run_cells(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                    int jobs, const std::string& file_prefix) {
  validate(config);
  std::filesystem::create_directories(out_dir);

  const auto variants = build_variants(config);
  const auto nodes = config.nodes.build();
  const auto cells = enumerate_cells(config, variants.size());

  std::vector<CellOutcome> outcomes(cells.size());
  parallel_for(cells.size(), jobs,
               [&](std::size_t i) { outcomes[i] = run_cell(config, variants, nodes, cells[i]); });

  RunOutput output;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (outcomes[i].ok) {
      output.raw.push_back(outcomes[i].row);
    } else {
      output.errors.push_back({cells[i].algo, variants[cells[i].variant].n_tasks,
                               config.base_seed + static_cast<std::uint64_t>(cells[i].replicate),
                               outcomes[i].error});
    }
  }
  std::sort(output.raw.begin(), output.raw.end(), row_less);
  output.averaged = average_rows(output.raw);

  const auto raw_path = out_dir / (file_prefix + "raw.csv");
  const auto avg_path = out_dir / (file_prefix + "avg.csv");
  emit_csv(output.raw, raw_path);
  emit_csv(output.averaged, avg_path);
  output.files.push_back(raw_path);
  output.files.push_back(avg_path);

  // One convergence chart per optimizer cell (workload x grid point), all
  // replicate traces overlaid.
  std::map<std::tuple<std::size_t, int, double, int>, std::vector<svg::Series>> traces;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.algo != "gwo" || !outcomes[i].ok) continue;
    const auto key = std::make_tuple(c.variant, *c.agents, *c.a0, *c.iterations);
    traces[key].push_back(
        {"seed " + std::to_string(config.base_seed + static_cast<std::uint64_t>(c.replicate)),
         outcomes[i].trace});
  }
  for (const auto& [key, series] : traces) {
    const auto& [v, agents, a0, iters] = key;
    const std::string name = file_prefix + "convergence_" + variants[v].tag + "_m" +
                             std::to_string(agents) + "_a" + a0_tag(a0) + "_T" +
                             std::to_string(iters) + ".svg";
    const std::string title = "GWO convergence, " + variants[v].tag + ", agents=" +
                              std::to_string(agents) + ", a0=" + format_double(a0) +
                              ", iterations=" + std::to_string(iters);
    const auto path = out_dir / name;
    write_text(path, svg::line_chart(title, "iteration", "best fitness", series));
    output.files.push_back(path);
  }

  // Figure-style grouped bars: mean cost per workload size, one bar per
  // algorithm.
  if (config.workload.kind == WorkloadSource::Kind::Random &&
      config.workload.n_tasks.size() > 0) {
    std::vector<std::string> labels;
    for (int n : config.workload.n_tasks) labels.push_back(std::to_string(n));
    std::vector<svg::Series> bars;
    for (const std::string& algo : config.algorithms) {
      svg::Series s{algo, {}};
      for (int n : config.workload.n_tasks) {
        double value = 0.0;
        for (const ResultRow& row : output.averaged) {
          if (row.algo == algo && row.n_tasks == n) {
            value = row.cost;
            break;
          }
        }
        s.values.push_back(value);
      }
      bars.push_back(std::move(s));
    }
    const auto path = out_dir / (file_prefix + "cost_comparison.svg");
    write_text(path, svg::grouped_bar_chart("Mean monetary cost by task count", "cost",
                                            labels, bars));
    output.files.push_back(path);
  }
  return output;
}

}  // namespace

std::vector<ComputeNode> NodeInventory::build() const {
  std::vector<ComputeNode> nodes;
  int id = 0;
  for (int cores : static_cores) nodes.push_back({id++, Tier::StaticFog, cores});
  for (int cores : dynamic_cores) nodes.push_back({id++, Tier::DynamicFog, cores});
  for (int cores : cloud_cores) nodes.push_back({id++, Tier::Cloud, cores});
  return nodes;
}

void validate(const ExperimentConfig& config) {
  if (config.repetitions < 1) throw ConfigError("repetitions must be >= 1");
  if (!weights_valid(config.weights)) {
    throw ConfigError("weights must lie in (0,1) and sum to 1");
  }
  if (config.nodes.build().empty()) throw ConfigError("node inventory is empty");
  if (config.algorithms.empty()) throw ConfigError("algorithm list is empty");
  for (const std::string& algo : config.algorithms) {
    if (std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), algo) ==
        kKnownAlgorithms.end()) {
      throw ConfigError("unknown algorithm '" + algo + "'");
    }
  }
  if (config.grid.search_agents.empty() || config.grid.a0.empty() ||
      config.grid.iterations.empty()) {
    throw ConfigError("GWO grid lists must be nonempty");
  }
  for (int m : config.grid.search_agents) {
    if (m < 3) throw ConfigError("search_agents must be >= 3");
  }
  for (int t : config.grid.iterations) {
    if (t < 1) throw ConfigError("iterations must be >= 1");
  }
  for (double a : config.grid.a0) {
    if (!(a > 0)) throw ConfigError("a0 must be > 0");
  }
  if (config.rates.static_per_core_s < 0 || config.rates.dynamic_per_core_s < 0 ||
      config.rates.cloud_per_core_s < 0 || config.rates.cloud_transfer_fee < 0) {
    throw ConfigError("cost rates must be >= 0");
  }
  if (config.workload.kind == WorkloadSource::Kind::Random) {
    if (config.workload.n_tasks.empty()) throw ConfigError("n_tasks list is empty");
    for (int n : config.workload.n_tasks) {
      if (n < 1) throw ConfigError("n_tasks entries must be >= 1");
    }
  }
  if (config.workload.kind == WorkloadSource::Kind::File && config.workload.path.empty()) {
    throw ConfigError("workload.kind = \"file\" requires workload.path");
  }
}

RunOutput run_experiment(const ExperimentConfig& config,
                         const std::filesystem::path& out_dir, int jobs) {
  return run_cells(config, out_dir, jobs, "");
}

RunOutput sensitivity_fog_nodes(const ExperimentConfig& config,
                                const std::filesystem::path& out_dir, int jobs) {
  validate(config);

  auto resize_tier = [](const std::vector<int>& base, const std::vector<int>& extension,
                        int count, const char* tier) {
    if (count < 0) throw ConfigError(std::string(tier) + " count must be >= 0");
    std::vector<int> cores;
    for (int k = 0; k < count; ++k) {
      if (k < static_cast<int>(base.size())) {
        cores.push_back(base[k]);
      } else {
        const int extra = k - static_cast<int>(base.size());
        if (extra >= static_cast<int>(extension.size())) {
          throw ConfigError(std::string(tier) +
                            " extension vector too short for requested node count");
        }
        cores.push_back(extension[extra]);
      }
    }
    return cores;
  };

  std::vector<std::pair<int, int>> variations;
  for (int s : config.sensitivity.static_counts) {
    for (int d : config.sensitivity.dynamic_counts) {
      variations.emplace_back(s, d);
    }
  }
  if (config.sensitivity.include_ablation) {
    const int base_static = static_cast<int>(config.nodes.static_cores.size());
    variations.emplace_back(base_static, 0);
  }

  RunOutput combined;
  for (const auto& [s, d] : variations) {
    ExperimentConfig variant = config;
    variant.nodes.static_cores =
        resize_tier(config.nodes.static_cores, config.static_extension, s, "static");
    variant.nodes.dynamic_cores =
        resize_tier(config.nodes.dynamic_cores, config.dynamic_extension, d, "dynamic");
    const std::string prefix =
        "sens_s" + std::to_string(s) + "_d" + std::to_string(d) + "_";
    RunOutput part = run_cells(variant, out_dir, jobs, prefix);
    combined.raw.insert(combined.raw.end(), part.raw.begin(), part.raw.end());
    combined.averaged.insert(combined.averaged.end(), part.averaged.begin(),
                             part.averaged.end());
    combined.errors.insert(combined.errors.end(), part.errors.begin(), part.errors.end());
    combined.files.insert(combined.files.end(), part.files.begin(), part.files.end());
  }
  return combined;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) {
    out << r.algo << ',' << r.n_tasks << ',';
    if (r.averaged) {
      out << "avg";
    } else {
      out << r.seed;
    }
    out << ',' << format_double(r.fitness) << ',' << format_double(r.cost) << ','
        << format_double(r.makespan) << ',' << format_double(r.wait_max) << ','
        << format_double(r.wait_mean) << ',' << format_double(r.elapsed_s) << ',';
    if (r.agents) out << *r.agents;
    out << ',';
    if (r.a0) out << format_double(*r.a0);
    out << ',';
    if (r.iterations) out << *r.iterations;
    out << '\n';
  }
  write_text(path, out.str());
}

std::vector<ResultRow> parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError(path.string() + ": unexpected header");

  std::vector<ResultRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno);

    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 12) throw ParseError(where + ": expected 12 fields");

    ResultRow r;
    r.algo = fields[0];
    r.n_tasks = static_cast<int>(parse_int(fields[1], where));
    if (fields[2] == "avg") {
      r.averaged = true;
    } else {
      r.seed = static_cast<std::uint64_t>(parse_int(fields[2], where));
    }
    r.fitness = parse_double(fields[3], where);
    r.cost = parse_double(fields[4], where);
    r.makespan = parse_double(fields[5], where);
    r.wait_max = parse_double(fields[6], where);
    r.wait_mean = parse_double(fields[7], where);
    r.elapsed_s = parse_double(fields[8], where);
    if (!fields[9].empty()) r.agents = static_cast<int>(parse_int(fields[9], where));
    if (!fields[10].empty()) r.a0 = parse_double(fields[10], where);
    if (!fields[11].empty()) r.iterations = static_cast<int>(parse_int(fields[11], where));
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_svg(const std::vector<svg::Series>& series, const std::string& title,
              const std::string& x_label, const std::string& y_label,
              const std::filesystem::path& path) {
  write_text(path, svg::line_chart(title, x_label, y_label, series));
}

namespace {

void check_keys(const nlohmann::json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be a table/object");
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; }) == allowed.end()) {
      throw ConfigError(where + ": unknown field \"" + key + "\"");
    }
  }
}

std::vector<int> int_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError(where + " must hold integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<double> double_list(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + " must be an array");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw ConfigError(where + " must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + " must be a number");
  return j.get<double>();
}

ExperimentConfig config_from_json(const nlohmann::json& j, const std::string& origin) {
  ExperimentConfig config;
  check_keys(j, origin,
             {"nodes", "rates", "weights", "algorithms", "gwo", "workload", "repetitions",
              "base_seed", "sim", "emit_measured_elapsed", "static_extension",
              "dynamic_extension", "sensitivity"});

  if (j.contains("nodes")) {
    const auto& n = j["nodes"];
    check_keys(n, origin + ".nodes", {"static_cores", "dynamic_cores", "cloud_cores"});
    if (n.contains("static_cores"))
      config.nodes.static_cores = int_list(n["static_cores"], origin + ".nodes.static_cores");
    if (n.contains("dynamic_cores"))
      config.nodes.dynamic_cores =
          int_list(n["dynamic_cores"], origin + ".nodes.dynamic_cores");
    if (n.contains("cloud_cores"))
      config.nodes.cloud_cores = int_list(n["cloud_cores"], origin + ".nodes.cloud_cores");
  }
  if (j.contains("rates")) {
    const auto& r = j["rates"];
    check_keys(r, origin + ".rates",
               {"static_per_core_s", "dynamic_per_core_s", "cloud_per_core_s",
                "cloud_transfer_fee"});
    if (r.contains("static_per_core_s"))
      config.rates.static_per_core_s = number(r["static_per_core_s"], origin + ".rates");
    if (r.contains("dynamic_per_core_s"))
      config.rates.dynamic_per_core_s = number(r["dynamic_per_core_s"], origin + ".rates");
    if (r.contains("cloud_per_core_s"))
      config.rates.cloud_per_core_s = number(r["cloud_per_core_s"], origin + ".rates");
    if (r.contains("cloud_transfer_fee"))
      config.rates.cloud_transfer_fee = number(r["cloud_transfer_fee"], origin + ".rates");
  }
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    check_keys(w, origin + ".weights", {"cost_weight", "makespan_weight"});
    if (w.contains("cost_weight"))
      config.weights.cost_weight = number(w["cost_weight"], origin + ".weights");
    if (w.contains("makespan_weight"))
      config.weights.makespan_weight = number(w["makespan_weight"], origin + ".weights");
  }
  if (j.contains("algorithms")) {
    if (!j["algorithms"].is_array()) throw ConfigError(origin + ".algorithms must be an array");
    config.algorithms.clear();
    for (const auto& a : j["algorithms"]) {
      if (!a.is_string()) throw ConfigError(origin + ".algorithms must hold strings");
      config.algorithms.push_back(a.get<std::string>());
    }
  }
  if (j.contains("gwo")) {
    const auto& g = j["gwo"];
    check_keys(g, origin + ".gwo", {"search_agents", "a0", "iterations"});
    if (g.contains("search_agents"))
      config.grid.search_agents = int_list(g["search_agents"], origin + ".gwo.search_agents");
    if (g.contains("a0")) config.grid.a0 = double_list(g["a0"], origin + ".gwo.a0");
    if (g.contains("iterations"))
      config.grid.iterations = int_list(g["iterations"], origin + ".gwo.iterations");
  }
  if (j.contains("workload")) {
    const auto& w = j["workload"];
    check_keys(w, origin + ".workload",
               {"kind", "n_tasks", "demand_min", "demand_max", "duration_min",
                "duration_max", "workload_seed", "montage_scale", "montage_cores", "path"});
    if (w.contains("kind")) {
      const std::string kind = w["kind"].get<std::string>();
      if (kind == "random") {
        config.workload.kind = WorkloadSource::Kind::Random;
      } else if (kind == "montage") {
        config.workload.kind = WorkloadSource::Kind::Montage;
      } else if (kind == "file") {
        config.workload.kind = WorkloadSource::Kind::File;
      } else {
        throw ConfigError(origin + ".workload.kind must be random|montage|file");
      }
    }
    if (w.contains("n_tasks"))
      config.workload.n_tasks = int_list(w["n_tasks"], origin + ".workload.n_tasks");
    if (w.contains("demand_min"))
      config.workload.demand_min = static_cast<int>(number(w["demand_min"], origin));
    if (w.contains("demand_max"))
      config.workload.demand_max = static_cast<int>(number(w["demand_max"], origin));
    if (w.contains("duration_min"))
      config.workload.duration_min = number(w["duration_min"], origin);
    if (w.contains("duration_max"))
      config.workload.duration_max = number(w["duration_max"], origin);
    if (w.contains("workload_seed"))
      config.workload.workload_seed =
          static_cast<std::uint64_t>(number(w["workload_seed"], origin));
    if (w.contains("montage_scale"))
      config.workload.montage_scale = static_cast<int>(number(w["montage_scale"], origin));
    if (w.contains("montage_cores"))
      config.workload.montage_cores =
          int_list(w["montage_cores"], origin + ".workload.montage_cores");
    if (w.contains("path")) config.workload.path = w["path"].get<std::string>();
  }
  if (j.contains("repetitions"))
    config.repetitions = static_cast<int>(number(j["repetitions"], origin));
  if (j.contains("base_seed"))
    config.base_seed = static_cast<std::uint64_t>(number(j["base_seed"], origin));
  if (j.contains("sim")) {
    const auto& s = j["sim"];
    check_keys(s, origin + ".sim",
               {"cloud_transfer_seconds", "ideal_makespan_rule", "preference_rule"});
    if (s.contains("cloud_transfer_seconds"))
      config.sim.cloud_transfer_seconds = number(s["cloud_transfer_seconds"], origin);
    if (s.contains("ideal_makespan_rule")) {
      const std::string rule = s["ideal_makespan_rule"].get<std::string>();
      if (rule == "min") {
        config.sim.ideal_makespan_rule = IdealMakespanRule::MinDuration;
      } else if (rule == "max") {
        config.sim.ideal_makespan_rule = IdealMakespanRule::MaxDuration;
      } else {
        throw ConfigError(origin + ".sim.ideal_makespan_rule must be min|max");
      }
    }
    if (s.contains("preference_rule")) {
      const std::string rule = s["preference_rule"].get<std::string>();
      if (rule == "start_race") {
        config.sim.preference_rule = PreferenceRule::StartRace;
      } else if (rule == "capacity_only") {
        config.sim.preference_rule = PreferenceRule::CapacityOnly;
      } else {
        throw ConfigError(origin + ".sim.preference_rule must be start_race|capacity_only");
      }
    }
  }
  if (j.contains("emit_measured_elapsed")) {
    if (!j["emit_measured_elapsed"].is_boolean()) {
      throw ConfigError(origin + ".emit_measured_elapsed must be a boolean");
    }
    config.emit_measured_elapsed = j["emit_measured_elapsed"].get<bool>();
  }
  if (j.contains("static_extension"))
    config.static_extension = int_list(j["static_extension"], origin + ".static_extension");
  if (j.contains("dynamic_extension"))
    config.dynamic_extension =
        int_list(j["dynamic_extension"], origin + ".dynamic_extension");
  if (j.contains("sensitivity")) {
    const auto& s = j["sensitivity"];
    check_keys(s, origin + ".sensitivity",
               {"static_counts", "dynamic_counts", "include_ablation"});
    if (s.contains("static_counts"))
      config.sensitivity.static_counts =
          int_list(s["static_counts"], origin + ".sensitivity.static_counts");
    if (s.contains("dynamic_counts"))
      config.sensitivity.dynamic_counts =
          int_list(s["dynamic_counts"], origin + ".sensitivity.dynamic_counts");
    if (s.contains("include_ablation")) {
      if (!s["include_ablation"].is_boolean()) {
        throw ConfigError(origin + ".sensitivity.include_ablation must be a boolean");
      }
      config.sensitivity.include_ablation = s["include_ablation"].get<bool>();
    }
  }

  validate(config);
  return config;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());

  nlohmann::json tree;
  const std::string ext = path.extension().string();
  if (ext == ".toml") {
    tree = parse_toml(in, path.string());
  } else {
    try {
      tree = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
  }
  try {
    return config_from_json(tree, path.string());
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace vfc::experiment
