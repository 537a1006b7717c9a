#include "vfc/workloads.hpp"

#include <fstream>

#include <json.hpp>

#include "vfc/rng.hpp"

namespace vfc {

Workload generate_random(const RandomWorkloadSpec& spec) {
  if (spec.n_tasks < 1) throw BadRangeError("n_tasks must be >= 1");
  if (spec.demand_min < 1 || spec.demand_min > spec.demand_max) {
    throw BadRangeError("demand range must satisfy 1 <= min <= max");
  }
  if (!(spec.duration_min > 0.0) || spec.duration_min > spec.duration_max) {
    throw BadRangeError("duration range must satisfy 0 < min <= max");
  }

  SplitMix64 rng(spec.seed);
  Workload workload;
  workload.reserve(spec.n_tasks);
  for (int i = 0; i < spec.n_tasks; ++i) {
    Task t;
    t.id = i;
    t.cores = rng.next_int(spec.demand_min, spec.demand_max);
    t.duration_s = spec.duration_min == spec.duration_max
                       ? spec.duration_min
                       : rng.next_in(spec.duration_min, spec.duration_max);
    workload.push_back(t);
  }
  return workload;
}

std::span<const MontageRow> montage_profile() {
  static constexpr std::array<MontageRow, 9> rows{{
      {2102, 1.73},
      {6172, 0.66},
      {1, 143.26},
      {1, 384.49},
      {2102, 1.72},
      {17, 2.78},
      {17, 282.37},
      {16, 66.10},
      {1, 0.64},
  }};
  return rows;
}

Workload montage_workload(int scale, std::span<const int> cores_per_type) {
  if (scale < 1) throw BadRangeError("montage scale must be >= 1");
  const auto profile = montage_profile();
  if (!cores_per_type.empty() && cores_per_type.size() != profile.size()) {
    throw BadRangeError("cores_per_type must give one value per task type");
  }

  Workload workload;
  int next_id = 0;
  for (std::size_t type = 0; type < profile.size(); ++type) {
    const int count = (profile[type].count + scale - 1) / scale;
    const int cores = cores_per_type.empty() ? 1 : cores_per_type[type];
    for (int k = 0; k < count; ++k) {
      workload.push_back({next_id++, cores, profile[type].duration_s});
    }
  }
  return workload;
}

Workload read_workload(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open workload file " + path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }

  if (!doc.is_object()) throw ParseError(path.string() + ": top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "tasks") throw ParseError(path.string() + ": unknown field \"" + key + "\"");
  }
  if (!doc.contains("tasks") || !doc["tasks"].is_array()) {
    throw ParseError(path.string() + ": missing \"tasks\" array");
  }

  Workload workload;
  std::size_t index = 0;
  for (const auto& item : doc["tasks"]) {
    const std::string where = path.string() + ": tasks[" + std::to_string(index) + "]";
    if (!item.is_object()) throw ParseError(where + " must be an object");
    for (const auto& [key, _] : item.items()) {
      if (key != "id" && key != "cores" && key != "duration_s") {
        throw ParseError(where + ": unknown field \"" + key + "\"");
      }
    }
    for (const char* field : {"id", "cores", "duration_s"}) {
      if (!item.contains(field)) {
        throw ParseError(where + ": missing field \"" + std::string(field) + "\"");
      }
    }
    if (!item["id"].is_number_integer() || !item["cores"].is_number_integer()) {
      throw ParseError(where + ": \"id\" and \"cores\" must be integers");
    }
    if (!item["duration_s"].is_number()) {
      throw ParseError(where + ": \"duration_s\" must be a number");
    }
    workload.push_back({item["id"].get<int>(), item["cores"].get<int>(),
                        item["duration_s"].get<double>()});
    ++index;
  }

  try {
    validate_workload(workload);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return workload;
}

void write_workload(const Workload& workload, const std::filesystem::path& path) {
  nlohmann::json tasks = nlohmann::json::array();
  for (const Task& t : workload) {
    tasks.push_back({{"id", t.id}, {"cores", t.cores}, {"duration_s", t.duration_s}});
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write workload file " + path.string());
  out << nlohmann::json{{"tasks", std::move(tasks)}}.dump(2) << '\n';
}

}  // namespace vfc
