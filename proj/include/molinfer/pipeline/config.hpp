#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace molinfer::pipeline {

// Line-oriented `key = value` configuration with [section] headers.
// Lookups use "section.key".
class ConfigFile {
 public:
  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  bool has(const std::string& dotted_key) const;
  std::string get(const std::string& dotted_key) const;  // throws if absent
  std::string get_or(const std::string& dotted_key,
                     const std::string& fallback) const;
  long long get_int(const std::string& dotted_key, long long fallback) const;
  double get_real(const std::string& dotted_key, double fallback) const;
  bool get_bool(const std::string& dotted_key, bool fallback) const;

  void set(const std::string& dotted_key, const std::string& value);

 private:
  std::map<std::string, std::string> values_;
};

// Everything the pipeline commands need, resolved from a ConfigFile plus
// command-line overrides.
struct PipelineConfig {
  std::string run_dir;
  std::string dataset_csv;
  std::string graphs_dir;
  std::string elements_path;  // empty: built-in table
  std::string topology_path;

  int rho = 2;

  // Training.
  std::string model_kind = "mlp";
  std::vector<int> hidden = {4};
  double r_stop = 0.95;
  int it_stop = 200;
  double learning_rate = 0.05;
  int batch = 32;
  double lambda = 0.01;
  uint64_t seed = 1;
  int folds = 5;
  int repeats = 10;
  std::vector<std::string> input_ids;  // empty: all descriptors

  // Inference.
  double y_lower = 0.0;
  double y_upper = 0.0;
  double time_limit = 60.0;

  // Grid search.
  std::vector<std::string> projection_files;
  std::vector<double> delta = {1.0};
  std::vector<int> radius = {2};
  bool prune = true;
  int grid_batch = 16;

  std::optional<std::string> solver_override;  // executable or command line

  static PipelineConfig from_file(const ConfigFile& f);
};

}  // namespace molinfer::pipeline
