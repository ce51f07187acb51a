#include "molinfer/pipeline/config.hpp"

#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::pipeline {

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile f;
  std::string section;
  int lineno = 0;
  for (const auto& raw : util::split(text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    line = util::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = util::trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected `key = value`");
    }
    std::string key = util::trim(line.substr(0, eq));
    std::string value = util::trim(line.substr(eq + 1));
    if (key.empty()) {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": empty key");
    }
    f.values_[section.empty() ? key : section + "." + key] = value;
  }
  return f;
}

ConfigFile ConfigFile::load(const std::string& path) {
  return parse(util::read_file(path));
}

bool ConfigFile::has(const std::string& k) const { return values_.count(k) > 0; }

std::string ConfigFile::get(const std::string& k) const {
  auto it = values_.find(k);
  if (it == values_.end()) {
    throw std::runtime_error("missing config key: " + k);
  }
  return it->second;
}

std::string ConfigFile::get_or(const std::string& k,
                               const std::string& fallback) const {
  auto it = values_.find(k);
  return it == values_.end() ? fallback : it->second;
}

long long ConfigFile::get_int(const std::string& k, long long fallback) const {
  auto it = values_.find(k);
  return it == values_.end() ? fallback : util::parse_int(it->second, k);
}

double ConfigFile::get_real(const std::string& k, double fallback) const {
  auto it = values_.find(k);
  return it == values_.end() ? fallback : util::parse_real(it->second, k);
}

bool ConfigFile::get_bool(const std::string& k, bool fallback) const {
  auto it = values_.find(k);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1" || it->second == "yes") {
    return true;
  }
  if (it->second == "false" || it->second == "0" || it->second == "no") {
    return false;
  }
  throw std::runtime_error("config key " + k + ": expected a boolean");
}

void ConfigFile::set(const std::string& k, const std::string& v) {
  values_[k] = v;
}

namespace {

std::vector<std::string> comma_list(const std::string& s) {
  std::vector<std::string> out;
  for (auto& item : util::split(s, ',')) {
    auto t = util::trim(item);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

}  // namespace

PipelineConfig PipelineConfig::from_file(const ConfigFile& f) {
  PipelineConfig c;
  c.run_dir = f.get_or("paths.run_dir", "run");
  c.dataset_csv = f.get_or("paths.dataset", "");
  c.graphs_dir = f.get_or("paths.graphs", "");
  c.elements_path = f.get_or("paths.elements", "");
  c.topology_path = f.get_or("paths.topology", "");

  c.rho = static_cast<int>(f.get_int("featurize.rho", 2));

  c.model_kind = f.get_or("train.model", "mlp");
  if (c.model_kind != "mlp" && c.model_kind != "lasso") {
    throw std::runtime_error("train.model must be mlp or lasso");
  }
  c.hidden.clear();
  for (const auto& h : comma_list(f.get_or("train.hidden", "4"))) {
    c.hidden.push_back(static_cast<int>(util::parse_int(h, "train.hidden")));
  }
  c.r_stop = f.get_real("train.r_stop", 0.95);
  c.it_stop = static_cast<int>(f.get_int("train.it_stop", 200));
  c.learning_rate = f.get_real("train.learning_rate", 0.05);
  c.batch = static_cast<int>(f.get_int("train.batch", 32));
  c.lambda = f.get_real("train.lambda", 0.01);
  c.seed = static_cast<uint64_t>(f.get_int("train.seed", 1));
  c.folds = static_cast<int>(f.get_int("train.folds", 5));
  c.repeats = static_cast<int>(f.get_int("train.repeats", 10));
  if (f.has("train.inputs") && f.get("train.inputs") != "all") {
    c.input_ids = comma_list(f.get("train.inputs"));
  }

  c.y_lower = f.get_real("infer.y_lower", 0.0);
  c.y_upper = f.get_real("infer.y_upper", 0.0);
  c.time_limit = f.get_real("infer.time_limit", 60.0);

  c.projection_files = comma_list(f.get_or("grid.projections", ""));
  c.delta.clear();
  for (const auto& d : comma_list(f.get_or("grid.delta", "1"))) {
    c.delta.push_back(util::parse_real(d, "grid.delta"));
  }
  c.radius.clear();
  for (const auto& r : comma_list(f.get_or("grid.radius", "2"))) {
    c.radius.push_back(static_cast<int>(util::parse_int(r, "grid.radius")));
  }
  c.prune = f.get_bool("grid.prune", true);
  c.grid_batch = static_cast<int>(f.get_int("grid.batch", 16));
  return c;
}

}  // namespace molinfer::pipeline
