#include "molinfer/pipeline/commands.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <stdexcept>

#include "molinfer/chem/element.hpp"
#include "molinfer/desc/featurize.hpp"
#include "molinfer/desc/normalize.hpp"
#include "molinfer/desc/registry.hpp"
#include "molinfer/enc/graph.hpp"
#include "molinfer/enc/linear.hpp"
#include "molinfer/enc/mlp.hpp"
#include "molinfer/enc/target.hpp"
#include "molinfer/enc/topology.hpp"
#include "molinfer/grid/search.hpp"
#include "molinfer/milp/solver.hpp"
#include "molinfer/reg/crossval.hpp"
#include "molinfer/reg/metrics.hpp"
#include "molinfer/reg/model_io.hpp"
#include "molinfer/util/sha256.hpp"
#include "molinfer/util/text.hpp"

namespace fs = std::filesystem;

namespace molinfer::pipeline {

namespace {

chem::ElementTable load_table(const PipelineConfig& cfg) {
  if (cfg.elements_path.empty()) return chem::ElementTable::defaults();
  return chem::ElementTable::load(cfg.elements_path);
}

struct DatasetFiles {
  std::vector<std::string> ids;
  std::vector<double> values;
  std::vector<chem::ChemicalGraph> graphs;
};

DatasetFiles load_dataset(const PipelineConfig& cfg,
                          const chem::ElementTable& table) {
  if (cfg.dataset_csv.empty() || cfg.graphs_dir.empty()) {
    throw std::runtime_error("paths.dataset and paths.graphs are required");
  }
  DatasetFiles out;
  auto lines = util::split(util::read_file(cfg.dataset_csv), '\n');
  std::vector<std::string> errors;
  bool first = true;
  for (const auto& raw : lines) {
    auto line = util::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (first && line.rfind("graph_id", 0) == 0) {
      first = false;
      continue;  // header
    }
    first = false;
    auto cells = util::split(line, ',');
    if (cells.size() != 2) {
      throw std::runtime_error("dataset line needs `graph_id,value`: " + line);
    }
    std::string id = util::trim(cells[0]);
    double value = util::parse_real(util::trim(cells[1]), "property value");
    std::string path = cfg.graphs_dir + "/" + id + ".grf";
    try {
      out.graphs.push_back(chem::parse_graph(util::read_file(path), table));
      out.ids.push_back(id);
      out.values.push_back(value);
    } catch (const std::exception& e) {
      errors.push_back(id + ": " + e.what());
    }
  }
  if (!errors.empty()) {
    std::string msg = "graph errors:\n";
    for (const auto& e : errors) msg += "  " + e + "\n";
    throw std::runtime_error(msg);
  }
  if (out.ids.empty()) throw std::runtime_error("dataset is empty");
  return out;
}

void write_manifest(const std::string& run_dir,
                    const std::vector<std::string>& files) {
  std::string manifest;
  for (const auto& f : files) {
    manifest += util::sha256_hex(util::read_file(run_dir + "/" + f)) + "  " +
                f + "\n";
  }
  util::write_file(run_dir + "/manifest.txt", manifest);
}

milp::Solver make_solver(const PipelineConfig& cfg) {
  milp::SolverConfig sc;
  if (cfg.solver_override && !cfg.solver_override->empty()) {
    auto words = util::split_ws(*cfg.solver_override);
    sc.executable = words[0];
    sc.args.assign(words.begin() + 1, words.end());
    if (sc.args.empty()) sc.args = {"{lp}", "{sol}", "{timelimit}"};
  } else {
    sc = milp::SolverConfig::detect();
  }
  sc.time_limit_seconds = cfg.time_limit;
  return milp::Solver(sc);
}

std::vector<double> read_values_for(const FeatureTable& ft,
                                    const std::string& values_csv) {
  std::map<std::string, double> by_id;
  bool first = true;
  for (const auto& raw : util::split(util::read_file(values_csv), '\n')) {
    auto line = util::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (first && line.rfind("graph_id", 0) == 0) {
      first = false;
      continue;
    }
    first = false;
    auto cells = util::split(line, ',');
    if (cells.size() != 2) continue;
    by_id[util::trim(cells[0])] =
        util::parse_real(util::trim(cells[1]), "value");
  }
  std::vector<double> out;
  for (const auto& id : ft.ids) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw std::runtime_error("no property value for graph " + id);
    }
    out.push_back(it->second);
  }
  return out;
}

// The combined Stage-4 instance: graph constraints, feature link,
// prediction function and target interval in one model.
struct InferAssembly {
  milp::MilpModel model;
  enc::GraphEncoding graph;
  std::vector<int> x_vars;      // one per registry descriptor
  std::vector<int> model_x;     // the model-input slice of x_vars
  int y_var = -1;
  desc::DescriptorRegistry reg;
  reg::PredictionModel pred;
  enc::TopologySpec topo;
  chem::ElementTable table;
};

InferAssembly assemble_infer(const PipelineConfig& cfg) {
  InferAssembly a;
  a.table = load_table(cfg);
  a.reg = desc::DescriptorRegistry::deserialize(
      util::read_file(cfg.run_dir + "/registry.txt"));
  a.pred = reg::PredictionModel::deserialize(
      util::read_file(cfg.run_dir + "/model.txt"));
  if (cfg.topology_path.empty()) {
    throw std::runtime_error("paths.topology is required for inference");
  }
  a.topo = enc::TopologySpec::parse(util::read_file(cfg.topology_path));
  if (a.topo.rho != a.reg.rho()) {
    throw std::runtime_error("topology rho differs from registry rho");
  }
  a.topo.fill_from_registry(a.reg, a.table);
  a.topo.validate(a.table);

  a.graph = enc::encode_graph(a.model, a.topo, a.table, "g");
  a.x_vars = enc::encode_feature_link(a.model, a.graph, a.reg, a.pred.norm, "f");
  auto bound = a.pred.bind_inputs(a.reg);
  for (int idx : bound) a.model_x.push_back(a.x_vars[idx]);
  if (a.pred.kind == reg::ModelKind::kMlp) {
    auto encoded = enc::encode_mlp(a.model, a.pred.mlp, a.model_x, "c1");
    a.y_var = encoded.y_var;
  } else {
    a.y_var =
        a.model.add_var("c1_y", milp::VarKind::kContinuous, -milp::kInf,
                        milp::kInf);
    enc::encode_linear(a.model, a.model_x, a.pred.lin_weights, a.pred.lin_bias,
                       a.y_var, "c1_lin");
  }
  enc::bind_target(a.model, a.y_var, {cfg.y_lower, cfg.y_upper}, "target");
  return a;
}

// Count descriptors must round-trip exactly between the assignment and
// the decoded graph's feature vector.
void check_count_roundtrip(const InferAssembly& a,
                           const std::vector<double>& assignment,
                           const chem::ChemicalGraph& decoded) {
  auto feat = desc::featurize(decoded, a.reg);
  for (int j = 0; j < a.reg.size(); ++j) {
    const auto& d = a.reg.at(j);
    if (d.kind == desc::DescriptorKind::kScalar &&
        (d.key == "avg_mass")) {
      continue;  // ratio descriptor, checked within solver tolerance below
    }
    double norm_x = assignment[a.x_vars[j]];
    double raw = a.pred.norm.invert_one(j, norm_x);
    if (std::llround(raw) != std::llround(feat.values[j])) {
      throw std::runtime_error(
          "count round-trip mismatch on " + d.id() + ": model " +
          util::format_number(raw) + " vs graph " +
          util::format_number(feat.values[j]));
    }
  }
}

std::string grid_state_name(grid::GridState s) {
  switch (s) {
    case grid::GridState::kUntested: return "untested";
    case grid::GridState::kFeasible: return "feasible";
    case grid::GridState::kInfeasible: return "infeasible";
    case grid::GridState::kPruned: return "pruned";
    case grid::GridState::kTimeout: return "timeout";
    case grid::GridState::kError: return "error";
  }
  return "?";
}

}  // namespace

std::string FeatureTable::to_csv() const {
  std::string out = "graph_id";
  for (const auto& h : header) out += "," + h;
  out += "\n";
  for (size_t i = 0; i < ids.size(); ++i) {
    out += ids[i];
    for (double v : rows[i]) out += "," + util::format_number_exact(v);
    out += "\n";
  }
  return out;
}

FeatureTable FeatureTable::from_csv(const std::string& text) {
  FeatureTable t;
  bool first = true;
  for (const auto& raw : util::split(text, '\n')) {
    auto line = util::trim(raw);
    if (line.empty()) continue;
    auto cells = util::split(line, ',');
    if (first) {
      first = false;
      if (cells.empty() || cells[0] != "graph_id") {
        throw std::runtime_error("feature CSV must start with graph_id");
      }
      t.header.assign(cells.begin() + 1, cells.end());
      continue;
    }
    t.ids.push_back(cells[0]);
    std::vector<double> row;
    for (size_t j = 1; j < cells.size(); ++j) {
      row.push_back(util::parse_real(cells[j], "feature value"));
    }
    if (row.size() != t.header.size()) {
      throw std::runtime_error("feature CSV row width mismatch");
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

int cmd_featurize(const PipelineConfig& cfg) {
  auto table = load_table(cfg);
  auto data = load_dataset(cfg, table);
  fs::create_directories(cfg.run_dir);

  auto reg = desc::DescriptorRegistry::build(data.graphs, cfg.rho);
  FeatureTable raw;
  for (const auto& d : reg.descriptors()) raw.header.push_back(d.id());
  raw.ids = data.ids;
  for (const auto& g : data.graphs) {
    raw.rows.push_back(desc::featurize(g, reg).values);
  }
  auto norm = desc::Normalization::fit(raw.rows);
  FeatureTable scaled = raw;
  scaled.rows = norm.apply_all(raw.rows);

  util::write_file(cfg.run_dir + "/registry.txt", reg.serialize());
  util::write_file(cfg.run_dir + "/features_raw.csv", raw.to_csv());
  util::write_file(cfg.run_dir + "/features.csv", scaled.to_csv());
  util::write_file(cfg.run_dir + "/normalization.txt",
                   norm.serialize(raw.header));
  {
    std::string values = "graph_id,value\n";
    for (size_t i = 0; i < data.ids.size(); ++i) {
      values += data.ids[i] + "," + util::format_number_exact(data.values[i]) + "\n";
    }
    util::write_file(cfg.run_dir + "/values.csv", values);
  }
  write_manifest(cfg.run_dir, {"registry.txt", "features_raw.csv",
                               "features.csv", "normalization.txt",
                               "values.csv"});
  std::cout << "featurize: graphs=" << data.ids.size()
            << " |Gamma|=" << reg.gamma_count()
            << " |F|=" << reg.fringe_count() << " K=" << reg.size() << "\n";
  return kExitOk;
}

int cmd_train(const PipelineConfig& cfg) {
  auto scaled = FeatureTable::from_csv(
      util::read_file(cfg.run_dir + "/features.csv"));
  auto values = read_values_for(scaled, cfg.run_dir + "/values.csv");
  auto norm = desc::Normalization::deserialize(
      util::read_file(cfg.run_dir + "/normalization.txt"));

  // Resolve the model input columns (S_pi); default is every descriptor.
  std::vector<std::string> input_ids = cfg.input_ids;
  if (input_ids.empty()) input_ids = scaled.header;
  std::vector<int> cols;
  for (const auto& id : input_ids) {
    int found = -1;
    for (size_t j = 0; j < scaled.header.size(); ++j) {
      if (scaled.header[j] == id) found = static_cast<int>(j);
    }
    if (found < 0) throw std::runtime_error("unknown input descriptor: " + id);
    cols.push_back(found);
  }

  reg::Dataset data;
  data.y = values;
  for (const auto& row : scaled.rows) {
    std::vector<double> x;
    for (int c : cols) x.push_back(row[c]);
    data.x.push_back(std::move(x));
  }

  reg::TrainConfig tc;
  tc.r_stop = cfg.r_stop;
  tc.it_stop = cfg.it_stop;
  tc.learning_rate = cfg.learning_rate;
  tc.batch_size = cfg.batch;
  tc.seed = cfg.seed;
  tc.lambda = cfg.lambda;

  auto kind = cfg.model_kind == "lasso" ? reg::ModelKind::kLasso
                                        : reg::ModelKind::kMlp;
  auto report =
      reg::cross_validate(data, kind, cfg.hidden, tc, cfg.folds, cfg.repeats);
  util::write_file(cfg.run_dir + "/cv_report.txt", report.serialize());

  reg::PredictionModel out;
  out.kind = kind;
  out.norm_ids = scaled.header;
  out.norm = norm;
  if (kind == reg::ModelKind::kLasso) {
    auto lin = reg::train_lasso(data, tc);
    for (size_t j = 0; j < lin.selected.size(); ++j) {
      out.inputs.push_back(input_ids[lin.selected[j]]);
      out.lin_weights.push_back(lin.weights[j]);
    }
    out.lin_bias = lin.bias;
  } else {
    std::vector<int> arch;
    arch.push_back(static_cast<int>(cols.size()));
    for (int h : cfg.hidden) arch.push_back(h);
    arch.push_back(1);
    auto trained = reg::train_mlp(data, arch, tc);
    out.inputs = input_ids;
    out.mlp = trained.model;
    std::cout << "train: epochs=" << trained.epochs
              << " final_train_r2=" << trained.r2_history.back() << "\n";
  }
  util::write_file(cfg.run_dir + "/model.txt", out.serialize());
  write_manifest(cfg.run_dir, {"registry.txt", "features_raw.csv",
                               "features.csv", "normalization.txt",
                               "values.csv", "cv_report.txt", "model.txt"});
  std::cout << "train: cv_median_r2=" << util::format_number(report.median)
            << " scores=" << report.scores.size() << "\n";
  return kExitOk;
}

int cmd_infer(const PipelineConfig& cfg) {
  auto a = assemble_infer(cfg);
  auto solver = make_solver(cfg);
  auto res = solver.solve(a.model);
  if (res.status == milp::SolveStatus::kInfeasible) {
    std::cout << "infer: infeasible; no chemical graph satisfies the "
                 "specification within the target interval\n";
    return kExitInfeasible;
  }
  if (res.status != milp::SolveStatus::kFeasible) {
    std::cerr << "infer: solver failure\n" << res.log_digest << "\n";
    return kExitError;
  }
  auto decoded = a.graph.decode(res.assignment);
  check_count_roundtrip(a, res.assignment, decoded);

  auto feat = desc::featurize(decoded, a.reg);
  auto normalized = a.pred.norm.apply(feat.values);
  double y_pred = a.pred.predict_full(normalized, a.pred.bind_inputs(a.reg));
  double y_milp = res.assignment[a.y_var];

  util::write_file(cfg.run_dir + "/seed_graph.grf", chem::write_graph(decoded));
  {
    std::string info;
    info += "y_milp " + util::format_number(y_milp) + "\n";
    info += "y_pred " + util::format_number(y_pred) + "\n";
    info += "interval " + util::format_number(cfg.y_lower) + " " +
            util::format_number(cfg.y_upper) + "\n";
    util::write_file(cfg.run_dir + "/seed_info.txt", info);
  }
  {
    std::string xs;
    for (int j = 0; j < a.reg.size(); ++j) {
      xs += a.reg.at(j).id() + " " +
            util::format_number(res.assignment[a.x_vars[j]]) + "\n";
    }
    util::write_file(cfg.run_dir + "/seed_x.txt", xs);
  }
  std::cout << "infer: feasible y=" << util::format_number(y_milp)
            << " n=" << decoded.n() << "\n";
  return kExitOk;
}

int cmd_grid_search(const PipelineConfig& cfg) {
  if (!fs::exists(cfg.run_dir + "/seed_graph.grf")) {
    int rc = cmd_infer(cfg);
    if (rc != kExitOk) return rc;
  }
  auto a = assemble_infer(cfg);
  auto seed = chem::parse_graph(
      util::read_file(cfg.run_dir + "/seed_graph.grf"), a.table);
  auto seed_x = a.pred.norm.apply(desc::featurize(seed, a.reg).values);

  if (cfg.projection_files.empty()) {
    throw std::runtime_error("grid.projections must list at least one "
                             "linear model file");
  }
  std::vector<reg::PredictionModel> aux;
  for (const auto& f : cfg.projection_files) {
    aux.push_back(reg::PredictionModel::deserialize(util::read_file(f)));
  }
  auto ps = grid::make_property_projections(aux, a.reg);

  auto delta = cfg.delta;
  for (auto& d : delta) {
    if (d < 1e-3) {
      std::cerr << "grid: delta below 1e-3 is numerically fragile; raising\n";
      d = 1e-3;
    }
  }
  auto geo = grid::centered_geometry(ps, seed_x, delta, cfg.radius);

  auto solver = make_solver(cfg);
  grid::GridSearchOptions opt;
  opt.prune = cfg.prune;
  opt.batch_size = cfg.grid_batch;
  auto result = grid::grid_search(a.model, a.x_vars, ps, geo, solver, opt);

  std::string csv;
  for (int p = 0; p < ps.p_max(); ++p) csv += "z" + std::to_string(p + 1) + ",";
  csv += "status,witness,solve_seconds\n";
  std::vector<std::string> artifacts = {"grid_report.csv"};
  std::string seed_code = chem::canonical_tree_code(seed);
  int distinct = 0;
  for (const auto& rec : result.records) {
    std::string wid;
    if (rec.state == grid::GridState::kFeasible) {
      auto g = a.graph.decode(rec.assignment);
      wid = "witness";
      for (int zi : rec.z) {
        wid += (zi < 0 ? "_m" : "_") + std::to_string(std::abs(zi));
      }
      util::write_file(cfg.run_dir + "/" + wid + ".grf", chem::write_graph(g));
      artifacts.push_back(wid + ".grf");
      if (chem::canonical_tree_code(g) != seed_code) ++distinct;
    } else if (rec.state == grid::GridState::kPruned && rec.pruned_by) {
      wid = "pruned_by";
      for (int zi : *rec.pruned_by) {
        wid += (zi < 0 ? "_m" : "_") + std::to_string(std::abs(zi));
      }
    }
    std::string line;
    for (int zi : rec.z) line += std::to_string(zi) + ",";
    line += grid_state_name(rec.state) + "," + wid + "," +
            util::format_number(rec.solve_seconds);
    csv += line + "\n";
  }
  util::write_file(cfg.run_dir + "/grid_report.csv", csv);
  write_manifest(cfg.run_dir, artifacts);
  std::cout << "grid-search: grids=" << result.records.size()
            << " feasible=" << result.feasible
            << " infeasible=" << result.infeasible
            << " pruned=" << result.pruned << " timeout=" << result.timeout
            << " distinct_witnesses=" << distinct << "\n";
  return kExitOk;
}

int cmd_eval(const PipelineConfig& cfg) {
  auto raw = FeatureTable::from_csv(
      util::read_file(cfg.run_dir + "/features_raw.csv"));
  auto values = read_values_for(raw, cfg.run_dir + "/values.csv");
  auto model = reg::PredictionModel::deserialize(
      util::read_file(cfg.run_dir + "/model.txt"));
  auto registry = desc::DescriptorRegistry::deserialize(
      util::read_file(cfg.run_dir + "/registry.txt"));
  auto bound = model.bind_inputs(registry);
  std::vector<double> preds;
  for (const auto& row : raw.rows) {
    preds.push_back(model.predict_full(model.norm.apply(row), bound));
  }
  double r2 = reg::r_squared(preds, values);
  std::cout << "eval: r2=" << util::format_number(r2)
            << " rows=" << preds.size() << "\n";
  return kExitOk;
}

}  // namespace molinfer::pipeline
