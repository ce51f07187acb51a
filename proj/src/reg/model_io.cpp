#include "molinfer/reg/model_io.hpp"

#include <sstream>
#include <stdexcept>

#include "molinfer/util/text.hpp"

namespace molinfer::reg {

double PredictionModel::predict(const std::vector<double>& selected_x) const {
  if (static_cast<int>(selected_x.size()) != input_width()) {
    throw std::runtime_error("model input width mismatch");
  }
  if (kind == ModelKind::kLasso) {
    double y = lin_bias;
    for (size_t j = 0; j < lin_weights.size(); ++j) {
      y += lin_weights[j] * selected_x[j];
    }
    return y;
  }
  return mlp.forward(selected_x);
}

std::vector<int> PredictionModel::bind_inputs(
    const desc::DescriptorRegistry& reg) const {
  std::vector<int> out;
  out.reserve(inputs.size());
  for (const auto& id : inputs) {
    int idx = -1;
    for (int i = 0; i < reg.size(); ++i) {
      if (reg.at(i).id() == id) {
        idx = i;
        break;
      }
    }
    if (idx < 0) {
      throw std::runtime_error("model input '" + id + "' not in registry");
    }
    out.push_back(idx);
  }
  return out;
}

double PredictionModel::predict_full(
    const std::vector<double>& normalized_row,
    const std::vector<int>& bound_inputs) const {
  std::vector<double> x(bound_inputs.size());
  for (size_t j = 0; j < bound_inputs.size(); ++j) {
    x[j] = normalized_row[bound_inputs[j]];
  }
  return predict(x);
}

std::string PredictionModel::serialize() const {
  std::ostringstream out;
  out << "kind " << (kind == ModelKind::kLasso ? "lasso" : "mlp") << "\n";
  out << "inputs " << inputs.size() << "\n";
  for (size_t i = 0; i < inputs.size(); ++i) {
    out << "input " << i << " " << inputs[i] << "\n";
  }
  if (kind == ModelKind::kLasso) {
    out << "lin_bias " << util::format_number_exact(lin_bias) << "\n";
    out << "lin_weights";
    for (double w : lin_weights) out << " " << util::format_number_exact(w);
    out << "\n";
  } else {
    out << "arch";
    for (int a : mlp.arch) out << " " << a;
    out << "\n";
    for (int l = 0; l < mlp.layer_count(); ++l) {
      out << "layer " << l << " weights";
      for (double w : mlp.weights[l]) out << " " << util::format_number_exact(w);
      out << "\n";
      out << "layer " << l << " bias";
      for (double b : mlp.biases[l]) out << " " << util::format_number_exact(b);
      out << "\n";
    }
  }
  out << "norm " << norm_ids.size() << "\n";
  for (size_t j = 0; j < norm_ids.size(); ++j) {
    out << "normrow " << norm_ids[j] << " " << util::format_number_exact(norm.mins[j])
        << " " << util::format_number_exact(norm.maxs[j]) << "\n";
  }
  return out.str();
}

PredictionModel PredictionModel::deserialize(const std::string& text) {
  PredictionModel m;
  m.mlp = MlpModel{};
  std::vector<std::string> lines = util::split(text, '\n');
  size_t r = 0;
  auto next = [&]() -> std::vector<std::string> {
    while (r < lines.size()) {
      auto tok = util::split_ws(lines[r]);
      ++r;
      if (!tok.empty()) return tok;
    }
    return {};
  };
  auto tok = next();
  if (tok.size() != 2 || tok[0] != "kind") {
    throw std::runtime_error("model file must start with `kind`");
  }
  m.kind = tok[1] == "lasso" ? ModelKind::kLasso : ModelKind::kMlp;
  tok = next();
  if (tok.size() != 2 || tok[0] != "inputs") {
    throw std::runtime_error("model file: expected `inputs <count>`");
  }
  size_t n_inputs = static_cast<size_t>(util::parse_int(tok[1], "inputs"));
  m.inputs.resize(n_inputs);
  for (size_t i = 0; i < n_inputs; ++i) {
    tok = next();
    if (tok.size() != 3 || tok[0] != "input") {
      throw std::runtime_error("model file: expected `input <i> <id>`");
    }
    m.inputs[static_cast<size_t>(util::parse_int(tok[1], "input index"))] = tok[2];
  }
  if (m.kind == ModelKind::kLasso) {
    tok = next();
    if (tok.size() != 2 || tok[0] != "lin_bias") {
      throw std::runtime_error("model file: expected `lin_bias`");
    }
    m.lin_bias = util::parse_real(tok[1], "lin_bias");
    tok = next();
    if (tok.empty() || tok[0] != "lin_weights" ||
        tok.size() != n_inputs + 1) {
      throw std::runtime_error("model file: expected `lin_weights` row");
    }
    for (size_t j = 1; j < tok.size(); ++j) {
      m.lin_weights.push_back(util::parse_real(tok[j], "weight"));
    }
  } else {
    tok = next();
    if (tok.size() < 3 || tok[0] != "arch") {
      throw std::runtime_error("model file: expected `arch` row");
    }
    for (size_t j = 1; j < tok.size(); ++j) {
      m.mlp.arch.push_back(static_cast<int>(util::parse_int(tok[j], "arch")));
    }
    int layers = m.mlp.layer_count();
    m.mlp.weights.resize(layers);
    m.mlp.biases.resize(layers);
    for (int l = 0; l < layers; ++l) {
      for (int part = 0; part < 2; ++part) {
        tok = next();
        if (tok.size() < 4 || tok[0] != "layer") {
          throw std::runtime_error("model file: expected `layer` row");
        }
        int li = static_cast<int>(util::parse_int(tok[1], "layer"));
        std::vector<double> vals;
        for (size_t j = 3; j < tok.size(); ++j) {
          vals.push_back(util::parse_real(tok[j], "layer value"));
        }
        if (tok[2] == "weights") {
          m.mlp.weights[li] = std::move(vals);
        } else {
          m.mlp.biases[li] = std::move(vals);
        }
      }
    }
    m.mlp.validate();
  }
  tok = next();
  if (tok.size() != 2 || tok[0] != "norm") {
    throw std::runtime_error("model file: expected `norm <count>`");
  }
  size_t n_norm = static_cast<size_t>(util::parse_int(tok[1], "norm count"));
  for (size_t j = 0; j < n_norm; ++j) {
    tok = next();
    if (tok.size() != 4 || tok[0] != "normrow") {
      throw std::runtime_error("model file: expected `normrow <id> <min> <max>`");
    }
    m.norm_ids.push_back(tok[1]);
    m.norm.mins.push_back(util::parse_real(tok[2], "min"));
    m.norm.maxs.push_back(util::parse_real(tok[3], "max"));
  }
  return m;
}

}  // namespace molinfer::reg
