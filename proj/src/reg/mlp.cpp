#include "molinfer/reg/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "molinfer/reg/metrics.hpp"
#include "molinfer/util/rng.hpp"

namespace molinfer::reg {

void MlpModel::validate() const {
  if (arch.size() < 2) throw std::runtime_error("architecture needs >= 2 layers");
  if (arch.back() != 1) throw std::runtime_error("output layer width must be 1");
  for (int w : arch) {
    if (w < 1) throw std::runtime_error("architecture widths must be positive");
  }
  if (static_cast<int>(weights.size()) != layer_count() ||
      static_cast<int>(biases.size()) != layer_count()) {
    throw std::runtime_error("weight/bias layer count mismatch");
  }
  for (int l = 0; l < layer_count(); ++l) {
    size_t expect = static_cast<size_t>(arch[l]) * arch[l + 1];
    if (weights[l].size() != expect ||
        biases[l].size() != static_cast<size_t>(arch[l + 1])) {
      throw std::runtime_error("layer " + std::to_string(l) +
                               " has non-conforming dimensions");
    }
    for (double v : weights[l]) {
      if (!std::isfinite(v)) throw std::runtime_error("non-finite weight");
    }
    for (double v : biases[l]) {
      if (!std::isfinite(v)) throw std::runtime_error("non-finite bias");
    }
  }
}

std::vector<std::vector<double>> MlpModel::forward_preactivations(
    const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != input_width()) {
    throw std::runtime_error("input width mismatch: got " +
                             std::to_string(x.size()) + ", expected " +
                             std::to_string(input_width()));
  }
  std::vector<std::vector<double>> pre(layer_count());
  std::vector<double> act = x;
  for (int l = 0; l < layer_count(); ++l) {
    int in = arch[l], out = arch[l + 1];
    pre[l].assign(out, 0.0);
    for (int o = 0; o < out; ++o) {
      double z = biases[l][o];
      const double* row = &weights[l][static_cast<size_t>(o) * in];
      for (int i = 0; i < in; ++i) z += row[i] * act[i];
      pre[l][o] = z;
    }
    if (l + 1 < layer_count()) {
      act.assign(out, 0.0);
      for (int o = 0; o < out; ++o) act[o] = pre[l][o] > 0 ? pre[l][o] : 0.0;
    }
  }
  return pre;
}

double MlpModel::forward(const std::vector<double>& x) const {
  return forward_preactivations(x).back()[0];
}

MlpGradients mlp_gradients(const MlpModel& model, const Dataset& data,
                           const std::vector<size_t>& batch) {
  int layers = model.layer_count();
  MlpGradients g;
  g.weights.resize(layers);
  g.biases.resize(layers);
  for (int l = 0; l < layers; ++l) {
    g.weights[l].assign(model.weights[l].size(), 0.0);
    g.biases[l].assign(model.biases[l].size(), 0.0);
  }
  double scale = 1.0 / static_cast<double>(batch.size());
  for (size_t idx : batch) {
    const auto& x = data.x[idx];
    // Forward with stored activations.
    std::vector<std::vector<double>> act(layers + 1);
    act[0] = x;
    std::vector<std::vector<double>> pre(layers);
    for (int l = 0; l < layers; ++l) {
      int in = model.arch[l], out = model.arch[l + 1];
      pre[l].assign(out, 0.0);
      for (int o = 0; o < out; ++o) {
        double z = model.biases[l][o];
        const double* row = &model.weights[l][static_cast<size_t>(o) * in];
        for (int i = 0; i < in; ++i) z += row[i] * act[l][i];
        pre[l][o] = z;
      }
      act[l + 1].assign(out, 0.0);
      for (int o = 0; o < out; ++o) {
        act[l + 1][o] =
            (l + 1 < layers) ? (pre[l][o] > 0 ? pre[l][o] : 0.0) : pre[l][o];
      }
    }
    // Backward pass; loss is (1/2B) sum (pred - y)^2.
    std::vector<double> delta = {scale * (act[layers][0] - data.y[idx])};
    for (int l = layers - 1; l >= 0; --l) {
      int in = model.arch[l], out = model.arch[l + 1];
      for (int o = 0; o < out; ++o) {
        g.biases[l][o] += delta[o];
        double* grow = &g.weights[l][static_cast<size_t>(o) * in];
        for (int i = 0; i < in; ++i) grow[i] += delta[o] * act[l][i];
      }
      if (l == 0) break;
      std::vector<double> prev(in, 0.0);
      for (int i = 0; i < in; ++i) {
        if (pre[l - 1][i] <= 0) continue;  // rectifier gate
        double s = 0;
        for (int o = 0; o < out; ++o) {
          s += delta[o] * model.weights[l][static_cast<size_t>(o) * in + i];
        }
        prev[i] = s;
      }
      delta = std::move(prev);
    }
  }
  return g;
}

int epoch_cap(int it_stop) {
  return static_cast<int>(std::ceil(1.5 * it_stop));
}

MlpTrainResult train_mlp(const Dataset& train, const std::vector<int>& arch,
                         const TrainConfig& cfg) {
  if (train.size() == 0) throw std::runtime_error("train_mlp: empty data");
  if (arch.empty() || static_cast<size_t>(arch.front()) != train.width()) {
    throw std::runtime_error("architecture input width must equal feature width");
  }
  if (cfg.r_stop < 0 || cfg.r_stop > 1) {
    throw std::runtime_error("r_stop must lie in [0,1]");
  }
  if (cfg.it_stop < 1) throw std::runtime_error("it_stop must be >= 1");

  MlpModel model;
  model.arch = arch;
  util::Rng rng(cfg.seed);
  for (size_t l = 0; l + 1 < arch.size(); ++l) {
    int in = arch[l], out = arch[l + 1];
    double bound = std::sqrt(6.0 / (in + out));
    std::vector<double> w(static_cast<size_t>(in) * out);
    for (auto& v : w) v = rng.uniform(-bound, bound);
    model.weights.push_back(std::move(w));
    // Hidden biases start slightly positive so no rectifier is born dead.
    double b0 = (l + 2 < arch.size()) ? 0.01 : 0.0;
    model.biases.push_back(std::vector<double>(out, b0));
  }
  model.validate();

  std::vector<size_t> order(train.size());
  std::iota(order.begin(), order.end(), size_t{0});
  int cap = epoch_cap(cfg.it_stop);
  size_t batch_size = cfg.batch_size < 1
                          ? train.size()
                          : std::min<size_t>(cfg.batch_size, train.size());

  MlpTrainResult result;
  for (int epoch = 0; epoch < cap; ++epoch) {
    rng.shuffle(order);
    for (size_t start = 0; start < order.size(); start += batch_size) {
      size_t end = std::min(order.size(), start + batch_size);
      std::vector<size_t> batch(order.begin() + start, order.begin() + end);
      auto g = mlp_gradients(model, train, batch);
      for (int l = 0; l < model.layer_count(); ++l) {
        for (size_t i = 0; i < model.weights[l].size(); ++i) {
          model.weights[l][i] -= cfg.learning_rate * g.weights[l][i];
        }
        for (size_t i = 0; i < model.biases[l].size(); ++i) {
          model.biases[l][i] -= cfg.learning_rate * g.biases[l][i];
        }
      }
    }
    std::vector<double> preds(train.size());
    for (size_t i = 0; i < train.size(); ++i) preds[i] = model.forward(train.x[i]);
    double r2 = r_squared(preds, train.y);
    result.r2_history.push_back(r2);
    result.epochs = epoch + 1;
    if (r2 > cfg.r_stop) break;
  }
  result.model = std::move(model);
  return result;
}

}  // namespace molinfer::reg
