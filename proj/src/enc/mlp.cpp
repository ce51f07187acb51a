#include "molinfer/enc/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace molinfer::enc {

using milp::LinExpr;
using milp::MilpModel;
using milp::Sense;
using milp::VarKind;

MlpEncoding encode_mlp(MilpModel& model, const reg::MlpModel& net,
                       const std::vector<int>& x_vars,
                       const std::string& prefix) {
  net.validate();
  if (static_cast<int>(x_vars.size()) != net.input_width()) {
    throw std::runtime_error("encode_mlp: x variable count mismatch");
  }
  // Current layer inputs: variable ids (or fixed zeros) plus their bounds.
  struct Input {
    int var = -1;  // -1 means the constant 0 (a dead rectifier)
    double lo = 0, hi = 0;
  };
  std::vector<Input> inputs;
  for (int xv : x_vars) {
    const auto& v = model.var(xv);
    if (!std::isfinite(v.lower) || !std::isfinite(v.upper)) {
      throw std::runtime_error("encode_mlp: input variable " + v.name +
                               " must have finite bounds");
    }
    inputs.push_back({xv, v.lower, v.upper});
  }

  MlpEncoding out;
  int layers = net.layer_count();
  for (int l = 0; l < layers; ++l) {
    bool is_output = l == layers - 1;
    int in = net.arch[l], width = net.arch[l + 1];
    std::vector<Input> next;
    for (int o = 0; o < width; ++o) {
      const double* w = &net.weights[l][static_cast<size_t>(o) * in];
      double b = net.biases[l][o];
      double zlo = b, zhi = b;
      LinExpr zex;
      for (int i = 0; i < in; ++i) {
        if (w[i] == 0) continue;
        if (w[i] > 0) {
          zlo += w[i] * inputs[i].lo;
          zhi += w[i] * inputs[i].hi;
        } else {
          zlo += w[i] * inputs[i].hi;
          zhi += w[i] * inputs[i].lo;
        }
        if (inputs[i].var >= 0) zex.add(inputs[i].var, w[i]);
      }
      if (!std::isfinite(zlo) || !std::isfinite(zhi)) {
        throw std::runtime_error("encode_mlp: non-finite propagated bounds");
      }
      std::string unit = prefix + "_l" + std::to_string(l) + "_u" +
                         std::to_string(o);
      if (is_output) {
        int y = model.add_var(unit + "_y", VarKind::kContinuous, zlo, zhi);
        LinExpr e = zex;
        e.add(y, -1.0);
        model.add_constraint(unit + "_aff", std::move(e), Sense::kEq, -b);
        out.y_var = y;
        out.y_lower = zlo;
        out.y_upper = zhi;
        continue;
      }
      if (zhi <= 0) {
        // Rectifier can never open; the unit contributes a constant 0.
        next.push_back({-1, 0, 0});
        continue;
      }
      if (zlo >= 0) {
        // Rectifier always open: h = z.
        int h = model.add_var(unit + "_h", VarKind::kContinuous, zlo, zhi);
        LinExpr e = zex;
        e.add(h, -1.0);
        model.add_constraint(unit + "_aff", std::move(e), Sense::kEq, -b);
        next.push_back({h, zlo, zhi});
        continue;
      }
      int z = model.add_var(unit + "_z", VarKind::kContinuous, zlo, zhi);
      int h = model.add_var(unit + "_h", VarKind::kContinuous, 0, zhi);
      int s = model.add_binary(unit + "_s");
      {
        LinExpr e = zex;
        e.add(z, -1.0);
        model.add_constraint(unit + "_aff", std::move(e), Sense::kEq, -b);
      }
      // h >= z
      model.add_constraint(unit + "_ge",
                           LinExpr().add(h, 1.0).add(z, -1.0), Sense::kGe, 0);
      // h <= z + (-zlo)(1 - s)   <=>   h - z + (-zlo) s <= -zlo
      model.add_constraint(
          unit + "_ub1", LinExpr().add(h, 1.0).add(z, -1.0).add(s, -zlo),
          Sense::kLe, -zlo);
      // h <= zhi * s
      model.add_constraint(unit + "_ub2",
                           LinExpr().add(h, 1.0).add(s, -zhi), Sense::kLe, 0);
      next.push_back({h, 0, zhi});
    }
    if (!is_output) inputs = std::move(next);
  }
  return out;
}

}  // namespace molinfer::enc
