#include "molinfer/grid/projection.hpp"

#include <stdexcept>

namespace molinfer::grid {

void ProjectionSet::validate() const {
  if (w.empty()) throw std::runtime_error("projection set is empty");
  for (const auto& row : w) {
    if (static_cast<int>(row.size()) != dim + 1) {
      throw std::runtime_error("projection weight length must be K+1");
    }
  }
}

double ProjectionSet::theta_p(int p, const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != dim) {
    throw std::runtime_error("theta: x has wrong dimension");
  }
  const auto& row = w[p];
  double s = row[dim];  // affine term
  for (int j = 0; j < dim; ++j) s += row[j] * x[j];
  return s;
}

std::vector<double> ProjectionSet::theta(const std::vector<double>& x) const {
  std::vector<double> out(p_max());
  for (int p = 0; p < p_max(); ++p) out[p] = theta_p(p, x);
  return out;
}

ProjectionSet make_property_projections(
    const std::vector<reg::PredictionModel>& models,
    const desc::DescriptorRegistry& reg) {
  ProjectionSet ps;
  ps.dim = reg.size();
  for (const auto& m : models) {
    if (m.kind != reg::ModelKind::kLasso) {
      throw std::runtime_error(
          "projection functions must be linear prediction functions");
    }
    std::vector<double> row(reg.size() + 1, 0.0);
    auto bound = m.bind_inputs(reg);  // throws on registry mismatch
    for (size_t j = 0; j < bound.size(); ++j) {
      row[bound[j]] += m.lin_weights[j];
    }
    row[reg.size()] = m.lin_bias;
    ps.w.push_back(std::move(row));
  }
  ps.validate();
  return ps;
}

}  // namespace molinfer::grid
