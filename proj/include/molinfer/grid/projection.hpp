#pragma once

#include <string>
#include <vector>

#include "molinfer/desc/registry.hpp"
#include "molinfer/reg/model_io.hpp"

namespace molinfer::grid {

// Affine projection functions theta_p(x) = w_p . (x, 1): each weight
// vector has K entries plus the affine term in slot K+1.
struct ProjectionSet {
  int dim = 0;  // K
  std::vector<std::vector<double>> w;  // p_max rows of length K+1

  int p_max() const { return static_cast<int>(w.size()); }

  void validate() const;

  // theta_p(x) for one p.
  double theta_p(int p, const std::vector<double>& x) const;
  // All components.
  std::vector<double> theta(const std::vector<double>& x) const;
};

// Embeds linear prediction functions for auxiliary properties into
// full-width projections: zeros on descriptors the model does not use,
// model bias in the affine slot. Grids then correspond to bands of
// predicted auxiliary-property values.
ProjectionSet make_property_projections(
    const std::vector<reg::PredictionModel>& models,
    const desc::DescriptorRegistry& reg);

}  // namespace molinfer::grid
