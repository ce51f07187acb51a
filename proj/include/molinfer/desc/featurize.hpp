#pragma once

#include <map>
#include <string>
#include <vector>

#include "molinfer/chem/decompose.hpp"
#include "molinfer/chem/graph.hpp"
#include "molinfer/desc/config.hpp"
#include "molinfer/desc/registry.hpp"

namespace molinfer::desc {

// Interior-edge counts keyed by canonical adjacency-configuration.
std::map<AdjacencyConfig, int> count_adjacency_configs(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d);

// Interior-edge counts keyed by canonical edge-configuration.
std::map<EdgeConfig, int> count_edge_configs(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d);

// Interior-vertex counts keyed by chemical symbol.
std::map<ChemicalSymbol, int> count_chemical_symbols(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d);

// Counts of non-trivial fringe classes by canonical code.
std::map<std::string, int> count_fringe_classes(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d);

struct FeatureVector {
  std::vector<double> values;  // length = registry size
};

// Raw (unnormalized) descriptor vector of g under the registry's rho.
// Throws when g contains a configuration or fringe class the registry
// does not know, listing every unknown.
FeatureVector featurize(const chem::ChemicalGraph& g,
                        const DescriptorRegistry& reg);

}  // namespace molinfer::desc
