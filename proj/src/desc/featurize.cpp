#include "molinfer/desc/featurize.hpp"

#include <algorithm>
#include <stdexcept>

#include "molinfer/chem/structure.hpp"
#include "molinfer/desc/fringe.hpp"

namespace molinfer::desc {

std::map<AdjacencyConfig, int> count_adjacency_configs(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d) {
  std::map<AdjacencyConfig, int> out;
  for (int ei : d.interior_edges) {
    const chem::Edge& e = g.edges()[ei];
    AdjacencyConfig ac(g.element(e.u), g.element(e.v), e.mult);
    out[ac.canonical()] += 1;
  }
  return out;
}

std::map<EdgeConfig, int> count_edge_configs(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d) {
  std::map<EdgeConfig, int> out;
  for (int ei : d.interior_edges) {
    const chem::Edge& e = g.edges()[ei];
    EdgeConfig ec(ChemicalSymbol(g.element(e.u), g.degree(e.u)),
                  ChemicalSymbol(g.element(e.v), g.degree(e.v)), e.mult);
    out[ec.canonical()] += 1;
  }
  return out;
}

std::map<ChemicalSymbol, int> count_chemical_symbols(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d) {
  std::map<ChemicalSymbol, int> out;
  for (int v = 0; v < g.n(); ++v) {
    if (!d.interior[v]) continue;
    int deg = g.degree(v);
    if (deg < 1 || deg > 4) {
      throw std::runtime_error(
          "interior vertex " + std::to_string(v + 1) +
          " has suppressed degree " + std::to_string(deg) +
          ", outside the chemical-symbol range [1,4]");
    }
    out[ChemicalSymbol(g.element(v), deg)] += 1;
  }
  return out;
}

std::map<std::string, int> count_fringe_classes(
    const chem::ChemicalGraph& g, const chem::TwoLayerDecomposition& d) {
  std::map<std::string, int> out;
  for (const auto& f : d.fringe_trees) {
    if (f.vertices.empty()) continue;  // trivial fringe, no class
    out[canonical_fringe_code(fringe_to_rooted(g, f))] += 1;
  }
  return out;
}

FeatureVector featurize(const chem::ChemicalGraph& g,
                        const DescriptorRegistry& reg) {
  auto d = chem::decompose(g, reg.rho());
  auto acs = count_adjacency_configs(g, d);
  auto ecs = count_edge_configs(g, d);
  auto css = count_chemical_symbols(g, d);
  auto fringes = count_fringe_classes(g, d);

  std::vector<std::string> unknown;
  auto require = [&](DescriptorKind k, const std::string& key) {
    if (!reg.contains(k, key)) unknown.push_back(Descriptor{k, key}.id());
  };
  for (int v = 0; v < g.n(); ++v) {
    require(DescriptorKind::kElement, g.element(v).symbol);
  }
  for (auto& [ac, c] : acs) require(DescriptorKind::kAdjacency, ac.key());
  for (auto& [ec, c] : ecs) require(DescriptorKind::kEdgeConfig, ec.key());
  for (auto& [cs, c] : css) require(DescriptorKind::kSymbol, cs.key());
  for (auto& [code, c] : fringes) require(DescriptorKind::kFringe, code);
  if (!unknown.empty()) {
    std::string msg = "graph uses descriptors unknown to the registry:";
    std::sort(unknown.begin(), unknown.end());
    unknown.erase(std::unique(unknown.begin(), unknown.end()), unknown.end());
    for (const auto& u : unknown) msg += " " + u;
    throw std::runtime_error(msg);
  }

  FeatureVector x;
  x.values.assign(reg.size(), 0.0);
  for (int i = 0; i < reg.size(); ++i) {
    const Descriptor& desc = reg.at(i);
    double& slot = x.values[i];
    switch (desc.kind) {
      case DescriptorKind::kScalar:
        if (desc.key == "n") slot = g.n();
        else if (desc.key == "rank") slot = chem::rank(g);
        else if (desc.key == "n_int") slot = d.interior_count();
        else if (desc.key == "m_int") slot = static_cast<double>(d.interior_edges.size());
        else if (desc.key == "avg_mass") {
          // Accumulate per element so the sum order does not depend on
          // vertex numbering (exact isomorphism invariance).
          std::map<std::pair<std::string, int>, int> counts;
          std::map<std::pair<std::string, int>, double> masses;
          for (int v = 0; v < g.n(); ++v) {
            auto key = std::make_pair(g.element(v).symbol,
                                      g.element(v).valence);
            counts[key] += 1;
            masses[key] = g.element(v).mass;
          }
          double total = 0;
          for (auto& [key, c] : counts) total += c * masses[key];
          slot = total / g.n();
        } else if (desc.key == "n_h") {
          slot = g.implicit_h_total();
        } else {
          throw std::runtime_error("unknown scalar descriptor: " + desc.key);
        }
        break;
      case DescriptorKind::kElement: {
        int c = 0;
        for (int v = 0; v < g.n(); ++v) c += g.element(v).symbol == desc.key;
        slot = c;
        break;
      }
      case DescriptorKind::kSymbol: {
        for (auto& [cs, c] : css) {
          if (cs.key() == desc.key) slot = c;
        }
        break;
      }
      case DescriptorKind::kAdjacency: {
        for (auto& [ac, c] : acs) {
          if (ac.key() == desc.key) slot = c;
        }
        break;
      }
      case DescriptorKind::kEdgeConfig: {
        for (auto& [ec, c] : ecs) {
          if (ec.key() == desc.key) slot = c;
        }
        break;
      }
      case DescriptorKind::kFringe: {
        auto it = fringes.find(desc.key);
        if (it != fringes.end()) slot = it->second;
        break;
      }
    }
  }
  return x;
}

}  // namespace molinfer::desc
