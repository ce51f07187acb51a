#pragma once

#include <string>
#include <utility>
#include <vector>

#include "molinfer/chem/element.hpp"

namespace molinfer::chem {

struct Edge {
  int u = 0;
  int v = 0;      // u < v
  int mult = 1;   // bond multiplicity in [1, 3]
};

// A chemical graph: simple, connected, element-labelled, with bond
// multiplicities. Instances are hydrogen-suppressed; the hydrogen count
// of each vertex is carried as valence slack (implicit_h). Immutable
// after construction.
class ChemicalGraph {
 public:
  // Validates simplicity, connectivity and the valence bound
  // beta_sum(u) <= val(alpha(u)). If `suppress` is set, explicit H
  // vertices are removed first (the normal path for parsed input).
  ChemicalGraph(std::vector<ElementSpec> elements, std::vector<Edge> edges,
                bool suppress = true);

  int n() const { return static_cast<int>(elements_.size()); }
  int m() const { return static_cast<int>(edges_.size()); }

  const ElementSpec& element(int v) const { return elements_[v]; }
  const std::vector<ElementSpec>& elements() const { return elements_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // (neighbor, edge index) pairs.
  const std::vector<std::pair<int, int>>& adj(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  // Sum of incident bond multiplicities (beta_C).
  int beta_sum(int v) const { return beta_sum_[v]; }
  // beta_C(u) - val(alpha(u)); <= 0 for every valid vertex.
  int eledeg(int v) const { return beta_sum_[v] - elements_[v].valence; }
  int implicit_h(int v) const { return elements_[v].valence - beta_sum_[v]; }
  int implicit_h_total() const;

  double mass_total() const;

 private:
  std::vector<ElementSpec> elements_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<int> beta_sum_;
};

// Parses the line-oriented graph file format:
//   line 1: `n m`
//   n lines: `index element`   (1-based indices; element like C or S(6))
//   m lines: `u v mult`
// '#' starts a comment. Errors carry the offending line number.
ChemicalGraph parse_graph(const std::string& text, const ElementTable& table);

std::string write_graph(const ChemicalGraph& g);

// Removes explicit H vertices from a raw (element, edge) description and
// reports how many H neighbours each surviving vertex lost. Throws if
// nothing but hydrogen remains.
struct SuppressResult {
  std::vector<ElementSpec> elements;
  std::vector<Edge> edges;
  std::vector<int> removed_h;  // per surviving vertex
};
SuppressResult hydrogen_suppress(const std::vector<ElementSpec>& elements,
                                 const std::vector<Edge>& edges);

// Convenience overload for an already-built graph.
std::pair<ChemicalGraph, std::vector<int>> hydrogen_suppress(
    const ChemicalGraph& g);

// Canonical code for chemical trees (rank 0); equal codes iff isomorphic.
// Throws on cyclic input.
std::string canonical_tree_code(const ChemicalGraph& g);

}  // namespace molinfer::chem
