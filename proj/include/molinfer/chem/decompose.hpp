#pragma once

#include <vector>

#include "molinfer/chem/graph.hpp"

namespace molinfer::chem {

// Fringe tree hanging off one interior vertex: the root plus every
// exterior vertex whose path to the interior runs through it. Vertices
// are ids in the suppressed graph, listed in BFS order from the root.
struct FringeTree {
  int root = -1;                 // interior vertex
  std::vector<int> vertices;     // exterior vertices (root excluded)
  std::vector<int> parents;      // parents[i] is the parent of vertices[i]
};

// The two-layered view of a suppressed chemical graph: exterior vertices
// are those with stripping height < rho, the rest are interior. rho = 0
// is the degenerate everything-interior mode.
struct TwoLayerDecomposition {
  int rho = 0;
  std::vector<char> interior;      // per vertex
  std::vector<int> height;         // kUnassignedHeight where undefined
  std::vector<int> interior_edges; // edge indices with both ends interior
  std::vector<FringeTree> fringe_trees;  // one per interior vertex, in order

  bool empty_interior() const;
  int interior_count() const;
  // Suppressed-graph degree of an interior vertex (interior neighbours
  // plus fringe children of the root).
  const FringeTree* fringe_of(int interior_vertex) const;
};

TwoLayerDecomposition decompose(const ChemicalGraph& g, int rho);

}  // namespace molinfer::chem
