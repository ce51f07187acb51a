#pragma once

#include <vector>

#include "molinfer/chem/graph.hpp"

namespace molinfer::chem {

// |E| - |V| + 1 for a connected graph (the cycle rank).
int rank(const ChemicalGraph& g);

// Edge indices of core-edges: edges on a cycle, plus bridges whose removal
// leaves a cycle on both sides. Empty result for acyclic input (that is
// the empty-core signal, not an error).
std::vector<int> core_edges(const ChemicalGraph& g);

// Height by iterative leaf stripping: h(v) = i for v stripped in round i.
// A non-tree vertex adjacent to tree vertices gets max adjacent height + 1;
// any other vertex stays kUnassignedHeight. With `root` >= 0 the root is
// never treated as a leaf. A vertex of degree 0 counts as a leaf (so an
// isolated vertex has height 0).
inline constexpr int kUnassignedHeight = -1;
std::vector<int> heights(const ChemicalGraph& g, int root = -1);

// A rooted tree is k-lean when at most one of its vertices has height
// exactly k ("at most one leaf k-branch").
bool is_k_lean(const ChemicalGraph& tree, int root, int k);

}  // namespace molinfer::chem
