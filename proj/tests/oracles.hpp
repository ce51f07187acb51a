#pragma once

// Brute-force reference implementations used as test oracles. Everything
// here is deliberately written against the definitions, not the library
// algorithms, and stays independent of the code paths under test.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "molinfer/chem/decompose.hpp"
#include "molinfer/chem/graph.hpp"
#include "molinfer/desc/fringe.hpp"
#include "molinfer/milp/model.hpp"
#include "molinfer/util/rng.hpp"

namespace oracles {

using molinfer::chem::ChemicalGraph;
using molinfer::chem::Edge;
using molinfer::chem::ElementSpec;

// Labeled isomorphism by exhaustive permutation search (small n only).
bool isomorphic(const ChemicalGraph& a, const ChemicalGraph& b);

// Rooted labeled isomorphism with both roots fixed to vertex 0.
bool rooted_isomorphic(const molinfer::desc::RootedTree& a,
                       const molinfer::desc::RootedTree& b);

// Core edges via exhaustive simple-cycle enumeration: an edge is core if
// it lies on a simple cycle or is a bridge with a cycle edge on each side.
std::vector<int> core_edges_by_cycles(const ChemicalGraph& g);

// Random vertex relabeling of g (isomorphic copy).
ChemicalGraph permuted(const ChemicalGraph& g, molinfer::util::Rng& rng);

// Exhaustive integer-program solve by enumeration over the integer grid.
// Requires every variable to be integer/binary with finite bounds and a
// search space of at most `cap` points.
struct IpOracleResult {
  bool feasible = false;
  std::optional<double> best_objective;
};
IpOracleResult solve_ip_by_enumeration(const molinfer::milp::MilpModel& m,
                                       uint64_t cap = 1 << 22);

// Every non-isomorphic chemical tree over the element set with n
// vertices and bond multiplicities in [1, max_mult], valence-valid.
std::vector<ChemicalGraph> enumerate_chemical_trees(
    int n, const std::vector<ElementSpec>& elements, int max_mult);

// All rooted labeled trees with <= max_n vertices over the label set,
// multiplicities in [1, max_mult] (no valence filtering; pure trees).
std::vector<molinfer::desc::RootedTree> enumerate_rooted_trees(
    int max_n, const std::vector<ElementSpec>& elements, int max_mult);

// Deterministic random chemical tree (valence-respecting).
ChemicalGraph random_chemical_tree(int n,
                                   const std::vector<ElementSpec>& elements,
                                   molinfer::util::Rng& rng);

}  // namespace oracles
