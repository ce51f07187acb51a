#pragma once

#include <map>
#include <string>
#include <vector>

#include "molinfer/chem/decompose.hpp"
#include "molinfer/chem/graph.hpp"

namespace molinfer::desc {

// A rooted chemical tree stored explicitly; vertex 0 is the root.
struct RootedTree {
  std::vector<chem::ElementSpec> elements;
  std::vector<int> parents;      // parents[0] == -1
  std::vector<int> bond_mults;   // bond_mults[v] is the edge v--parents[v]

  int size() const { return static_cast<int>(elements.size()); }
};

// Canonical code of a rooted chemical tree: two trees share a code iff
// they are rooted-isomorphic with labels and multiplicities respected.
// Grammar: ELEM [ '(' child (',' child)* ')' ] with child = MULT code,
// children sorted as strings. Example: C(1C(2O),1N).
std::string canonical_fringe_code(const RootedTree& t);

// Convenience: the fringe tree of a decomposition, root element included.
RootedTree fringe_to_rooted(const chem::ChemicalGraph& g,
                            const chem::FringeTree& f);

// Inverse of canonical_fringe_code (any code in the grammar, canonical or
// not). Throws on malformed input or unknown elements.
RootedTree parse_fringe_code(const std::string& code,
                             const chem::ElementTable& table);

// Constants of one fringe class consumed by the graph encoder; all are
// derived from the class template tree.
struct FringeClassInfo {
  std::string code;
  RootedTree tree;
  chem::ElementSpec root_element;
  int root_children = 0;   // degree the root gains from this fringe
  int root_beta = 0;       // bond multiplicity the root spends on it
  int n_exterior = 0;      // vertices excluding the root
  int height = 0;          // depth of the deepest vertex below the root
  // Root children whose subtree reaches depth `height_target` below the
  // root; used for the interior/exterior consistency rule.
  int full_branches = 0;
  std::map<std::string, int> exterior_element_counts;
  double exterior_mass = 0.0;
  // Exterior valence sum minus twice the fringe bond multiplicity sum:
  // the class's additive contribution to the implicit-H total.
  int hydrogen_contribution = 0;

  // Validates the template (valence bounds) and fills the derived fields.
  static FringeClassInfo build(const RootedTree& t, int height_target);
};

}  // namespace molinfer::desc
