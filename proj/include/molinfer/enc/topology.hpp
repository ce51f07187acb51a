#pragma once

#include <array>
#include <map>
#include <string>

#include "molinfer/chem/element.hpp"
#include "molinfer/desc/registry.hpp"

namespace molinfer::enc {

struct CountRange {
  int lb = 0;
  int ub = 0;
};

// Requirements on the graph to be inferred: interior slot budget, the
// allowed element / configuration / fringe-class vocabularies, and count
// bounds per entry. Keys use the canonical config strings ("C.O.1",
// "C2.O1.1", fringe codes). rho = 0 selects the degenerate mode where the
// whole suppressed graph is interior and fringe machinery is absent.
struct TopologySpec {
  int rho = 2;
  int n_interior_min = 1;
  int n_interior_max = 4;

  std::map<std::string, CountRange> elements;  // counts over all non-H atoms
  std::map<std::string, CountRange> ac;
  std::map<std::string, CountRange> ec;
  std::map<std::string, CountRange> cs;
  std::map<std::string, CountRange> fringe;
  std::array<CountRange, 3> bond_totals{};  // per multiplicity, interior edges

  // Cross-checks: bounds ordered, ec keys project into ac keys, cs keys
  // cover ec endpoints, fringe codes parse and respect rho. Throws with
  // the offending key.
  void validate(const chem::ElementTable& table) const;

  // Fills any empty section from what a registry (plus bounds wide enough
  // for n_interior_max slots) allows. Existing entries are kept.
  void fill_from_registry(const desc::DescriptorRegistry& reg,
                          const chem::ElementTable& table);

  std::string serialize() const;
  static TopologySpec parse(const std::string& text);
};

}  // namespace molinfer::enc
