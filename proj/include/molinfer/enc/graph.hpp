#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "molinfer/chem/element.hpp"
#include "molinfer/chem/graph.hpp"
#include "molinfer/desc/config.hpp"
#include "molinfer/desc/fringe.hpp"
#include "molinfer/desc/normalize.hpp"
#include "molinfer/desc/registry.hpp"
#include "molinfer/enc/topology.hpp"
#include "molinfer/milp/model.hpp"

namespace molinfer::enc {

// Linear expression plus constant offset; the raw value of a descriptor
// as a function of the encoding's variables.
struct AffineExpr {
  milp::LinExpr expr;
  double constant = 0.0;
};

// Handles into the graph-construction constraint set: slot/edge/channel
// variable ids, the vocabularies they were built over, and the decode map.
class GraphEncoding {
 public:
  int slot_count() const { return n_slots_; }

  // Aggregate count variables (canonical keys).
  const std::map<std::string, int>& ac_vars() const { return ac_count_; }
  const std::map<std::string, int>& ec_vars() const { return ec_count_; }
  const std::map<std::string, int>& ns_vars() const { return ns_count_; }

  // Reconstructs the chemical graph from a feasible assignment.
  chem::ChemicalGraph decode(const std::vector<double>& assignment) const;

  // Raw-count expression for a registry descriptor. Descriptors the
  // scaffold cannot produce come back as the constant 0.
  AffineExpr raw_expr(const desc::Descriptor& d) const;

  // Everything below is written by encode_graph.
  struct EdgeSlot {
    int u = 0, v = 0;           // slot indices, u < v
    int use_var = -1;           // e(i)
    std::array<int, 3> beta_vars{-1, -1, -1};  // delta_beta(i, m)
    std::vector<int> ac_vars;   // delta_ac(i, [nu]), directed vocabulary
    std::vector<int> ec_vars;   // delta_ec(i, [gamma])
  };

  int n_slots_ = 0;
  int rho_ = 0;
  std::vector<chem::ElementSpec> lambda_;          // slot element vocabulary
  std::vector<desc::AdjacencyConfig> ac_dir_;      // directed ac vocabulary
  std::vector<desc::EdgeConfig> ec_dir_;           // directed ec vocabulary
  std::vector<desc::ChemicalSymbol> symbols_;      // cs vocabulary
  std::vector<desc::FringeClassInfo> fringes_;     // fringe class vocabulary

  std::vector<int> v_vars_;                        // slot used
  std::vector<std::vector<int>> alpha_vars_;       // [slot][element]
  std::vector<std::vector<int>> ns_sel_vars_;      // [slot][symbol]
  std::vector<std::vector<int>> fringe_sel_vars_;  // [slot][class]
  std::vector<EdgeSlot> edges_;
  std::map<std::string, int> ac_count_;
  std::map<std::string, int> ec_count_;
  std::map<std::string, int> ns_count_;
  std::map<std::string, int> elem_count_;          // over all non-H atoms
  std::map<std::string, int> fringe_count_;
  std::array<int, 3> bond_total_vars_{-1, -1, -1};

  // Slot-level linear expressions shared by several constraint groups.
  milp::LinExpr slot_alpha_code(int slot) const;   // sum [a] * delta_alpha
  milp::LinExpr slot_degree(int slot) const;       // interior + fringe degree
};

// Builds the constraint set that makes (slots, edges, fringes) spell out a
// connected tree-interior chemical graph whose configuration counts land
// in the spec's bounds. Counting channels follow the one-hot indicator
// pattern with label/degree slack pairs deactivated by big-M when an edge
// slot is unused.
GraphEncoding encode_graph(milp::MilpModel& model, const TopologySpec& ts,
                           const chem::ElementTable& table,
                           const std::string& prefix);

// Ties normalized feature variables x (one per registry descriptor, each
// in [0,1]) to the encoding's raw-count expressions through the stored
// (min, max) scaling. Constant descriptors pin the raw value instead.
std::vector<int> encode_feature_link(milp::MilpModel& model,
                                     const GraphEncoding& enc,
                                     const desc::DescriptorRegistry& reg,
                                     const desc::Normalization& norm,
                                     const std::string& prefix);

}  // namespace molinfer::enc
