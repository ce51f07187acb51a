#pragma once

#include <map>
#include <string>
#include <vector>

#include "molinfer/chem/decompose.hpp"
#include "molinfer/chem/graph.hpp"
#include "molinfer/desc/config.hpp"

namespace molinfer::desc {

enum class DescriptorKind {
  kScalar,   // n, rank, n_int, m_int, avg_mass, n_h
  kElement,  // count of non-H atoms of one element
  kSymbol,   // count of interior vertices with one chemical symbol
  kAdjacency,
  kEdgeConfig,
  kFringe,   // count of interior vertices with one fringe class
};

struct Descriptor {
  DescriptorKind kind;
  std::string key;  // e.g. "n", "C", "C2", "C.O.1", "C2.O1.1", fringe code

  std::string id() const;  // "kind:key" form used in files and CSV headers
  bool operator==(const Descriptor& o) const {
    return kind == o.kind && key == o.key;
  }
};

// The named index space of the feature function. Index layout is fixed:
// the four structural scalars, then element / symbol / adjacency / edge /
// fringe groups each in canonical order, then avg_mass and n_h.
class DescriptorRegistry {
 public:
  static DescriptorRegistry build(
      const std::vector<chem::ChemicalGraph>& dataset, int rho);

  int rho() const { return rho_; }
  int size() const { return static_cast<int>(descriptors_.size()); }
  const std::vector<Descriptor>& descriptors() const { return descriptors_; }
  const Descriptor& at(int i) const { return descriptors_[i]; }

  // -1 when absent.
  int index_of(DescriptorKind kind, const std::string& key) const;
  bool contains(DescriptorKind kind, const std::string& key) const {
    return index_of(kind, key) >= 0;
  }

  std::vector<std::string> keys_of(DescriptorKind kind) const;

  int gamma_count() const;   // |Gamma|: distinct edge-configurations
  int fringe_count() const;  // |F|: distinct non-trivial fringe classes

  std::string serialize() const;
  static DescriptorRegistry deserialize(const std::string& text);

 private:
  int rho_ = 0;
  std::vector<Descriptor> descriptors_;
  std::map<std::pair<int, std::string>, int> index_;

  void finalize();
};

}  // namespace molinfer::desc
