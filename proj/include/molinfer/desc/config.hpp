#pragma once

#include <string>
#include <tuple>

#include "molinfer/chem/element.hpp"

namespace molinfer::desc {

// (a, b, m): elements of an interior edge's endpoints plus its bond
// multiplicity. Canonical form has a <= b in the (symbol, valence) order.
struct AdjacencyConfig {
  chem::ElementSpec a;
  chem::ElementSpec b;
  int mult = 1;

  AdjacencyConfig() = default;
  AdjacencyConfig(chem::ElementSpec a_, chem::ElementSpec b_, int m_)
      : a(std::move(a_)), b(std::move(b_)), mult(m_) {}

  AdjacencyConfig reversed() const { return {b, a, mult}; }
  bool is_canonical() const { return !(b < a); }
  AdjacencyConfig canonical() const { return is_canonical() ? *this : reversed(); }
  bool symmetric() const { return a == b; }

  // Key string, e.g. "C.O.1".
  std::string key() const;

  auto tie() const { return std::tie(a.symbol, a.valence, b.symbol, b.valence, mult); }
  bool operator<(const AdjacencyConfig& o) const { return tie() < o.tie(); }
  bool operator==(const AdjacencyConfig& o) const { return tie() == o.tie(); }
};

// Element plus hydrogen-suppressed degree, e.g. C with degree 3.
struct ChemicalSymbol {
  chem::ElementSpec element;
  int degree = 0;  // in [1, 4]

  ChemicalSymbol() = default;
  ChemicalSymbol(chem::ElementSpec e, int d) : element(std::move(e)), degree(d) {}

  // Key string, e.g. "C3" or "S(2)2".
  std::string key() const;

  auto tie() const { return std::tie(element.symbol, element.valence, degree); }
  bool operator<(const ChemicalSymbol& o) const { return tie() < o.tie(); }
  bool operator==(const ChemicalSymbol& o) const { return tie() == o.tie(); }
};

// (mu, mu', m): chemical symbols of an interior edge's endpoints plus the
// bond multiplicity. Canonical form has mu <= mu'.
struct EdgeConfig {
  ChemicalSymbol mu;
  ChemicalSymbol mu_prime;
  int mult = 1;

  EdgeConfig() = default;
  EdgeConfig(ChemicalSymbol m1, ChemicalSymbol m2, int m)
      : mu(std::move(m1)), mu_prime(std::move(m2)), mult(m) {}

  EdgeConfig reversed() const { return {mu_prime, mu, mult}; }
  bool is_canonical() const { return !(mu_prime < mu); }
  EdgeConfig canonical() const { return is_canonical() ? *this : reversed(); }
  bool symmetric() const { return mu == mu_prime; }

  AdjacencyConfig adjacency() const {
    return {mu.element, mu_prime.element, mult};
  }

  // Key string, e.g. "C2.O1.1".
  std::string key() const;

  auto tie() const {
    return std::make_tuple(mu.tie(), mu_prime.tie(), mult);
  }
  bool operator<(const EdgeConfig& o) const { return tie() < o.tie(); }
  bool operator==(const EdgeConfig& o) const { return tie() == o.tie(); }
};

// Parse the key strings back (requires the element table for symbols).
AdjacencyConfig parse_ac_key(const std::string& key,
                             const chem::ElementTable& table);
ChemicalSymbol parse_cs_key(const std::string& key,
                            const chem::ElementTable& table);
EdgeConfig parse_ec_key(const std::string& key,
                        const chem::ElementTable& table);

}  // namespace molinfer::desc
