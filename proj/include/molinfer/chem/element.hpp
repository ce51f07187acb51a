#pragma once

#include <optional>
#include <string>
#include <vector>

namespace molinfer::chem {

// One chemical element entry. Multi-valence elements are distinguished by
// a valence suffix in the symbol itself, e.g. "S(2)", "S(6)".
struct ElementSpec {
  std::string symbol;
  int valence = 0;  // in [1, 6]
  double mass = 0.0;

  bool operator==(const ElementSpec& o) const {
    return symbol == o.symbol && valence == o.valence;
  }
  // Canonical order: lexicographic on (symbol, valence).
  bool operator<(const ElementSpec& o) const {
    if (symbol != o.symbol) return symbol < o.symbol;
    return valence < o.valence;
  }
};

class ElementTable {
 public:
  // H, C, N, O, F, P, Cl, Br, Si(4), S(2), S(4), S(6).
  static ElementTable defaults();

  // Lines of the form `symbol valence mass`; '#' starts a comment.
  static ElementTable parse(const std::string& text);
  static ElementTable load(const std::string& path);

  // Throws on duplicate (symbol, valence) or valence outside [1, 6].
  void add(ElementSpec e);

  const ElementSpec* find(const std::string& symbol) const;
  const ElementSpec& get(const std::string& symbol) const;  // throws if absent

  const std::vector<ElementSpec>& entries() const { return entries_; }

 private:
  std::vector<ElementSpec> entries_;
};

inline bool is_hydrogen(const ElementSpec& e) { return e.symbol == "H"; }

}  // namespace molinfer::chem
