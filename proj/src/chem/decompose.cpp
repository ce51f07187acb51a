#include "molinfer/chem/decompose.hpp"

#include <queue>
#include <stdexcept>

#include "molinfer/chem/structure.hpp"

namespace molinfer::chem {

bool TwoLayerDecomposition::empty_interior() const {
  for (char c : interior) {
    if (c) return false;
  }
  return true;
}

int TwoLayerDecomposition::interior_count() const {
  int n = 0;
  for (char c : interior) n += c;
  return n;
}

const FringeTree* TwoLayerDecomposition::fringe_of(int interior_vertex) const {
  for (const auto& f : fringe_trees) {
    if (f.root == interior_vertex) return &f;
  }
  return nullptr;
}

TwoLayerDecomposition decompose(const ChemicalGraph& g, int rho) {
  if (rho < 0) throw std::runtime_error("branch parameter must be >= 0");
  TwoLayerDecomposition d;
  d.rho = rho;
  d.height = heights(g);
  d.interior.assign(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) {
    bool exterior = d.height[v] != kUnassignedHeight && d.height[v] < rho;
    d.interior[v] = exterior ? 0 : 1;
  }
  for (int ei = 0; ei < g.m(); ++ei) {
    const Edge& e = g.edges()[ei];
    if (d.interior[e.u] && d.interior[e.v]) d.interior_edges.push_back(ei);
  }
  // Assemble fringe trees: BFS into the exterior from each interior root.
  // Each exterior component touches exactly one interior vertex, so the
  // sweep is a partition.
  std::vector<char> claimed(g.n(), 0);
  for (int r = 0; r < g.n(); ++r) {
    if (!d.interior[r]) continue;
    FringeTree f;
    f.root = r;
    std::queue<int> q;
    for (auto [w, ei] : g.adj(r)) {
      (void)ei;
      if (d.interior[w]) continue;
      if (claimed[w]) {
        throw std::runtime_error("fringe vertex adjacent to two interiors");
      }
      claimed[w] = 1;
      f.vertices.push_back(w);
      f.parents.push_back(r);
      q.push(w);
    }
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (auto [w, ei] : g.adj(u)) {
        (void)ei;
        if (d.interior[w] || claimed[w]) continue;
        claimed[w] = 1;
        f.vertices.push_back(w);
        f.parents.push_back(u);
        q.push(w);
      }
    }
    d.fringe_trees.push_back(std::move(f));
  }
  if (!d.empty_interior()) {
    for (int v = 0; v < g.n(); ++v) {
      if (!d.interior[v] && !claimed[v]) {
        throw std::runtime_error("exterior vertex not reachable from interior");
      }
    }
  }
  return d;
}

}  // namespace molinfer::chem
