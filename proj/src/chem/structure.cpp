#include "molinfer/chem/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace molinfer::chem {

int rank(const ChemicalGraph& g) { return g.m() - g.n() + 1; }

namespace {

// Reachability in g minus one blocked edge.
bool reachable_without(const ChemicalGraph& g, int from, int to, int blocked) {
  std::vector<char> vis(g.n(), 0);
  std::vector<int> stack = {from};
  vis[from] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    if (u == to) return true;
    for (auto [w, ei] : g.adj(u)) {
      if (ei == blocked || vis[w]) continue;
      vis[w] = 1;
      stack.push_back(w);
    }
  }
  return false;
}

// Vertices of the component of `start` in g minus one blocked edge.
std::vector<int> component_without(const ChemicalGraph& g, int start,
                                   int blocked) {
  std::vector<char> vis(g.n(), 0);
  std::vector<int> stack = {start}, comp;
  vis[start] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    comp.push_back(u);
    for (auto [w, ei] : g.adj(u)) {
      if (ei == blocked || vis[w]) continue;
      vis[w] = 1;
      stack.push_back(w);
    }
  }
  return comp;
}

bool component_has_cycle(const ChemicalGraph& g, const std::vector<int>& comp,
                         int blocked) {
  std::vector<char> in(g.n(), 0);
  for (int v : comp) in[v] = 1;
  int edges = 0;
  for (int v : comp) {
    for (auto [w, ei] : g.adj(v)) {
      if (ei == blocked || !in[w]) continue;
      ++edges;
    }
  }
  edges /= 2;
  return edges >= static_cast<int>(comp.size());
}

}  // namespace

std::vector<int> core_edges(const ChemicalGraph& g) {
  std::vector<int> core;
  if (rank(g) < 1) return core;
  for (int ei = 0; ei < g.m(); ++ei) {
    const Edge& e = g.edges()[ei];
    if (reachable_without(g, e.u, e.v, ei)) {
      core.push_back(ei);  // on a cycle
      continue;
    }
    // Bridge: core iff both sides keep a cycle.
    auto side_u = component_without(g, e.u, ei);
    auto side_v = component_without(g, e.v, ei);
    if (component_has_cycle(g, side_u, ei) &&
        component_has_cycle(g, side_v, ei)) {
      core.push_back(ei);
    }
  }
  return core;
}

std::vector<int> heights(const ChemicalGraph& g, int root) {
  std::vector<int> h(g.n(), kUnassignedHeight);
  std::vector<int> deg(g.n());
  std::vector<char> gone(g.n(), 0);
  for (int v = 0; v < g.n(); ++v) deg[v] = g.degree(v);

  int remaining = g.n();
  int round = 0;
  while (remaining > 0) {
    std::vector<int> strip;
    for (int v = 0; v < g.n(); ++v) {
      if (!gone[v] && v != root && deg[v] <= 1) strip.push_back(v);
    }
    if (strip.empty()) break;
    for (int v : strip) {
      h[v] = round;
      gone[v] = 1;
      --remaining;
    }
    for (int v : strip) {
      for (auto [w, ei] : g.adj(v)) {
        (void)ei;
        if (!gone[w]) --deg[w];
      }
    }
    ++round;
  }
  // Non-tree vertices adjacent to a tree vertex: max adjacent height + 1.
  for (int v = 0; v < g.n(); ++v) {
    if (gone[v]) continue;
    int best = kUnassignedHeight;
    for (auto [w, ei] : g.adj(v)) {
      (void)ei;
      if (gone[w]) best = std::max(best, h[w]);
    }
    if (best != kUnassignedHeight) h[v] = best + 1;
  }
  return h;
}

bool is_k_lean(const ChemicalGraph& tree, int root, int k) {
  if (rank(tree) != 0) throw std::runtime_error("is_k_lean expects a tree");
  auto h = heights(tree, root);
  int count = 0;
  for (int v = 0; v < tree.n(); ++v) {
    if (h[v] == k) ++count;
  }
  return count <= 1;
}

}  // namespace molinfer::chem
