#include "molinfer/desc/registry.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "molinfer/desc/featurize.hpp"
#include "molinfer/util/text.hpp"

namespace molinfer::desc {

namespace {

const char* kind_tag(DescriptorKind k) {
  switch (k) {
    case DescriptorKind::kScalar: return "scalar";
    case DescriptorKind::kElement: return "elem";
    case DescriptorKind::kSymbol: return "cs";
    case DescriptorKind::kAdjacency: return "ac";
    case DescriptorKind::kEdgeConfig: return "ec";
    case DescriptorKind::kFringe: return "fringe";
  }
  return "?";
}

DescriptorKind kind_from_tag(const std::string& tag) {
  if (tag == "scalar") return DescriptorKind::kScalar;
  if (tag == "elem") return DescriptorKind::kElement;
  if (tag == "cs") return DescriptorKind::kSymbol;
  if (tag == "ac") return DescriptorKind::kAdjacency;
  if (tag == "ec") return DescriptorKind::kEdgeConfig;
  if (tag == "fringe") return DescriptorKind::kFringe;
  throw std::runtime_error("unknown descriptor kind tag: " + tag);
}

}  // namespace

std::string Descriptor::id() const {
  return std::string(kind_tag(kind)) + ":" + key;
}

void DescriptorRegistry::finalize() {
  index_.clear();
  for (size_t i = 0; i < descriptors_.size(); ++i) {
    auto key = std::make_pair(static_cast<int>(descriptors_[i].kind),
                              descriptors_[i].key);
    if (!index_.emplace(key, static_cast<int>(i)).second) {
      throw std::runtime_error("duplicate descriptor id: " +
                               descriptors_[i].id());
    }
  }
}

DescriptorRegistry DescriptorRegistry::build(
    const std::vector<chem::ChemicalGraph>& dataset, int rho) {
  if (dataset.empty()) throw std::runtime_error("empty dataset");
  std::set<std::string> elements;
  std::set<ChemicalSymbol> symbols;
  std::set<AdjacencyConfig> acs;
  std::set<EdgeConfig> ecs;
  std::set<std::string> fringes;
  for (const auto& g : dataset) {
    auto d = chem::decompose(g, rho);
    for (int v = 0; v < g.n(); ++v) elements.insert(g.element(v).symbol);
    for (auto& [cs, c] : count_chemical_symbols(g, d)) symbols.insert(cs);
    for (auto& [ac, c] : count_adjacency_configs(g, d)) acs.insert(ac);
    for (auto& [ec, c] : count_edge_configs(g, d)) ecs.insert(ec);
    for (auto& [code, c] : count_fringe_classes(g, d)) fringes.insert(code);
  }
  DescriptorRegistry reg;
  reg.rho_ = rho;
  auto add = [&reg](DescriptorKind k, const std::string& key) {
    reg.descriptors_.push_back({k, key});
  };
  add(DescriptorKind::kScalar, "n");
  add(DescriptorKind::kScalar, "rank");
  add(DescriptorKind::kScalar, "n_int");
  add(DescriptorKind::kScalar, "m_int");
  for (const auto& e : elements) add(DescriptorKind::kElement, e);
  for (const auto& s : symbols) add(DescriptorKind::kSymbol, s.key());
  for (const auto& a : acs) add(DescriptorKind::kAdjacency, a.key());
  for (const auto& e : ecs) add(DescriptorKind::kEdgeConfig, e.key());
  for (const auto& f : fringes) add(DescriptorKind::kFringe, f);
  add(DescriptorKind::kScalar, "avg_mass");
  add(DescriptorKind::kScalar, "n_h");
  reg.finalize();
  return reg;
}

int DescriptorRegistry::index_of(DescriptorKind kind,
                                 const std::string& key) const {
  auto it = index_.find(std::make_pair(static_cast<int>(kind), key));
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::string> DescriptorRegistry::keys_of(
    DescriptorKind kind) const {
  std::vector<std::string> out;
  for (const auto& d : descriptors_) {
    if (d.kind == kind) out.push_back(d.key);
  }
  return out;
}

int DescriptorRegistry::gamma_count() const {
  int c = 0;
  for (const auto& d : descriptors_) c += d.kind == DescriptorKind::kEdgeConfig;
  return c;
}

int DescriptorRegistry::fringe_count() const {
  int c = 0;
  for (const auto& d : descriptors_) c += d.kind == DescriptorKind::kFringe;
  return c;
}

std::string DescriptorRegistry::serialize() const {
  std::string out = "rho " + std::to_string(rho_) + "\n";
  for (const auto& d : descriptors_) {
    out += std::string(kind_tag(d.kind)) + " " + d.key + "\n";
  }
  return out;
}

DescriptorRegistry DescriptorRegistry::deserialize(const std::string& text) {
  DescriptorRegistry reg;
  bool have_rho = false;
  int lineno = 0;
  for (const auto& raw : util::split(text, '\n')) {
    ++lineno;
    std::string line = raw;
    if (auto pos = line.find('#'); pos != std::string::npos) line.resize(pos);
    auto tok = util::split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) {
      throw std::runtime_error("registry line " + std::to_string(lineno) +
                               ": expected `tag key`");
    }
    if (tok[0] == "rho") {
      reg.rho_ = static_cast<int>(util::parse_int(tok[1], "rho"));
      have_rho = true;
      continue;
    }
    reg.descriptors_.push_back({kind_from_tag(tok[0]), tok[1]});
  }
  if (!have_rho) throw std::runtime_error("registry file missing rho line");
  reg.finalize();
  return reg;
}

}  // namespace molinfer::desc
