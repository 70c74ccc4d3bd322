#include "hdx/hypergraph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace hdx {

VertexMultiset::VertexMultiset(std::span<const VertexId> elements) {
  for (VertexId v : elements) add(v);
}

VertexMultiset VertexMultiset::repeated(VertexId v, long long count) {
  VertexMultiset u;
  u.add(v, count);
  return u;
}

void VertexMultiset::add(VertexId v, long long count) {
  if (count < 0) throw DomainError("multiset multiplicity must be >= 0");
  if (count == 0) return;
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const auto& entry, VertexId key) { return entry.first < key; });
  if (it != entries_.end() && it->first == v) {
    it->second += count;
  } else {
    entries_.insert(it, {v, count});
  }
}

long long VertexMultiset::count(VertexId v) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), v,
      [](const auto& entry, VertexId key) { return entry.first < key; });
  if (it != entries_.end() && it->first == v) return it->second;
  return 0;
}

long long VertexMultiset::size() const {
  long long total = 0;
  for (const auto& [v, c] : entries_) total += c;
  return total;
}

VertexMultiset VertexMultiset::merged(const VertexMultiset& other) const {
  VertexMultiset out = *this;
  for (const auto& [v, c] : other.entries_) out.add(v, c);
  return out;
}

VertexMultiset VertexMultiset::without(VertexId v) const {
  VertexMultiset out;
  for (const auto& [w, c] : entries_) {
    if (w != v) out.add(w, c);
  }
  return out;
}

std::string VertexMultiset::to_string() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (const auto& [v, c] : entries_) {
    if (!first) os << ',';
    first = false;
    os << v;
    if (c > 1) os << '^' << c;
  }
  os << '}';
  return os.str();
}

Hypergraph::Hypergraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
                       int colors)
    : vertices_(std::move(vertices)), edges_(std::move(edges)),
      colors_(colors) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) !=
      vertices_.end()) {
    throw DomainError("duplicate vertex id");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  if (colors_ < 0) throw DomainError("color count must be >= 0");

  EdgeId last_id = 0;
  bool first_edge = true;
  for (const Edge& e : edges_) {
    if (!first_edge && e.id == last_id) throw DomainError("duplicate edge id");
    first_edge = false;
    last_id = e.id;
    if (e.hinges.empty()) {
      throw DomainError("edge " + std::to_string(e.id) + " has no hinges");
    }
    if (colors_ == 0) {
      if (e.color != 0) {
        throw DomainError("edge " + std::to_string(e.id) +
                          " carries a color but the hypergraph is uncolored");
      }
    } else if (e.color < 1 || e.color > colors_) {
      throw DomainError("edge " + std::to_string(e.id) +
                        " color out of range 1.." + std::to_string(colors_));
    }
    for (int i = 0; i < static_cast<int>(e.hinges.size()); ++i) {
      VertexId v = e.hinges[i];
      if (!std::binary_search(vertices_.begin(), vertices_.end(), v)) {
        throw DomainError("edge " + std::to_string(e.id) +
                          " has a hinge on unknown vertex " +
                          std::to_string(v));
      }
      incidence_[v].push_back({e.id, i});
      ++hinge_count_;
    }
  }
}

bool Hypergraph::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

bool Hypergraph::has_edge(EdgeId e) const { return find_edge(e) != nullptr; }

const Edge* Hypergraph::find_edge(EdgeId e) const {
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), e,
      [](const Edge& edge, EdgeId key) { return edge.id < key; });
  if (it != edges_.end() && it->id == e) return &*it;
  return nullptr;
}

const Edge& Hypergraph::edge(EdgeId e) const {
  const Edge* found = find_edge(e);
  if (!found) throw DomainError("unknown edge id " + std::to_string(e));
  return *found;
}

void Hypergraph::require_vertex(VertexId v) const {
  if (!has_vertex(v)) {
    throw DomainError("unknown vertex id " + std::to_string(v));
  }
}

long long Hypergraph::degree(VertexId v) const {
  require_vertex(v);
  auto it = incidence_.find(v);
  return it == incidence_.end() ? 0 : static_cast<long long>(it->second.size());
}

long long Hypergraph::degree_in_color(VertexId v, int j) const {
  require_vertex(v);
  if (colors_ == 0 || j < 1 || j > colors_) {
    throw DomainError("color class " + std::to_string(j) + " out of range");
  }
  auto it = incidence_.find(v);
  if (it == incidence_.end()) return 0;
  long long d = 0;
  for (const HingeId& h : it->second) {
    if (edge(h.edge).color == j) ++d;
  }
  return d;
}

int Hypergraph::edge_size(EdgeId e) const {
  const Edge& ed = edge(e);
  std::set<VertexId> distinct(ed.hinges.begin(), ed.hinges.end());
  return static_cast<int>(distinct.size());
}

VertexMultiset Hypergraph::edge_multiset(EdgeId e) const {
  const Edge& ed = edge(e);
  return VertexMultiset(std::span<const VertexId>(ed.hinges));
}

std::vector<EdgeId> Hypergraph::edges_joining(const VertexMultiset& u) const {
  std::vector<EdgeId> out;
  for (const Edge& e : edges_) {
    if (VertexMultiset(std::span<const VertexId>(e.hinges)) == u) {
      out.push_back(e.id);
    }
  }
  return out;
}

long long Hypergraph::multiplicity(const VertexMultiset& u) const {
  long long count = 0;
  for (const Edge& e : edges_) {
    if (VertexMultiset(std::span<const VertexId>(e.hinges)) == u) ++count;
  }
  return count;
}

std::vector<HingeId> Hypergraph::hinge_set(VertexId v) const {
  require_vertex(v);
  auto it = incidence_.find(v);
  if (it == incidence_.end()) return {};
  std::vector<HingeId> out = it->second;
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HingeId> Hypergraph::hinge_set(VertexId v, EdgeId e) const {
  require_vertex(v);
  const Edge& ed = edge(e);
  std::vector<HingeId> out;
  for (int i = 0; i < static_cast<int>(ed.hinges.size()); ++i) {
    if (ed.hinges[i] == v) out.push_back({ed.id, i});
  }
  return out;
}

std::vector<HingeId> Hypergraph::hinges_joining(
    VertexId u, long long t, const VertexMultiset& rest) const {
  require_vertex(u);
  VertexMultiset want = rest;
  want.add(u, t);
  std::vector<HingeId> out;
  for (const Edge& e : edges_) {
    if (VertexMultiset(std::span<const VertexId>(e.hinges)) != want) continue;
    for (int i = 0; i < static_cast<int>(e.hinges.size()); ++i) {
      if (e.hinges[i] == u) out.push_back({e.id, i});
    }
  }
  return out;
}

Hypergraph Hypergraph::color_class(int j) const {
  if (colors_ == 0) throw DomainError("hypergraph has no coloring");
  if (j < 1 || j > colors_) {
    throw DomainError("color class " + std::to_string(j) + " out of range 1.." +
                      std::to_string(colors_));
  }
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    if (e.color == j) kept.push_back(e);
  }
  return Hypergraph(vertices_, std::move(kept), colors_);
}

std::map<VertexMultiset, long long> Hypergraph::census(int color) const {
  if (color != 0 && (colors_ == 0 || color < 1 || color > colors_)) {
    throw DomainError("color class " + std::to_string(color) +
                      " out of range");
  }
  std::map<VertexMultiset, long long> out;
  for (const Edge& e : edges_) {
    if (color != 0 && e.color != color) continue;
    ++out[VertexMultiset(std::span<const VertexId>(e.hinges))];
  }
  return out;
}

NumberFunction::NumberFunction(std::map<VertexId, int> values)
    : values_(std::move(values)) {
  for (const auto& [v, g] : values_) {
    if (g < 1) {
      throw DomainError("number function value at vertex " +
                        std::to_string(v) + " must be >= 1");
    }
  }
}

int NumberFunction::at(VertexId v) const {
  auto it = values_.find(v);
  if (it == values_.end()) {
    throw DomainError("number function undefined at vertex " +
                      std::to_string(v));
  }
  return it->second;
}

long long NumberFunction::pending_splits() const {
  long long total = 0;
  for (const auto& [v, g] : values_) total += g - 1;
  return total;
}

AmalgamationMap::AmalgamationMap(std::map<VertexId, VertexId> to_target)
    : to_target_(std::move(to_target)) {}

VertexId AmalgamationMap::target(VertexId source) const {
  auto it = to_target_.find(source);
  if (it == to_target_.end()) {
    throw DomainError("amalgamation map undefined at vertex " +
                      std::to_string(source));
  }
  return it->second;
}

NumberFunction AmalgamationMap::induced_number_function() const {
  std::map<VertexId, int> g;
  for (const auto& [source, target] : to_target_) {
    (void)source;
    ++g[target];
  }
  return NumberFunction(std::move(g));
}

std::map<VertexId, std::vector<VertexId>> AmalgamationMap::fibers() const {
  std::map<VertexId, std::vector<VertexId>> out;
  for (const auto& [source, target] : to_target_) {
    out[target].push_back(source);
  }
  return out;
}

std::optional<SimplicityViolation> find_simplicity_violation(
    const Hypergraph& g, const NumberFunction& f) {
  for (VertexId v : g.vertices()) {
    if (!f.defined_on(v)) {
      throw DomainError("number function undefined at vertex " +
                        std::to_string(v));
    }
  }
  for (const Edge& e : g.edges()) {
    VertexMultiset u(std::span<const VertexId>(e.hinges));
    for (const auto& [v, c] : u.entries()) {
      if (c > f.at(v)) return SimplicityViolation{v, e.id, c, f.at(v)};
    }
  }
  return std::nullopt;
}

bool is_simple_function(const Hypergraph& g, const NumberFunction& f) {
  return !find_simplicity_violation(g, f).has_value();
}

Hypergraph amalgamate(const Hypergraph& f, const AmalgamationMap& psi) {
  std::vector<VertexId> targets;
  for (VertexId v : f.vertices()) targets.push_back(psi.target(v));
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  std::vector<Edge> edges = f.edges();
  for (Edge& e : edges) {
    for (VertexId& v : e.hinges) v = psi.target(v);
  }
  return Hypergraph(std::move(targets), std::move(edges), f.colors());
}

}  // namespace hdx
