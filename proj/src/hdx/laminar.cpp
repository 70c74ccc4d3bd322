#include "hdx/laminar.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "hdx/intmath.hpp"

namespace hdx {

namespace {

// Dinic max-flow on a small integer network.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  int add_edge(int from, int to, long long capacity) {
    int idx = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(capacity);
    next_.push_back(head_[from]);
    head_[from] = idx;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = idx + 1;
    return idx;
  }

  long long flow_on(int edge_index) const {
    return cap_[edge_index ^ 1];  // reverse edge holds the pushed flow
  }

  long long run(int source, int sink) {
    long long total = 0;
    while (bfs(source, sink)) {
      iter_ = head_;
      long long pushed;
      while ((pushed = dfs(source, sink,
                           std::numeric_limits<long long>::max())) > 0) {
        total += pushed;
      }
    }
    return total;
  }

 private:
  bool bfs(int source, int sink) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] > 0 && level_[to_[e]] < 0) {
          level_[to_[e]] = level_[u] + 1;
          queue.push(to_[e]);
        }
      }
    }
    return level_[sink] >= 0;
  }

  long long dfs(int u, int sink, long long limit) {
    if (u == sink) return limit;
    for (int& e = iter_[u]; e != -1; e = next_[e]) {
      int v = to_[e];
      if (cap_[e] > 0 && level_[v] == level_[u] + 1) {
        long long pushed = dfs(v, sink, std::min(limit, cap_[e]));
        if (pushed > 0) {
          cap_[e] -= pushed;
          cap_[e ^ 1] += pushed;
          return pushed;
        }
      }
    }
    return 0;
  }

  std::vector<int> head_, to_, next_, level_, iter_;
  std::vector<long long> cap_;
};

using Mask = std::vector<std::uint64_t>;

Mask make_mask(std::size_t bits) { return Mask((bits + 63) / 64, 0); }

void set_bit(Mask& m, std::size_t i) { m[i / 64] |= std::uint64_t{1} << (i % 64); }

bool test_bit(const Mask& m, std::size_t i) {
  return (m[i / 64] >> (i % 64)) & 1;
}

bool subset_of(const Mask& a, const Mask& b) {
  for (std::size_t w = 0; w < a.size(); ++w) {
    if (a[w] & ~b[w]) return false;
  }
  return true;
}

long long popcount(const Mask& m) {
  long long total = 0;
  for (std::uint64_t w : m) total += __builtin_popcountll(w);
  return total;
}

struct DenseFamily {
  std::vector<Mask> masks;       // one per member set, input order
  std::vector<long long> sizes;  // |P|
};

std::map<long long, std::size_t> index_ground(
    const std::vector<long long>& ground) {
  std::map<long long, std::size_t> index;
  for (long long x : ground) {
    if (!index.emplace(x, index.size()).second) {
      throw DomainError("duplicate element in ground set");
    }
  }
  return index;
}

DenseFamily densify(const std::map<long long, std::size_t>& index,
                    const SetFamily& family, const char* name) {
  DenseFamily out;
  for (const auto& set : family.sets) {
    Mask m = make_mask(index.size());
    for (long long x : set) {
      auto it = index.find(x);
      if (it == index.end()) {
        throw DomainError(std::string("family ") + name +
                          " contains element " + std::to_string(x) +
                          " outside the ground set");
      }
      if (test_bit(m, it->second)) {
        throw DomainError(std::string("family ") + name +
                          " member set repeats element " + std::to_string(x));
      }
      set_bit(m, it->second);
    }
    out.sizes.push_back(popcount(m));
    out.masks.push_back(std::move(m));
  }
  return out;
}

// Laminarity via the chain criterion: for every element, the member sets
// containing it must be totally ordered by inclusion.
bool dense_is_laminar(std::size_t ground_size, const DenseFamily& family) {
  std::vector<std::vector<std::size_t>> containing(ground_size);
  for (std::size_t s = 0; s < family.masks.size(); ++s) {
    for (std::size_t x = 0; x < ground_size; ++x) {
      if (test_bit(family.masks[s], x)) containing[x].push_back(s);
    }
  }
  for (std::size_t x = 0; x < ground_size; ++x) {
    auto sets = containing[x];
    std::sort(sets.begin(), sets.end(), [&](std::size_t a, std::size_t b) {
      return family.sizes[a] < family.sizes[b];
    });
    for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
      if (!subset_of(family.masks[sets[i]], family.masks[sets[i + 1]])) {
        return false;
      }
    }
  }
  return true;
}

// Forest over a laminar family: parent[i] is the minimal member superset of
// set i (ties broken towards earlier position in the size ordering), or -1
// when only the ground set contains it. element_owner[x] is the minimal
// member set containing element x, or -1.
struct Forest {
  std::vector<int> parent;
  std::vector<int> element_owner;
  std::vector<std::size_t> order;  // set indices sorted by size ascending
};

Forest build_forest(std::size_t ground_size, const DenseFamily& family) {
  Forest forest;
  std::size_t count = family.masks.size();
  forest.parent.assign(count, -1);
  forest.element_owner.assign(ground_size, -1);
  forest.order.resize(count);
  std::iota(forest.order.begin(), forest.order.end(), std::size_t{0});
  std::stable_sort(forest.order.begin(), forest.order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return family.sizes[a] < family.sizes[b];
                   });
  for (std::size_t pos = 0; pos < count; ++pos) {
    std::size_t s = forest.order[pos];
    for (std::size_t later = pos + 1; later < count; ++later) {
      std::size_t t = forest.order[later];
      if (subset_of(family.masks[s], family.masks[t])) {
        forest.parent[s] = static_cast<int>(t);
        break;
      }
    }
  }
  for (std::size_t pos = 0; pos < count; ++pos) {
    std::size_t s = forest.order[pos];
    for (std::size_t x = 0; x < ground_size; ++x) {
      if (forest.element_owner[x] == -1 && test_bit(family.masks[s], x)) {
        forest.element_owner[x] = static_cast<int>(s);
      }
    }
  }
  return forest;
}

struct BoundedEdge {
  int from, to;
  long long lo, hi;
};

}  // namespace

bool is_laminar(const std::vector<long long>& ground,
                const SetFamily& family) {
  auto index = index_ground(ground);
  DenseFamily dense = densify(index, family, "F");
  return dense_is_laminar(index.size(), dense);
}

SplitCertificate fair_split(const std::vector<long long>& ground,
                            const SetFamily& a, const SetFamily& b, int n) {
  if (n < 1) throw DomainError("fair_split requires n >= 1");
  auto index = index_ground(ground);
  std::size_t s = index.size();
  DenseFamily da = densify(index, a, "A");
  DenseFamily db = densify(index, b, "B");
  if (!dense_is_laminar(s, da)) throw DomainError("family A is not laminar");
  if (!dense_is_laminar(s, db)) throw DomainError("family B is not laminar");

  Forest fa = build_forest(s, da);
  Forest fb = build_forest(s, db);

  // Node layout: 0 = source, 1 = sink, 2 = root of the A forest (the ground
  // set), 3 = root of the B forest, then the A sets, the B sets, and one
  // node per element.
  int node_count = 4 + static_cast<int>(da.masks.size() + db.masks.size() +
                                        s) + 2;
  int source = 0, sink = 1, a_root = 2, b_root = 3;
  auto a_node = [&](std::size_t i) { return 4 + static_cast<int>(i); };
  auto b_node = [&](std::size_t i) {
    return 4 + static_cast<int>(da.masks.size() + i);
  };
  auto x_node = [&](std::size_t x) {
    return 4 + static_cast<int>(da.masks.size() + db.masks.size() + x);
  };
  int super_source = node_count - 2, super_sink = node_count - 1;

  std::vector<BoundedEdge> edges;
  long long ground_size = static_cast<long long>(s);
  edges.push_back({source, a_root, intmath::floor_div(ground_size, n),
                   intmath::ceil_div(ground_size, n)});
  edges.push_back({b_root, sink, 0, ground_size});
  for (std::size_t i = 0; i < da.masks.size(); ++i) {
    int parent = fa.parent[i] < 0 ? a_root : a_node(fa.parent[i]);
    edges.push_back({parent, a_node(i), intmath::floor_div(da.sizes[i], n),
                     intmath::ceil_div(da.sizes[i], n)});
  }
  for (std::size_t i = 0; i < db.masks.size(); ++i) {
    int parent = fb.parent[i] < 0 ? b_root : b_node(fb.parent[i]);
    edges.push_back({b_node(i), parent, intmath::floor_div(db.sizes[i], n),
                     intmath::ceil_div(db.sizes[i], n)});
  }
  std::vector<int> element_edge(s);
  for (std::size_t x = 0; x < s; ++x) {
    int from = fa.element_owner[x] < 0 ? a_root : a_node(fa.element_owner[x]);
    int to = fb.element_owner[x] < 0 ? b_root : b_node(fb.element_owner[x]);
    element_edge[x] = static_cast<int>(edges.size());
    edges.push_back({from, x_node(x), 0, 1});
    edges.push_back({x_node(x), to, 0, 1});
  }

  // Lower bounds via the usual excess transformation, with a circulation
  // edge from sink back to source.
  MaxFlow flow(node_count);
  std::vector<long long> excess(node_count, 0);
  std::vector<int> flow_edge(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const BoundedEdge& e = edges[i];
    flow_edge[i] = flow.add_edge(e.from, e.to, e.hi - e.lo);
    excess[e.to] += e.lo;
    excess[e.from] -= e.lo;
  }
  flow.add_edge(sink, source, std::numeric_limits<long long>::max() / 4);
  long long required = 0;
  for (int v = 0; v < node_count - 2; ++v) {
    if (excess[v] > 0) {
      flow.add_edge(super_source, v, excess[v]);
      required += excess[v];
    } else if (excess[v] < 0) {
      flow.add_edge(v, super_sink, -excess[v]);
    }
  }
  long long achieved = flow.run(super_source, super_sink);
  if (achieved != required) {
    // Both families are laminar, so a fair subset always exists; reaching
    // this line means the network construction is wrong.
    throw InternalError("fair_split: feasible flow not found");
  }

  SplitCertificate cert;
  for (std::size_t x = 0; x < s; ++x) {
    long long used =
        edges[element_edge[x]].lo + flow.flow_on(flow_edge[element_edge[x]]);
    if (used == 1) cert.chosen.push_back(ground[x]);
  }
  std::sort(cert.chosen.begin(), cert.chosen.end());

  // Certificate: recount every constraint directly from the chosen set.
  Mask chosen_mask = make_mask(s);
  for (long long x : cert.chosen) set_bit(chosen_mask, index.at(x));
  auto audit_family = [&](const DenseFamily& fam, const char* name) {
    for (std::size_t i = 0; i < fam.masks.size(); ++i) {
      long long got = 0;
      for (std::size_t w = 0; w < chosen_mask.size(); ++w) {
        got += __builtin_popcountll(chosen_mask[w] & fam.masks[i][w]);
      }
      long long lo = intmath::floor_div(fam.sizes[i], n);
      long long hi = intmath::ceil_div(fam.sizes[i], n);
      if (got < lo || got > hi) {
        cert.violations.push_back({name, i, got, lo, hi});
      }
    }
  };
  audit_family(da, "A");
  audit_family(db, "B");
  long long got = static_cast<long long>(cert.chosen.size());
  long long lo = intmath::floor_div(ground_size, n);
  long long hi = intmath::ceil_div(ground_size, n);
  if (got < lo || got > hi) cert.violations.push_back({"S", 0, got, lo, hi});
  if (!cert.valid()) {
    throw InternalError("fair_split: certificate reports violations");
  }
  return cert;
}

std::optional<std::vector<long long>> brute_force_split(
    const std::vector<long long>& ground, const SetFamily& a,
    const SetFamily& b, int n) {
  if (n < 1) throw DomainError("brute_force_split requires n >= 1");
  if (ground.size() > 22) {
    throw DomainError("brute_force_split refuses ground sets above 22 "
                      "elements");
  }
  auto index = index_ground(ground);
  std::size_t s = index.size();

  auto word = [&](const std::vector<long long>& set, const char* name) {
    std::uint64_t m = 0;
    for (long long x : set) {
      auto it = index.find(x);
      if (it == index.end()) {
        throw DomainError(std::string("family ") + name +
                          " contains element outside the ground set");
      }
      m |= std::uint64_t{1} << it->second;
    }
    return m;
  };

  struct Constraint {
    std::uint64_t mask;
    long long lo, hi;
  };
  std::vector<Constraint> constraints;
  for (const auto& set : a.sets) {
    std::uint64_t m = word(set, "A");
    long long size = __builtin_popcountll(m);
    constraints.push_back(
        {m, intmath::floor_div(size, n), intmath::ceil_div(size, n)});
  }
  for (const auto& set : b.sets) {
    std::uint64_t m = word(set, "B");
    long long size = __builtin_popcountll(m);
    constraints.push_back(
        {m, intmath::floor_div(size, n), intmath::ceil_div(size, n)});
  }
  std::uint64_t full = s == 0 ? 0 : (~std::uint64_t{0} >> (64 - s));
  constraints.push_back({full,
                         intmath::floor_div(static_cast<long long>(s), n),
                         intmath::ceil_div(static_cast<long long>(s), n)});

  for (std::uint64_t candidate = 0;; ++candidate) {
    bool ok = true;
    for (const Constraint& c : constraints) {
      long long got = __builtin_popcountll(candidate & c.mask);
      if (got < c.lo || got > c.hi) {
        ok = false;
        break;
      }
    }
    if (ok) {
      std::vector<long long> out;
      for (std::size_t x = 0; x < s; ++x) {
        if ((candidate >> x) & 1) out.push_back(ground[x]);
      }
      return out;
    }
    if (candidate == full) break;
  }
  return std::nullopt;
}

}  // namespace hdx
