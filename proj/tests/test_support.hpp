#ifndef HDX_TEST_SUPPORT_HPP
#define HDX_TEST_SUPPORT_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "hdx/design.hpp"
#include "hdx/hypergraph.hpp"
#include "hdx/laminar.hpp"

namespace hdx::testing {

// The worked five-vertex, three-edge hypergraph used across the query
// tests: e1 meets v1 twice and v2, v3 once each; e2 meets v3, v4; e3 meets
// v5 alone. Vertices are numbered 1..5 and edges 1..3 so hinge (1,0) is h1,
// (1,1) is h2, (1,2) is h3, (1,3) is h4, (2,0) is h5, (2,1) is h6, and
// (3,0) is h7.
inline Hypergraph worked_example(int colors = 0, int color_e1 = 0,
                                 int color_e2 = 0, int color_e3 = 0) {
  std::vector<Edge> edges = {
      {1, color_e1, {1, 1, 2, 3}},
      {2, color_e2, {3, 4}},
      {3, color_e3, {5}},
  };
  return Hypergraph({1, 2, 3, 4, 5}, std::move(edges), colors);
}

// Single amalgamated vertex carrying `count` edges, each attaching to the
// vertex through `hinges_per_edge` hinges.
inline Hypergraph one_vertex_bundle(long long count, int hinges_per_edge,
                                    VertexId vertex = 0) {
  std::vector<Edge> edges;
  for (long long i = 0; i < count; ++i) {
    edges.push_back(
        {i, 0, std::vector<VertexId>(hinges_per_edge, vertex)});
  }
  return Hypergraph({vertex}, std::move(edges));
}

inline NumberFunction uniform_counts(const Hypergraph& graph, int value) {
  std::map<VertexId, int> counts;
  for (VertexId v : graph.vertices()) counts[v] = value;
  return NumberFunction(std::move(counts));
}

// ------------------------------------------------------------------
// Random instances
// ------------------------------------------------------------------

struct RandomHypergraphLimits {
  int max_vertices = 6;
  int max_edges = 40;
  int max_hinges_per_edge = 4;
  int max_colors = 4;  // 0 picks "uncolored" sometimes
};

inline Hypergraph random_hypergraph(std::mt19937_64& rng,
                                    const RandomHypergraphLimits& limits = {}) {
  auto pick = [&](int lo, int hi) {
    return lo + static_cast<int>(rng() % (hi - lo + 1));
  };
  int vertex_count = pick(1, limits.max_vertices);
  int edge_count = pick(1, limits.max_edges);
  int colors = pick(0, limits.max_colors);
  std::vector<VertexId> vertices;
  for (int v = 0; v < vertex_count; ++v) vertices.push_back(v);
  std::vector<Edge> edges;
  for (int e = 0; e < edge_count; ++e) {
    int hinge_count = pick(1, limits.max_hinges_per_edge);
    std::vector<VertexId> hinges;
    for (int h = 0; h < hinge_count; ++h) {
      hinges.push_back(pick(0, vertex_count - 1));
    }
    edges.push_back({e, colors == 0 ? 0 : pick(1, colors), std::move(hinges)});
  }
  return Hypergraph(std::move(vertices), std::move(edges), colors);
}

// Like random_hypergraph but with distinct vertices under every edge, so
// the all-ones count map is simple.
inline Hypergraph random_simple_hypergraph(
    std::mt19937_64& rng, const RandomHypergraphLimits& limits = {}) {
  Hypergraph raw = random_hypergraph(rng, limits);
  std::vector<Edge> edges;
  for (Edge e : raw.edges()) {
    std::sort(e.hinges.begin(), e.hinges.end());
    e.hinges.erase(std::unique(e.hinges.begin(), e.hinges.end()),
                   e.hinges.end());
    edges.push_back(std::move(e));
  }
  return Hypergraph(raw.vertices(), std::move(edges), raw.colors());
}

// Random counts that are simple for the graph, capped at `max_value` (the
// per-edge hinge multiplicity never exceeds the cap used by
// random_hypergraph).
inline NumberFunction random_simple_counts(std::mt19937_64& rng,
                                           const Hypergraph& graph,
                                           int max_value = 4) {
  std::map<VertexId, int> counts;
  for (VertexId v : graph.vertices()) counts[v] = 1;
  for (const Edge& e : graph.edges()) {
    VertexMultiset u{std::span<const VertexId>(e.hinges)};
    for (const auto& [v, c] : u.entries()) {
      counts[v] = std::max(counts[v], static_cast<int>(c));
    }
  }
  for (auto& [v, g] : counts) {
    (void)v;
    int lo = g;
    g = lo + static_cast<int>(rng() % (max_value - lo + 1));
  }
  return NumberFunction(std::move(counts));
}

// Random laminar family over a ground set: member sets are blocks of a
// random recursive partition, so any two are nested or disjoint.
inline SetFamily random_laminar_family(std::mt19937_64& rng,
                                       std::vector<long long> ground,
                                       std::size_t max_sets) {
  SetFamily family;
  std::shuffle(ground.begin(), ground.end(), rng);
  std::vector<std::vector<long long>> queue = {ground};
  while (!queue.empty() && family.sets.size() < max_sets) {
    std::vector<long long> block = std::move(queue.back());
    queue.pop_back();
    if (block.size() <= 1) continue;
    std::size_t cut = 1 + rng() % (block.size() - 1);
    std::vector<long long> left(block.begin(), block.begin() + cut);
    std::vector<long long> right(block.begin() + cut, block.end());
    for (auto& part : {std::ref(left), std::ref(right)}) {
      if (rng() % 2 == 0 && family.sets.size() < max_sets) {
        auto sorted = part.get();
        std::sort(sorted.begin(), sorted.end());
        family.sets.push_back(sorted);
      }
      if (rng() % 2 == 0) queue.push_back(part.get());
    }
  }
  return family;
}

// ------------------------------------------------------------------
// Mutations
// ------------------------------------------------------------------

inline Hypergraph reseat_hinge(const Hypergraph& graph, HingeId hinge,
                               VertexId to) {
  std::vector<Edge> edges = graph.edges();
  for (Edge& e : edges) {
    if (e.id == hinge.edge) e.hinges[hinge.ordinal] = to;
  }
  return Hypergraph(graph.vertices(), std::move(edges), graph.colors());
}

inline Hypergraph recolor_edge(const Hypergraph& graph, EdgeId edge,
                               int color) {
  std::vector<Edge> edges = graph.edges();
  for (Edge& e : edges) {
    if (e.id == edge) e.color = color;
  }
  return Hypergraph(graph.vertices(), std::move(edges), graph.colors());
}

inline Hypergraph drop_edge(const Hypergraph& graph, EdgeId edge) {
  std::vector<Edge> edges;
  for (const Edge& e : graph.edges()) {
    if (e.id != edge) edges.push_back(e);
  }
  return Hypergraph(graph.vertices(), std::move(edges), graph.colors());
}

inline Hypergraph duplicate_edge(const Hypergraph& graph, EdgeId edge) {
  std::vector<Edge> edges = graph.edges();
  Edge copy = graph.edge(edge);
  copy.id = edges.back().id + 1;
  edges.push_back(std::move(copy));
  return Hypergraph(graph.vertices(), std::move(edges), graph.colors());
}

// ------------------------------------------------------------------
// Independent oracles
// ------------------------------------------------------------------

// Matrix feasibility by forward reachability over remaining column sums,
// one factor row at a time. Structurally unrelated to the production
// solver's backtracking.
inline bool oracle_matrix_feasible(const std::vector<int>& sizes,
                                   const std::vector<long long>& column_totals,
                                   const std::vector<long long>& row_lo,
                                   const std::vector<long long>& row_hi) {
  std::set<std::vector<long long>> layer = {column_totals};
  for (std::size_t row = 0; row < row_lo.size(); ++row) {
    std::set<std::vector<long long>> next_layer;
    for (const auto& remaining : layer) {
      std::vector<long long> taken(sizes.size(), 0);
      std::function<void(std::size_t, long long)> enumerate =
          [&](std::size_t col, long long weight) {
            if (weight > row_hi[row]) return;
            if (col == sizes.size()) {
              if (weight < row_lo[row]) return;
              std::vector<long long> after = remaining;
              for (std::size_t j = 0; j < after.size(); ++j) {
                after[j] -= taken[j];
              }
              next_layer.insert(std::move(after));
              return;
            }
            for (long long v = 0; v <= remaining[col]; ++v) {
              taken[col] = v;
              enumerate(col + 1, weight + v * sizes[col]);
            }
            taken[col] = 0;
          };
      enumerate(0, 0);
    }
    layer = std::move(next_layer);
    if (layer.empty()) return false;
  }
  return layer.count(std::vector<long long>(sizes.size(), 0)) > 0;
}

// Feasibility oracle matching solve_distribution_matrix's constraint set.
inline bool oracle_design_matrix_feasible(const DesignSpec& design,
                                          const FactorSpec& factors,
                                          FactorKind kind) {
  long long p = design.partite() ? design.parts->front() : 1;
  std::vector<long long> columns;
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    columns.push_back(design.edge_count(j));
  }
  std::vector<long long> row_lo, row_hi;
  for (std::size_t i = 0; i < factors.k(); ++i) {
    auto [lo, hi] = factors.degree_bounds(i, kind);
    row_lo.push_back(design.n * p * std::max<long long>(lo, 0));
    row_hi.push_back(design.n * p * hi);
  }
  return oracle_matrix_feasible(design.sizes, columns, row_lo, row_hi);
}

}  // namespace hdx::testing

#endif  // HDX_TEST_SUPPORT_HPP
