#include <doctest.h>

#include <random>

#include "hdx/hypergraph.hpp"
#include "test_support.hpp"

using namespace hdx;
using hdx::testing::random_hypergraph;
using hdx::testing::worked_example;

namespace {

VertexMultiset multiset(std::initializer_list<VertexId> elements) {
  std::vector<VertexId> v(elements);
  return VertexMultiset(std::span<const VertexId>(v));
}

}  // namespace

TEST_CASE("worked example: sizes, degrees, hinge sets") {
  Hypergraph g = worked_example();

  CHECK(g.edge_size(1) == 3);
  CHECK(g.edge_size(2) == 2);
  CHECK(g.edge_size(3) == 1);

  CHECK(g.degree(1) == 2);
  CHECK(g.degree(3) == 2);
  CHECK(g.degree(2) == 1);
  CHECK(g.degree(4) == 1);
  CHECK(g.degree(5) == 1);

  CHECK(g.hinge_set(1) == std::vector<HingeId>{{1, 0}, {1, 1}});
  CHECK(g.hinge_set(2) == std::vector<HingeId>{{1, 2}});
  CHECK(g.hinge_set(3) == std::vector<HingeId>{{1, 3}, {2, 0}});

  CHECK(g.hinge_set(3, 1) == std::vector<HingeId>{{1, 3}});
  CHECK(g.hinge_set(3, 2) == std::vector<HingeId>{{2, 0}});
  CHECK(g.hinge_set(3, 3).empty());
}

TEST_CASE("worked example: joining edges and multiplicities") {
  Hypergraph g = worked_example();

  CHECK(g.edges_joining(multiset({1, 2, 3})).empty());
  CHECK(g.edges_joining(multiset({1, 1, 2, 3})) == std::vector<EdgeId>{1});
  CHECK(g.multiplicity(multiset({1, 2, 3})) == 0);
  CHECK(g.multiplicity(multiset({1, 1, 2, 3})) == 1);

  // Hinges on u attached to edges joining exactly u^t with the rest.
  CHECK(g.hinges_joining(1, 2, multiset({2, 3})) ==
        std::vector<HingeId>{{1, 0}, {1, 1}});
  CHECK(g.hinges_joining(1, 1, multiset({2, 3})).empty());
  CHECK(g.hinges_joining(3, 1, multiset({1, 1, 2})) ==
        std::vector<HingeId>{{1, 3}});
}

TEST_CASE("edge size counts distinct vertices, not hinges") {
  Hypergraph g({7}, {{1, 0, {7, 7}}});
  CHECK(g.edge_size(1) == 1);
  CHECK(g.edge_multiset(1).size() == 2);
}

TEST_CASE("unknown ids raise domain errors, absent vertices do not") {
  Hypergraph g = worked_example();
  CHECK_THROWS_AS(g.degree(42), DomainError);
  CHECK_THROWS_AS(g.edge_size(42), DomainError);
  CHECK_THROWS_AS(g.hinge_set(42), DomainError);
  CHECK(g.edges_joining(multiset({42})).empty());
  CHECK(g.multiplicity(multiset({42})) == 0);
}

TEST_CASE("single-hinge loop edges count into the singleton multiset") {
  Hypergraph g = testing::one_vertex_bundle(5, 1, 7);
  CHECK(g.multiplicity(VertexMultiset::repeated(7, 1)) == 5);
  CHECK(g.degree(7) == 5);
}

TEST_CASE("number functions must be positive") {
  CHECK_THROWS_AS(NumberFunction(std::map<VertexId, int>{{0, 0}}),
                  DomainError);
}

TEST_CASE("isolated vertices have degree zero") {
  Hypergraph g({0, 1}, {{0, 0, {0}}});
  CHECK(g.degree(1) == 0);
  CHECK(g.hinge_set(1).empty());
}

TEST_CASE("construction invariants") {
  CHECK_THROWS_AS(Hypergraph({0}, {{0, 0, {}}}), DomainError);      // no hinges
  CHECK_THROWS_AS(Hypergraph({0}, {{0, 0, {1}}}), DomainError);     // unknown vertex
  CHECK_THROWS_AS(Hypergraph({0, 0}, {}), DomainError);             // dup vertex
  CHECK_THROWS_AS(Hypergraph({0}, {{0, 0, {0}}, {0, 0, {0}}}),
                  DomainError);                                     // dup edge
  CHECK_THROWS_AS(Hypergraph({0}, {{0, 1, {0}}}, 0), DomainError);  // color, k=0
  CHECK_THROWS_AS(Hypergraph({0}, {{0, 0, {0}}}, 2), DomainError);  // k>0, uncolored
  CHECK_THROWS_AS(Hypergraph({0}, {{0, 3, {0}}}, 2), DomainError);  // color > k
}

TEST_CASE("color classes are spanning and restrict the edges") {
  Hypergraph g = worked_example(2, 1, 2, 2);
  Hypergraph second = g.color_class(2);
  CHECK(second.vertices() == g.vertices());
  CHECK(second.edges().size() == 2);
  CHECK(second.degree(3) == 1);
  CHECK(second.degree(4) == 1);
  CHECK(second.degree(5) == 1);
  CHECK(second.degree(1) == 0);
  CHECK(second.degree(2) == 0);

  Hypergraph single = worked_example(1, 1, 1, 1);
  CHECK(single.color_class(1) == single);

  CHECK_THROWS_AS(worked_example().color_class(1), DomainError);
  CHECK_THROWS_AS(g.color_class(3), DomainError);

  // No edges of some color: spanning and edgeless.
  Hypergraph gapped({0}, {{0, 1, {0}}}, 2);
  CHECK(gapped.color_class(2).edges().empty());
  CHECK(gapped.color_class(2).vertices() == std::vector<VertexId>{0});
}

TEST_CASE("simple functions") {
  Hypergraph g = worked_example();
  CHECK_FALSE(is_simple_function(g, testing::uniform_counts(g, 1)));
  auto violation = find_simplicity_violation(g, testing::uniform_counts(g, 1));
  REQUIRE(violation.has_value());
  CHECK(violation->vertex == 1);
  CHECK(violation->edge == 1);
  CHECK(violation->hinge_count == 2);

  NumberFunction tailored({{1, 2}, {2, 1}, {3, 1}, {4, 1}, {5, 1}});
  CHECK(is_simple_function(g, tailored));

  Hypergraph edgeless({0, 1}, {});
  CHECK(is_simple_function(edgeless, testing::uniform_counts(edgeless, 1)));
}

TEST_CASE("amalgamation: identity, collapse, degree addition") {
  Hypergraph g = worked_example(2, 1, 2, 2);
  std::map<VertexId, VertexId> identity;
  for (VertexId v : g.vertices()) identity[v] = v;
  CHECK(amalgamate(g, AmalgamationMap(identity)) == g);

  // Everything onto one vertex: per-size multiplicities add up.
  std::map<VertexId, VertexId> collapse;
  for (VertexId v : g.vertices()) collapse[v] = 0;
  Hypergraph one = amalgamate(g, AmalgamationMap(collapse));
  CHECK(one.vertices() == std::vector<VertexId>{0});
  CHECK(one.multiplicity(VertexMultiset::repeated(0, 4)) == 1);
  CHECK(one.multiplicity(VertexMultiset::repeated(0, 2)) == 1);
  CHECK(one.multiplicity(VertexMultiset::repeated(0, 1)) == 1);
  CHECK(one.colors() == 2);
  CHECK(one.edge(1).color == 1);

  // Merging two vertices adds their hinge counts.
  std::map<VertexId, VertexId> merge = {{1, 1}, {2, 2}, {3, 1}, {4, 4},
                                        {5, 5}};
  Hypergraph merged = amalgamate(g, AmalgamationMap(merge));
  CHECK(merged.degree(1) == 4);

  std::map<VertexId, VertexId> partial = {{1, 1}};
  CHECK_THROWS_AS(amalgamate(g, AmalgamationMap(partial)), DomainError);
}

TEST_CASE("amalgamation map induces its number function") {
  AmalgamationMap psi({{0, 0}, {1, 0}, {2, 2}});
  NumberFunction g = psi.induced_number_function();
  CHECK(g.at(0) == 2);
  CHECK(g.at(2) == 1);
  CHECK(psi.fibers().at(0) == std::vector<VertexId>{0, 1});
}

TEST_CASE("degree sum equals hinge count; censuses partition the edges") {
  std::mt19937_64 rng(20240811);
  for (int trial = 0; trial < 200; ++trial) {
    Hypergraph g = random_hypergraph(rng);
    long long degree_sum = 0;
    for (VertexId v : g.vertices()) degree_sum += g.degree(v);
    CHECK(degree_sum == g.hinge_count());

    // Every edge is counted under exactly one multiset.
    auto census = g.census();
    long long census_total = 0;
    for (const auto& [key, count] : census) {
      CHECK(count == g.multiplicity(key));
      CHECK(g.edges_joining(key).size() == static_cast<std::size_t>(count));
      census_total += count;
    }
    CHECK(census_total == static_cast<long long>(g.edges().size()));

    if (g.colored()) {
      // Degrees and multiplicities add up over color classes.
      for (VertexId v : g.vertices()) {
        long long by_color = 0;
        for (int j = 1; j <= g.colors(); ++j) {
          by_color += g.degree_in_color(v, j);
          CHECK(g.degree_in_color(v, j) == g.color_class(j).degree(v));
        }
        CHECK(by_color == g.degree(v));
      }
      for (const auto& [key, count] : census) {
        long long by_color = 0;
        for (int j = 1; j <= g.colors(); ++j) {
          by_color += g.color_class(j).multiplicity(key);
        }
        CHECK(by_color == count);
      }
    }
  }
}

TEST_CASE("amalgamate preserves edges, hinges, and colors") {
  std::mt19937_64 rng(987);
  for (int trial = 0; trial < 100; ++trial) {
    Hypergraph g = random_hypergraph(rng);
    std::map<VertexId, VertexId> to_target;
    for (VertexId v : g.vertices()) {
      to_target[v] = g.vertices()[rng() % g.vertices().size()];
    }
    // Force surjectivity onto the image set by construction.
    Hypergraph merged = amalgamate(g, AmalgamationMap(to_target));
    CHECK(merged.edges().size() == g.edges().size());
    CHECK(merged.hinge_count() == g.hinge_count());
    for (const Edge& e : g.edges()) {
      CHECK(merged.edge(e.id).color == e.color);
      CHECK(merged.edge(e.id).hinges.size() == e.hinges.size());
    }
  }
}
