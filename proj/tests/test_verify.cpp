#include <doctest.h>

#include <random>

#include "hdx/design.hpp"
#include "hdx/detach.hpp"
#include "hdx/verify.hpp"
#include "test_support.hpp"

using namespace hdx;
using hdx::testing::one_vertex_bundle;
using hdx::testing::random_hypergraph;
using hdx::testing::random_simple_counts;
using hdx::testing::uniform_counts;

namespace {

DesignSpec k4_pairs() {
  DesignSpec design;
  design.n = 4;
  design.sizes = {2};
  design.lambdas = {1};
  return design;
}

const CheckResult* find_check(const VerificationReport& report,
                              const std::string& name) {
  for (const CheckResult& check : report.checks) {
    if (check.name == name) return &check;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("verify_design accepts the generator output") {
  Hypergraph g = build_design(k4_pairs());
  VerificationReport report = verify_design(g, k4_pairs());
  CHECK(report.pass());
}

TEST_CASE("verify_design names a missing pair") {
  Hypergraph g = testing::drop_edge(build_design(k4_pairs()), 3);
  VerificationReport report = verify_design(g, k4_pairs());
  CHECK_FALSE(report.pass());
  const CheckResult* census = find_check(report, "multiplicity-census");
  REQUIRE(census != nullptr);
  REQUIRE_FALSE(census->failures.empty());
  CHECK(census->failures[0].find("expected 1") != std::string::npos);
}

TEST_CASE("verify_design flags surplus and misplaced edges") {
  Hypergraph g = build_design(k4_pairs());
  CHECK_FALSE(verify_design(testing::duplicate_edge(g, 0), k4_pairs()).pass());

  // An edge meeting a vertex twice is never part of a design.
  Hypergraph doubled(g.vertices(), [&] {
    auto edges = g.edges();
    edges.push_back({99, 0, {2, 2}});
    return edges;
  }());
  CHECK_FALSE(verify_design(doubled, k4_pairs()).pass());
}

TEST_CASE("verify_design rejects intra-part edges") {
  DesignSpec design = k4_pairs();
  design.n = 2;
  design.parts = std::vector<long long>{2, 2};
  PartiteDesign built = build_partite_design(design);
  CHECK(verify_design(built.graph, design, built.parts).pass());

  auto edges = built.graph.edges();
  edges.push_back({99, 0, {built.parts[0][0], built.parts[0][1]}});
  Hypergraph tampered(built.graph.vertices(), std::move(edges));
  VerificationReport report = verify_design(tampered, design, built.parts);
  CHECK_FALSE(report.pass());
}

TEST_CASE("verify_factorization: color swap breaks exactly the degrees") {
  FactorizeResult result = r_factorize(k4_pairs(), [] {
    FactorSpec f;
    f.r = {1, 1, 1};
    return f;
  }());
  REQUIRE(std::holds_alternative<Factorization>(result));
  Factorization fac = std::get<Factorization>(result);
  REQUIRE(verify_factorization(fac).pass());

  // Swap the colors of one edge pair from different classes.
  EdgeId first = -1, second = -1;
  for (const Edge& e : fac.graph.edges()) {
    if (e.color == 1 && first == -1) first = e.id;
    if (e.color == 2 && second == -1) second = e.id;
  }
  // Trade one edge between classes 1 and 2: degrees shift at their
  // endpoints while the uncolored design stays intact.
  Factorization tampered = fac;
  tampered.graph = testing::recolor_edge(
      testing::recolor_edge(fac.graph, first, 2), second, 1);
  VerificationReport report = verify_factorization(tampered);
  CHECK_FALSE(report.pass());
  int failing_degree_checks = 0;
  for (const CheckResult& check : report.checks) {
    if (check.name.rfind("factor-degrees", 0) == 0 && !check.pass) {
      ++failing_degree_checks;
    }
  }
  CHECK(failing_degree_checks == 2);
  const CheckResult* census = find_check(report, "design.multiplicity-census");
  REQUIRE(census != nullptr);
  CHECK(census->pass);  // the uncolored design is untouched
}

TEST_CASE("verify_detachment accepts engine output at random") {
  std::mt19937_64 rng(31415);
  for (int trial = 0; trial < 40; ++trial) {
    Hypergraph g = random_hypergraph(rng, {.max_edges = 15});
    NumberFunction counts = random_simple_counts(rng, g);
    DetachResult result = detach(g, counts);
    CHECK(verify_detachment(g, result.detached, result.psi, counts).pass());
  }
}

TEST_CASE("verify_detachment: psi inconsistent with the counts") {
  Hypergraph g = one_vertex_bundle(6, 2);
  NumberFunction counts = uniform_counts(g, 4);
  DetachResult result = detach(g, counts);

  NumberFunction wrong(std::map<VertexId, int>{{0, 3}});
  VerificationReport report =
      verify_detachment(g, result.detached, result.psi, wrong);
  CHECK_FALSE(report.pass());
  const CheckResult* number = find_check(report, "number-function");
  REQUIRE(number != nullptr);
  CHECK_FALSE(number->pass);
}

TEST_CASE("verify_detachment: re-seated hinge breaks the degree share") {
  Hypergraph g = one_vertex_bundle(8, 1);
  NumberFunction counts = uniform_counts(g, 2);
  DetachResult result = detach(g, counts);
  REQUIRE(verify_detachment(g, result.detached, result.psi, counts).pass());

  // Move one hinge between the two split vertices: degrees become 3 and 5.
  VertexId fresh = result.detached.vertices().back();
  HingeId moved{-1, -1};
  for (const Edge& e : result.detached.edges()) {
    if (e.hinges[0] == 0) moved = {e.id, 0};
  }
  REQUIRE(moved.edge != -1);
  Hypergraph tampered = testing::reseat_hinge(result.detached, moved, fresh);
  VerificationReport report =
      verify_detachment(g, tampered, result.psi, counts);
  CHECK_FALSE(report.pass());
  const CheckResult* degrees = find_check(report, "degree-shares");
  REQUIRE(degrees != nullptr);
  CHECK_FALSE(degrees->pass);
  REQUIRE_FALSE(degrees->failures.empty());
  CHECK(degrees->failures[0].find("[4,4]") != std::string::npos);
}

TEST_CASE("verify_detachment: simplicity violations are reported") {
  Hypergraph g = one_vertex_bundle(4, 2);
  NumberFunction counts = uniform_counts(g, 2);
  DetachResult result = detach(g, counts);
  VertexId fresh = result.detached.vertices().back();

  // Put both hinges of one edge on the new vertex.
  EdgeId victim = result.detached.edges()[0].id;
  Hypergraph tampered =
      testing::reseat_hinge(result.detached, {victim, 0}, fresh);
  tampered = testing::reseat_hinge(tampered, {victim, 1}, fresh);
  VerificationReport report =
      verify_detachment(g, tampered, result.psi, counts);
  CHECK_FALSE(report.pass());
  const CheckResult* simple = find_check(report, "simplicity");
  REQUIRE(simple != nullptr);
  CHECK_FALSE(simple->pass);
}

TEST_CASE("verify_detachment: per-class tampering with balanced totals") {
  // Two colors, three doubled edges each, split three ways: every pair of
  // split vertices carries exactly one edge of each color.
  std::vector<Edge> edges;
  for (EdgeId e = 0; e < 3; ++e) edges.push_back({e, 1, {0, 0}});
  for (EdgeId e = 3; e < 6; ++e) edges.push_back({e, 2, {0, 0}});
  Hypergraph g({0}, std::move(edges), 2);
  NumberFunction counts = uniform_counts(g, 3);
  DetachResult result = detach(g, counts);
  REQUIRE(verify_detachment(g, result.detached, result.psi, counts).pass());

  // Cross-trade one hinge per class so that every total degree survives
  // but the per-class shares shift.
  const auto& vs = result.detached.vertices();
  VertexId a = vs[0], b = vs[1], c = vs[2];
  auto edge_on = [&](int color, VertexId x, VertexId y) {
    for (const Edge& e : result.detached.edges()) {
      VertexMultiset u{std::span<const VertexId>(e.hinges)};
      if (e.color == color && u.count(x) == 1 && u.count(y) == 1) return e.id;
    }
    FAIL("missing edge");
    return EdgeId{-1};
  };
  auto hinge_on = [&](const Hypergraph& graph, EdgeId e, VertexId v) {
    for (int o = 0; o < static_cast<int>(graph.edge(e).hinges.size()); ++o) {
      if (graph.edge(e).hinges[o] == v) return HingeId{e, o};
    }
    FAIL("missing hinge");
    return HingeId{-1, -1};
  };
  EdgeId ab1 = edge_on(1, a, b);
  EdgeId bc2 = edge_on(2, b, c);
  Hypergraph tampered =
      testing::reseat_hinge(result.detached,
                            hinge_on(result.detached, ab1, a), c);
  tampered = testing::reseat_hinge(tampered, hinge_on(tampered, bc2, c), a);

  VerificationReport report =
      verify_detachment(g, tampered, result.psi, counts);
  CHECK_FALSE(report.pass());
  const CheckResult* total_degrees = find_check(report, "degree-shares");
  REQUIRE(total_degrees != nullptr);
  CHECK(total_degrees->pass);  // totals were balanced on purpose
  bool some_color_check_failed = false;
  for (const CheckResult& check : report.checks) {
    if (!check.pass && check.name.find("color") != std::string::npos) {
      some_color_check_failed = true;
    }
  }
  CHECK(some_color_check_failed);
}

TEST_CASE("verify_detachment: hinge preservation against a foreign graph") {
  Hypergraph g = one_vertex_bundle(3, 2);
  NumberFunction counts = uniform_counts(g, 2);
  DetachResult result = detach(g, counts);

  // Renumber an edge: the hinge map no longer matches the amalgamation.
  auto edges = result.detached.edges();
  edges[0].id = 50;
  Hypergraph tampered(result.detached.vertices(), std::move(edges),
                      result.detached.colors());
  VerificationReport report =
      verify_detachment(g, tampered, result.psi, counts);
  CHECK_FALSE(report.pass());
  const CheckResult* hinges = find_check(report, "hinge-preservation");
  REQUIRE(hinges != nullptr);
  CHECK_FALSE(hinges->pass);
}
