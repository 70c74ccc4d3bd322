#include "hdx/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hdx/intmath.hpp"

namespace hdx {

namespace {

long long lookup(const std::map<VertexMultiset, long long>& census,
                 const VertexMultiset& key) {
  auto it = census.find(key);
  return it == census.end() ? 0 : it->second;
}

void for_each_subset(const std::vector<VertexId>& pool, std::size_t want,
                     const std::function<void(const std::vector<VertexId>&)>& fn) {
  std::vector<VertexId> current;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    if (current.size() == want) {
      fn(current);
      return;
    }
    for (std::size_t i = from;
         i + (want - current.size()) <= pool.size(); ++i) {
      current.push_back(pool[i]);
      rec(i + 1);
      current.pop_back();
    }
  };
  rec(0);
}

// All required multisets of the design with their multiplicities: every
// h_j-subset of the vertices (non-partite), or every transversal h_j-subset
// (partite).
std::map<VertexMultiset, long long> required_census(
    const DesignSpec& design,
    const std::optional<std::vector<std::vector<VertexId>>>& parts,
    const std::vector<VertexId>& vertices) {
  std::map<VertexMultiset, long long> out;
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    int h = design.sizes[j];
    if (!parts) {
      for_each_subset(vertices, static_cast<std::size_t>(h),
                      [&](const std::vector<VertexId>& subset) {
                        out[VertexMultiset(subset)] = design.lambdas[j];
                      });
    } else {
      std::vector<long long> part_ids(parts->size());
      for (std::size_t a = 0; a < parts->size(); ++a) {
        part_ids[a] = static_cast<long long>(a);
      }
      for_each_subset(
          std::vector<VertexId>(part_ids.begin(), part_ids.end()),
          static_cast<std::size_t>(h),
          [&](const std::vector<VertexId>& chosen_parts) {
            std::vector<VertexId> transversal;
            std::function<void(std::size_t)> pick = [&](std::size_t depth) {
              if (depth == chosen_parts.size()) {
                out[VertexMultiset(transversal)] = design.lambdas[j];
                return;
              }
              for (VertexId v :
                   (*parts)[static_cast<std::size_t>(chosen_parts[depth])]) {
                transversal.push_back(v);
                pick(depth + 1);
                transversal.pop_back();
              }
            };
            pick(0);
          });
    }
  }
  return out;
}

}  // namespace

bool VerificationReport::pass() const {
  for (const CheckResult& check : checks) {
    if (!check.pass) return false;
  }
  return true;
}

VerificationReport verify_design(
    const Hypergraph& graph, const DesignSpec& design,
    const std::optional<std::vector<std::vector<VertexId>>>& parts) {
  design.validate();
  VerificationReport report;
  report.subject = "design";

  CheckResult structure;
  structure.name = "vertex-structure";
  long long expected_vertices = design.n;
  if (design.partite()) {
    expected_vertices = 0;
    for (long long p : *design.parts) expected_vertices += p;
  }
  structure.instances = 1;
  if (static_cast<long long>(graph.vertices().size()) != expected_vertices) {
    structure.failures.push_back(
        "vertex count " + std::to_string(graph.vertices().size()) +
        " != expected " + std::to_string(expected_vertices));
  }
  if (design.partite()) {
    if (!parts) {
      structure.failures.push_back("partite design but no parts given");
    } else {
      std::set<VertexId> seen;
      if (static_cast<long long>(parts->size()) != design.n) {
        structure.failures.push_back(
            "part count " + std::to_string(parts->size()) + " != n=" +
            std::to_string(design.n));
      }
      for (std::size_t a = 0; a < parts->size(); ++a) {
        if (a < design.parts->size() &&
            static_cast<long long>((*parts)[a].size()) !=
                (*design.parts)[a]) {
          structure.failures.push_back(
              "part " + std::to_string(a) + " has " +
              std::to_string((*parts)[a].size()) + " vertices, expected " +
              std::to_string((*design.parts)[a]));
        }
        for (VertexId v : (*parts)[a]) {
          if (!graph.has_vertex(v) || !seen.insert(v).second) {
            structure.failures.push_back(
                "part member " + std::to_string(v) +
                " missing from the vertex set or repeated");
          }
        }
      }
      if (seen.size() != graph.vertices().size()) {
        structure.failures.push_back("parts do not cover the vertex set");
      }
    }
  }
  structure.pass = structure.failures.empty();
  report.checks.push_back(std::move(structure));
  if (!report.pass()) return report;

  CheckResult census_check;
  census_check.name = "multiplicity-census";
  auto required = required_census(design, parts, graph.vertices());
  auto realized = graph.census();
  for (const auto& [key, expected] : required) {
    ++census_check.instances;
    long long got = lookup(realized, key);
    if (got != expected) {
      census_check.failures.push_back("m" + key.to_string() + "=" +
                                      std::to_string(got) + ", expected " +
                                      std::to_string(expected));
    }
  }
  for (const auto& [key, got] : realized) {
    if (required.count(key)) continue;
    ++census_check.instances;
    census_check.failures.push_back("m" + key.to_string() + "=" +
                                    std::to_string(got) +
                                    ", expected 0 (not a design subset)");
  }
  census_check.pass = census_check.failures.empty();
  report.checks.push_back(std::move(census_check));
  return report;
}

VerificationReport verify_factorization(const Factorization& factorization) {
  const Hypergraph& graph = factorization.graph;
  const FactorSpec& factors = factorization.factors;
  VerificationReport report;
  report.subject = "factorization";

  CheckResult coloring;
  coloring.name = "coloring";
  coloring.instances = 1;
  if (!graph.colored() ||
      graph.colors() != static_cast<int>(factors.k())) {
    coloring.failures.push_back(
        "expected a total coloring with " + std::to_string(factors.k()) +
        " classes, found " + std::to_string(graph.colors()));
  }
  coloring.pass = coloring.failures.empty();
  report.checks.push_back(std::move(coloring));
  if (!report.pass()) return report;

  for (std::size_t i = 0; i < factors.k(); ++i) {
    CheckResult degrees;
    degrees.name = "factor-degrees[" + std::to_string(i + 1) + "]";
    auto [lo, hi] = factors.degree_bounds(i, factorization.kind);
    lo = std::max<long long>(lo, 0);
    for (VertexId v : graph.vertices()) {
      ++degrees.instances;
      long long d = graph.degree_in_color(v, static_cast<int>(i + 1));
      if (d < lo || d > hi) {
        degrees.failures.push_back(
            "d(" + std::to_string(v) + ")=" + std::to_string(d) +
            " not in [" + std::to_string(lo) + "," + std::to_string(hi) +
            "]");
      }
    }
    degrees.pass = degrees.failures.empty();
    report.checks.push_back(std::move(degrees));
  }

  VerificationReport design_report =
      verify_design(graph, factorization.design, factorization.parts);
  for (CheckResult& check : design_report.checks) {
    check.name = "design." + check.name;
    report.checks.push_back(std::move(check));
  }
  return report;
}

VerificationReport verify_detachment(const Hypergraph& original,
                                     const Hypergraph& detached,
                                     const AmalgamationMap& psi,
                                     const NumberFunction& counts) {
  VerificationReport report;
  report.subject = "detachment";

  CheckResult structure;
  structure.name = "psi-structure";
  for (VertexId v : detached.vertices()) {
    ++structure.instances;
    auto it = psi.entries().find(v);
    if (it == psi.entries().end()) {
      structure.failures.push_back("psi undefined at " + std::to_string(v));
    } else if (!original.has_vertex(it->second)) {
      structure.failures.push_back("psi(" + std::to_string(v) +
                                   ")=" + std::to_string(it->second) +
                                   " is not an original vertex");
    }
  }
  for (const auto& [v, u] : psi.entries()) {
    (void)u;
    if (!detached.has_vertex(v)) {
      structure.failures.push_back("psi defined at unknown vertex " +
                                   std::to_string(v));
    }
  }
  structure.pass = structure.failures.empty();
  report.checks.push_back(std::move(structure));
  if (!report.pass()) return report;

  CheckResult number;
  number.name = "number-function";
  std::map<VertexId, long long> fiber_sizes;
  for (const auto& [v, u] : psi.entries()) {
    (void)v;
    ++fiber_sizes[u];
  }
  for (VertexId u : original.vertices()) {
    ++number.instances;
    long long fiber = fiber_sizes.count(u) ? fiber_sizes.at(u) : 0;
    long long expected = counts.defined_on(u) ? counts.at(u) : -1;
    if (fiber != expected) {
      number.failures.push_back("g(" + std::to_string(u) + ")=" +
                                std::to_string(expected) + " but psi fiber " +
                                "has size " + std::to_string(fiber));
    }
  }
  number.pass = number.failures.empty();
  report.checks.push_back(std::move(number));

  CheckResult hinges;
  hinges.name = "hinge-preservation";
  if (original.edges().size() != detached.edges().size()) {
    hinges.failures.push_back(
        "edge counts differ: " + std::to_string(original.edges().size()) +
        " vs " + std::to_string(detached.edges().size()));
  } else {
    for (std::size_t i = 0; i < original.edges().size(); ++i) {
      const Edge& before = original.edges()[i];
      const Edge& after = detached.edges()[i];
      ++hinges.instances;
      if (before.id != after.id || before.color != after.color ||
          before.hinges.size() != after.hinges.size()) {
        hinges.failures.push_back("edge " + std::to_string(before.id) +
                                  " changed id, color, or hinge count");
        continue;
      }
      for (std::size_t o = 0; o < before.hinges.size(); ++o) {
        VertexId target = psi.entries().count(after.hinges[o])
                              ? psi.entries().at(after.hinges[o])
                              : -1;
        if (target != before.hinges[o]) {
          hinges.failures.push_back(
              "hinge (" + std::to_string(before.id) + "," +
              std::to_string(o) + ") sits on " +
              std::to_string(after.hinges[o]) + " with image " +
              std::to_string(target) + ", expected " +
              std::to_string(before.hinges[o]));
        }
      }
    }
  }
  hinges.pass = hinges.failures.empty();
  report.checks.push_back(std::move(hinges));
  if (!number.pass || !hinges.pass) return report;

  CheckResult simple;
  simple.name = "simplicity";
  for (const Edge& e : detached.edges()) {
    VertexMultiset u(std::span<const VertexId>(e.hinges));
    for (const auto& [v, c] : u.entries()) {
      ++simple.instances;
      if (c > 1) {
        simple.failures.push_back("edge " + std::to_string(e.id) +
                                  " meets vertex " + std::to_string(v) +
                                  " through " + std::to_string(c) +
                                  " hinges");
      }
    }
  }
  simple.pass = simple.failures.empty();
  report.checks.push_back(std::move(simple));

  auto fibers = psi.fibers();
  int k = original.colors();

  for (int j = 0; j <= k; ++j) {
    CheckResult degrees;
    degrees.name =
        j == 0 ? "degree-shares" : "degree-shares[color " + std::to_string(j) +
                                       "]";
    for (VertexId v : detached.vertices()) {
      ++degrees.instances;
      VertexId u = psi.entries().at(v);
      long long d = j == 0 ? detached.degree(v)
                           : detached.degree_in_color(v, j);
      long long d_orig =
          j == 0 ? original.degree(u) : original.degree_in_color(u, j);
      long long g = counts.at(u);
      if (!intmath::in_approx(d, d_orig, g)) {
        degrees.failures.push_back(
            "d(" + std::to_string(v) + ")=" + std::to_string(d) +
            " not in [" + std::to_string(intmath::floor_div(d_orig, g)) +
            "," + std::to_string(intmath::ceil_div(d_orig, g)) +
            "] from d(" + std::to_string(u) + ")=" + std::to_string(d_orig) +
            ", g=" + std::to_string(g));
      }
    }
    degrees.pass = degrees.failures.empty();
    report.checks.push_back(std::move(degrees));

    CheckResult mult;
    mult.name = j == 0 ? "multiplicity-shares"
                       : "multiplicity-shares[color " + std::to_string(j) +
                             "]";
    auto original_census = original.census(j);
    auto detached_census = detached.census(j);

    for (const auto& [key, count] : original_census) {
      long long scale = 1;
      for (const auto& [u, m] : key.entries()) {
        scale *= intmath::binomial(counts.at(u), m);
      }
      std::vector<std::vector<VertexMultiset>> options;
      for (const auto& [u, m] : key.entries()) {
        std::vector<VertexMultiset> local;
        for_each_subset(fibers.at(u), static_cast<std::size_t>(m),
                        [&](const std::vector<VertexId>& subset) {
                          local.push_back(VertexMultiset(subset));
                        });
        options.push_back(std::move(local));
      }
      std::function<void(std::size_t, VertexMultiset)> expand =
          [&](std::size_t depth, VertexMultiset acc) {
            if (depth == options.size()) {
              ++mult.instances;
              long long got = lookup(detached_census, acc);
              if (!intmath::in_approx(got, count, scale)) {
                mult.failures.push_back(
                    "m" + acc.to_string() + "=" + std::to_string(got) +
                    " not in [" +
                    std::to_string(intmath::floor_div(count, scale)) + "," +
                    std::to_string(intmath::ceil_div(count, scale)) +
                    "] from m" + key.to_string() + "=" +
                    std::to_string(count) + ", scale=" +
                    std::to_string(scale));
              }
              return;
            }
            for (const VertexMultiset& option : options[depth]) {
              expand(depth + 1, acc.merged(option));
            }
          };
      expand(0, VertexMultiset());
    }

    for (const auto& [key, count] : detached_census) {
      bool doubled = false;
      VertexMultiset projected;
      for (const auto& [v, c] : key.entries()) {
        if (c >= 2) doubled = true;
        projected.add(psi.entries().at(v), c);
      }
      if (doubled) continue;  // simplicity failure, reported above
      if (lookup(original_census, projected) == 0) {
        ++mult.instances;
        mult.failures.push_back("m" + key.to_string() + "=" +
                                std::to_string(count) + " but m" +
                                projected.to_string() +
                                "=0 in the amalgamation");
      }
    }
    mult.pass = mult.failures.empty();
    report.checks.push_back(std::move(mult));
  }
  return report;
}

}  // namespace hdx
