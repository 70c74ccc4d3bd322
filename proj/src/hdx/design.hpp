#ifndef HDX_DESIGN_HPP
#define HDX_DESIGN_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "hdx/hypergraph.hpp"

namespace hdx {

// Parameters of a complete multi-uniform design: lambdas[j] edges on every
// sizes[j]-subset of n vertices. With part sizes present, the vertex set is
// partitioned and only transversal subsets (at most one vertex per part)
// carry edges.
struct DesignSpec {
  long long n = 0;
  std::vector<int> sizes;          // distinct edge sizes h_j
  std::vector<long long> lambdas;  // multiplicities, one per size
  std::optional<std::vector<long long>> parts;  // p_1..p_n

  bool partite() const { return parts.has_value(); }
  bool uniform_parts() const;
  // Throws DomainError when malformed (sizes out of range or repeated,
  // lambdas < 1, part vector length mismatch).
  void validate() const;
  // Degree of every vertex when all parts are equal: sum over j of
  // lambdas[j] * C(n-1, h_j-1) * p^(h_j-1).
  long long regular_degree() const;
  long long edge_count(std::size_t j) const;  // lambda_j * C(n,h_j) * p^h_j
};

enum class FactorKind { R, QR, AlmostR };

std::string to_string(FactorKind kind);

// Target degrees per factor: factor i must be r_i-regular (R), have degrees
// in [q_i, r_i] (QR), or in [r_i - 1, r_i] (almost).
struct FactorSpec {
  std::vector<long long> r;
  std::optional<std::vector<long long>> q;

  std::size_t k() const { return r.size(); }
  void validate(FactorKind kind) const;
  // Effective per-factor degree interval for the given kind.
  std::pair<long long, long long> degree_bounds(std::size_t i,
                                                FactorKind kind) const;
};

struct NecessityCheck {
  std::string condition;
  bool pass = false;
  std::string detail;        // human-readable summary
  nlohmann::json data;       // both sides of the (in)equality, exact
};

struct Verdict {
  std::vector<NecessityCheck> checks;
  bool ok() const;
  const NecessityCheck* first_failure() const;
};

// The counting conditions a factorization must satisfy before any matrix
// is attempted: equal part sizes (partite), and the degree-sum equality
// s(R) = regularity (or s(Q) <= regularity <= s(R)).
Verdict check_necessary(const DesignSpec& design, const FactorSpec& factors,
                        FactorKind kind);

// k x m allotment of edges per size class to factors: row i sums against
// sizes to the degree budget of factor i, column j sums to the number of
// size-h_j edges.
struct DistributionMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<long long> values;  // row-major

  long long at(std::size_t i, std::size_t j) const {
    return values[i * cols + j];
  }
};

// First matrix in row-major lexicographic order satisfying all row and
// column constraints, or nullopt when none exists.
std::optional<DistributionMatrix> solve_distribution_matrix(
    const DesignSpec& design, const FactorSpec& factors, FactorKind kind);

Hypergraph build_design(const DesignSpec& design);

struct PartiteDesign {
  Hypergraph graph;
  std::vector<std::vector<VertexId>> parts;
};
PartiteDesign build_partite_design(const DesignSpec& design);

struct Factorization {
  Hypergraph graph;  // colored; factor i is color class i
  FactorKind kind = FactorKind::R;
  DesignSpec design;
  FactorSpec factors;  // q filled in for almost factorizations
  DistributionMatrix matrix;
  std::optional<std::vector<std::vector<VertexId>>> parts;
};

// Structured refusal: which condition failed and the exact numbers behind
// it.
struct Refusal {
  std::string condition;
  std::string detail;
  nlohmann::json data;
};

using FactorizeResult = std::variant<Factorization, Refusal>;

FactorizeResult r_factorize(const DesignSpec& design,
                            const FactorSpec& factors,
                            std::uint64_t seed = 0);
FactorizeResult partite_r_factorize(const DesignSpec& design,
                                    const FactorSpec& factors,
                                    std::uint64_t seed = 0);
FactorizeResult qr_factorize(const DesignSpec& design,
                             const FactorSpec& factors,
                             std::uint64_t seed = 0);
FactorizeResult almost_factorize(const DesignSpec& design,
                                 const FactorSpec& factors,
                                 std::uint64_t seed = 0);

// Dispatches on kind and on whether the design is partite.
FactorizeResult factorize(const DesignSpec& design, const FactorSpec& factors,
                          FactorKind kind, std::uint64_t seed = 0);

}  // namespace hdx

#endif  // HDX_DESIGN_HPP
