#include "hdx/design.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "hdx/detach.hpp"
#include "hdx/intmath.hpp"

namespace hdx {

namespace {

long long vector_sum(const std::vector<long long>& values) {
  long long total = 0;
  for (long long v : values) total += v;
  return total;
}

std::string join(const std::vector<long long>& values) {
  std::ostringstream os;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  return os.str();
}

}  // namespace

bool DesignSpec::uniform_parts() const {
  if (!parts) return true;
  for (long long p : *parts) {
    if (p != parts->front()) return false;
  }
  return true;
}

void DesignSpec::validate() const {
  if (n < 1) throw DomainError("design needs n >= 1");
  if (sizes.empty() || sizes.size() != lambdas.size()) {
    throw DomainError("design needs matching, non-empty size and lambda "
                      "vectors");
  }
  std::set<int> seen;
  for (int h : sizes) {
    if (h < 1 || h > n) {
      throw DomainError("edge size " + std::to_string(h) +
                        " out of range 1.." + std::to_string(n));
    }
    if (partite() && h < 2) {
      throw DomainError("partite designs need edge sizes >= 2");
    }
    if (!seen.insert(h).second) {
      throw DomainError("edge sizes must be distinct");
    }
  }
  for (long long lambda : lambdas) {
    if (lambda < 1) throw DomainError("lambdas must be >= 1");
  }
  if (parts) {
    if (static_cast<long long>(parts->size()) != n) {
      throw DomainError("need exactly n part sizes");
    }
    for (long long p : *parts) {
      if (p < 1) throw DomainError("part sizes must be >= 1");
    }
  }
}

long long DesignSpec::regular_degree() const {
  long long p = partite() ? parts->front() : 1;
  long long total = 0;
  for (std::size_t j = 0; j < sizes.size(); ++j) {
    total += lambdas[j] * intmath::binomial(n - 1, sizes[j] - 1) *
             intmath::ipow(p, sizes[j] - 1);
  }
  return total;
}

long long DesignSpec::edge_count(std::size_t j) const {
  long long p = partite() ? parts->front() : 1;
  return lambdas[j] * intmath::binomial(n, sizes[j]) *
         intmath::ipow(p, sizes[j]);
}

std::string to_string(FactorKind kind) {
  switch (kind) {
    case FactorKind::R:
      return "R";
    case FactorKind::QR:
      return "QR";
    case FactorKind::AlmostR:
      return "almostR";
  }
  throw DomainError("unknown factor kind");
}

void FactorSpec::validate(FactorKind kind) const {
  if (r.empty()) throw DomainError("factor spec needs at least one factor");
  for (long long value : r) {
    if (value < 1) throw DomainError("factor degrees must be >= 1");
  }
  if (kind == FactorKind::QR) {
    if (!q) throw DomainError("interval factorization needs lower degrees");
    if (q->size() != r.size()) {
      throw DomainError("lower and upper degree vectors differ in length");
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      if ((*q)[i] < 0 || (*q)[i] > r[i]) {
        throw DomainError("need 0 <= q_i <= r_i at factor " +
                          std::to_string(i + 1));
      }
    }
  } else if (q) {
    throw DomainError("lower degree vector only applies to interval "
                      "factorizations");
  }
}

std::pair<long long, long long> FactorSpec::degree_bounds(
    std::size_t i, FactorKind kind) const {
  switch (kind) {
    case FactorKind::R:
      return {r[i], r[i]};
    case FactorKind::QR:
      return {(*q)[i], r[i]};
    case FactorKind::AlmostR:
      return {r[i] - 1, r[i]};
  }
  throw DomainError("unknown factor kind");
}

bool Verdict::ok() const {
  for (const NecessityCheck& check : checks) {
    if (!check.pass) return false;
  }
  return true;
}

const NecessityCheck* Verdict::first_failure() const {
  for (const NecessityCheck& check : checks) {
    if (!check.pass) return &check;
  }
  return nullptr;
}

Verdict check_necessary(const DesignSpec& design, const FactorSpec& factors,
                        FactorKind kind) {
  Verdict verdict;
  if (design.partite()) {
    NecessityCheck check;
    check.condition = "equal-part-sizes";
    check.pass = design.uniform_parts();
    check.detail = "part sizes (" + join(*design.parts) +
                   ") must all be equal";
    check.data["parts"] = *design.parts;
    verdict.checks.push_back(check);
    if (!check.pass) return verdict;
  }

  long long degree = design.regular_degree();
  long long upper = vector_sum(factors.r);
  long long lower = upper;
  if (kind == FactorKind::QR) {
    lower = vector_sum(*factors.q);
  } else if (kind == FactorKind::AlmostR) {
    lower = upper - static_cast<long long>(factors.k());
  }

  NecessityCheck check;
  check.condition = "degree-sum";
  check.data["regular_degree"] = degree;
  check.data["sum_upper"] = upper;
  if (kind == FactorKind::R) {
    check.pass = upper == degree;
    check.detail = "s(R)=" + std::to_string(upper) + " must equal vertex " +
                   "degree " + std::to_string(degree);
  } else {
    check.pass = lower <= degree && degree <= upper;
    check.detail = "need s(Q)=" + std::to_string(lower) +
                   " <= vertex degree " + std::to_string(degree) +
                   " <= s(R)=" + std::to_string(upper);
    check.data["sum_lower"] = lower;
  }
  verdict.checks.push_back(check);
  return verdict;
}

namespace {

// Depth-first search over rows in lexicographic order with memoized dead
// states; the first solution found is the lexicographically least matrix.
class MatrixSolver {
 public:
  MatrixSolver(std::vector<int> sizes, std::vector<long long> column_totals,
               std::vector<long long> row_lo, std::vector<long long> row_hi)
      : sizes_(std::move(sizes)), columns_(std::move(column_totals)),
        row_lo_(std::move(row_lo)), row_hi_(std::move(row_hi)) {}

  std::optional<DistributionMatrix> solve() {
    rows_out_.clear();
    if (!place_row(0, columns_)) return std::nullopt;
    DistributionMatrix matrix;
    matrix.rows = row_lo_.size();
    matrix.cols = sizes_.size();
    matrix.values = rows_out_;
    return matrix;
  }

 private:
  bool place_row(std::size_t row, std::vector<long long> remaining) {
    if (row + 1 == row_lo_.size()) {
      long long weight = 0;
      for (std::size_t j = 0; j < sizes_.size(); ++j) {
        weight += sizes_[j] * remaining[j];
      }
      if (weight < row_lo_[row] || weight > row_hi_[row]) return false;
      rows_out_.insert(rows_out_.end(), remaining.begin(), remaining.end());
      return true;
    }
    auto memo_key = std::make_pair(row, remaining);
    if (dead_.count(memo_key)) return false;

    std::vector<long long> row_values(sizes_.size(), 0);
    if (fill_cell(row, 0, 0, row_values, remaining)) return true;
    dead_.insert(std::move(memo_key));
    return false;
  }

  bool fill_cell(std::size_t row, std::size_t col, long long weight,
                 std::vector<long long>& row_values,
                 std::vector<long long>& remaining) {
    if (col == sizes_.size()) {
      if (weight < row_lo_[row] || weight > row_hi_[row]) return false;
      rows_out_.insert(rows_out_.end(), row_values.begin(), row_values.end());
      if (place_row(row + 1, remaining)) return true;
      rows_out_.resize(rows_out_.size() - sizes_.size());
      return false;
    }
    long long rest_max = 0;
    for (std::size_t j = col + 1; j < sizes_.size(); ++j) {
      rest_max += sizes_[j] * remaining[j];
    }
    long long cap =
        std::min(remaining[col], (row_hi_[row] - weight) / sizes_[col]);
    for (long long value = 0; value <= cap; ++value) {
      long long new_weight = weight + value * sizes_[col];
      if (new_weight + rest_max < row_lo_[row]) continue;
      row_values[col] = value;
      remaining[col] -= value;
      if (fill_cell(row, col + 1, new_weight, row_values, remaining)) {
        return true;
      }
      remaining[col] += value;
    }
    row_values[col] = 0;
    return false;
  }

  std::vector<int> sizes_;
  std::vector<long long> columns_, row_lo_, row_hi_;
  std::vector<long long> rows_out_;
  std::set<std::pair<std::size_t, std::vector<long long>>> dead_;
};

}  // namespace

std::optional<DistributionMatrix> solve_distribution_matrix(
    const DesignSpec& design, const FactorSpec& factors, FactorKind kind) {
  design.validate();
  factors.validate(kind);
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
  MatrixSolver solver(design.sizes, columns, row_lo, row_hi);
  return solver.solve();
}

Hypergraph build_design(const DesignSpec& design) {
  design.validate();
  if (design.partite()) {
    throw DomainError("build_design expects a non-partite spec");
  }
  std::vector<VertexId> vertices(design.n);
  for (long long v = 0; v < design.n; ++v) vertices[v] = v;

  std::vector<Edge> edges;
  EdgeId next_id = 0;
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    std::vector<VertexId> subset;
    std::function<void(long long)> choose = [&](long long from) {
      if (static_cast<int>(subset.size()) == design.sizes[j]) {
        for (long long copy = 0; copy < design.lambdas[j]; ++copy) {
          edges.push_back({next_id++, 0, subset});
        }
        return;
      }
      for (long long v = from;
           v + (design.sizes[j] - static_cast<long long>(subset.size())) <=
           design.n;
           ++v) {
        subset.push_back(v);
        choose(v + 1);
        subset.pop_back();
      }
    };
    choose(0);
  }
  return Hypergraph(std::move(vertices), std::move(edges));
}

PartiteDesign build_partite_design(const DesignSpec& design) {
  design.validate();
  if (!design.partite()) {
    throw DomainError("build_partite_design expects part sizes");
  }
  const std::vector<long long>& part_sizes = *design.parts;
  std::vector<std::vector<VertexId>> parts;
  std::vector<VertexId> vertices;
  VertexId next_vertex = 0;
  for (long long size : part_sizes) {
    std::vector<VertexId> part;
    for (long long i = 0; i < size; ++i) {
      part.push_back(next_vertex);
      vertices.push_back(next_vertex++);
    }
    parts.push_back(std::move(part));
  }

  std::vector<Edge> edges;
  EdgeId next_id = 0;
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    int h = design.sizes[j];
    std::vector<long long> chosen_parts;
    std::vector<VertexId> transversal;
    std::function<void(std::size_t)> pick_vertices = [&](std::size_t depth) {
      if (depth == chosen_parts.size()) {
        for (long long copy = 0; copy < design.lambdas[j]; ++copy) {
          edges.push_back({next_id++, 0, transversal});
        }
        return;
      }
      for (VertexId v : parts[chosen_parts[depth]]) {
        transversal.push_back(v);
        pick_vertices(depth + 1);
        transversal.pop_back();
      }
    };
    std::function<void(long long)> pick_parts = [&](long long from) {
      if (static_cast<int>(chosen_parts.size()) == h) {
        pick_vertices(0);
        return;
      }
      for (long long a = from;
           a + (h - static_cast<long long>(chosen_parts.size())) <=
           design.n;
           ++a) {
        chosen_parts.push_back(a);
        pick_parts(a + 1);
        chosen_parts.pop_back();
      }
    };
    pick_parts(0);
  }
  return {Hypergraph(std::move(vertices), std::move(edges)),
          std::move(parts)};
}

namespace {

FactorSpec effective_factors(const FactorSpec& factors, FactorKind kind) {
  FactorSpec effective = factors;
  if (kind == FactorKind::AlmostR) {
    std::vector<long long> q;
    for (long long value : factors.r) q.push_back(value - 1);
    effective.q = std::move(q);
  }
  return effective;
}

Refusal matrix_refusal(const DesignSpec& design, const FactorSpec& factors,
                       FactorKind kind) {
  long long p = design.partite() ? design.parts->front() : 1;
  Refusal refusal;
  refusal.condition = "distribution-matrix";
  std::vector<long long> column_sums;
  std::vector<std::vector<long long>> row_bounds;
  std::ostringstream detail;
  detail << "no non-negative integer matrix allots the edge classes: "
         << "sizes=(";
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    detail << (j ? "," : "") << design.sizes[j];
    column_sums.push_back(design.edge_count(j));
  }
  detail << "), column sums=(";
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    detail << (j ? "," : "") << design.edge_count(j);
  }
  detail << "), row degree budgets=(";
  for (std::size_t i = 0; i < factors.k(); ++i) {
    auto [lo, hi] = factors.degree_bounds(i, kind);
    long long scaled_lo = design.n * p * std::max<long long>(lo, 0);
    long long scaled_hi = design.n * p * hi;
    row_bounds.push_back({scaled_lo, scaled_hi});
    detail << (i ? "," : "");
    if (scaled_lo == scaled_hi) {
      detail << scaled_lo;
    } else {
      detail << "[" << scaled_lo << ".." << scaled_hi << "]";
    }
  }
  detail << ")";
  refusal.detail = detail.str();
  refusal.data["sizes"] = design.sizes;
  refusal.data["column_sums"] = column_sums;
  refusal.data["row_bounds"] = row_bounds;
  return refusal;
}

// Single-vertex amalgamation of the design, with edge classes colored
// straight off the distribution matrix in edge-id order.
Hypergraph amalgamated_colored_design(const DesignSpec& design,
                                      const DistributionMatrix& matrix) {
  std::vector<Edge> edges;
  EdgeId next_id = 0;
  for (std::size_t j = 0; j < design.sizes.size(); ++j) {
    std::vector<VertexId> hinges(design.sizes[j], 0);
    for (std::size_t i = 0; i < matrix.rows; ++i) {
      for (long long copy = 0; copy < matrix.at(i, j); ++copy) {
        edges.push_back({next_id++, static_cast<int>(i + 1), hinges});
      }
    }
  }
  return Hypergraph({0}, std::move(edges), static_cast<int>(matrix.rows));
}

FactorizeResult factorize_flat(const DesignSpec& design,
                               const FactorSpec& factors, FactorKind kind,
                               std::uint64_t seed) {
  FactorSpec effective = effective_factors(factors, kind);
  Verdict verdict = check_necessary(design, effective, kind);
  if (!verdict.ok()) {
    const NecessityCheck* failure = verdict.first_failure();
    return Refusal{failure->condition, failure->detail, failure->data};
  }
  auto matrix = solve_distribution_matrix(design, factors, kind);
  if (!matrix) return matrix_refusal(design, effective, kind);

  Hypergraph amalgamated = amalgamated_colored_design(design, *matrix);
  NumberFunction counts(
      std::map<VertexId, int>{{0, static_cast<int>(design.n)}});
  DetachResult detached = detach(amalgamated, counts, {.seed = seed});

  Factorization out;
  out.graph = std::move(detached.detached);
  out.kind = kind;
  out.design = design;
  out.factors = std::move(effective);
  out.matrix = std::move(*matrix);
  return out;
}

FactorizeResult factorize_partite(const DesignSpec& design,
                                  const FactorSpec& factors, FactorKind kind,
                                  std::uint64_t seed) {
  FactorSpec effective = effective_factors(factors, kind);
  Verdict verdict = check_necessary(design, effective, kind);
  if (!verdict.ok()) {
    const NecessityCheck* failure = verdict.first_failure();
    return Refusal{failure->condition, failure->detail, failure->data};
  }
  auto matrix = solve_distribution_matrix(design, factors, kind);
  if (!matrix) return matrix_refusal(design, effective, kind);

  long long p = design.parts->front();

  // Stage one: factorize the n-vertex design that amalgamates each part,
  // with p^h_j-fold multiplicities and degree budgets scaled by p. The
  // partite matrix satisfies exactly the scaled constraints.
  Hypergraph amalgamated = amalgamated_colored_design(design, *matrix);
  NumberFunction stage1_counts(
      std::map<VertexId, int>{{0, static_cast<int>(design.n)}});
  DetachResult stage1 = detach(amalgamated, stage1_counts, {.seed = seed});

  // Stage two: split every part vertex into its p members.
  std::map<VertexId, int> stage2_map;
  for (VertexId v : stage1.detached.vertices()) {
    stage2_map[v] = static_cast<int>(p);
  }
  NumberFunction stage2_counts(std::move(stage2_map));
  DetachResult stage2 = detach(stage1.detached, stage2_counts, {.seed = seed});

  std::vector<std::vector<VertexId>> parts;
  auto fibers = stage2.psi.fibers();
  for (VertexId v : stage1.detached.vertices()) {
    std::vector<VertexId> part = fibers.at(v);
    std::sort(part.begin(), part.end());
    parts.push_back(std::move(part));
  }

  Factorization out;
  out.graph = std::move(stage2.detached);
  out.kind = kind;
  out.design = design;
  out.factors = std::move(effective);
  out.matrix = std::move(*matrix);
  out.parts = std::move(parts);
  return out;
}

}  // namespace

FactorizeResult factorize(const DesignSpec& design, const FactorSpec& factors,
                          FactorKind kind, std::uint64_t seed) {
  design.validate();
  factors.validate(kind);
  if (design.partite()) {
    return factorize_partite(design, factors, kind, seed);
  }
  return factorize_flat(design, factors, kind, seed);
}

FactorizeResult r_factorize(const DesignSpec& design,
                            const FactorSpec& factors, std::uint64_t seed) {
  if (design.partite()) {
    throw DomainError("r_factorize expects a non-partite design");
  }
  return factorize(design, factors, FactorKind::R, seed);
}

FactorizeResult partite_r_factorize(const DesignSpec& design,
                                    const FactorSpec& factors,
                                    std::uint64_t seed) {
  if (!design.partite()) {
    throw DomainError("partite_r_factorize expects part sizes");
  }
  return factorize(design, factors, FactorKind::R, seed);
}

FactorizeResult qr_factorize(const DesignSpec& design,
                             const FactorSpec& factors, std::uint64_t seed) {
  return factorize(design, factors, FactorKind::QR, seed);
}

FactorizeResult almost_factorize(const DesignSpec& design,
                                 const FactorSpec& factors,
                                 std::uint64_t seed) {
  return factorize(design, factors, FactorKind::AlmostR, seed);
}

}  // namespace hdx
