#include "hdx/detach.hpp"

#include <algorithm>
#include <functional>
#include <random>
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

AuditCheck approx_check(std::string tag, int color, std::string instance,
                        long long lhs_num, long long lhs_den,
                        long long rhs_num, long long rhs_den) {
  AuditCheck check;
  check.tag = std::move(tag);
  check.color = color;
  check.instance = std::move(instance);
  check.lhs_num = lhs_num;
  check.lhs_den = lhs_den;
  check.rhs_num = rhs_num;
  check.rhs_den = rhs_den;
  check.lo = intmath::floor_div(rhs_num, rhs_den);
  check.hi = intmath::ceil_div(rhs_num, rhs_den);
  check.pass = check.lo * lhs_den <= lhs_num && lhs_num <= check.hi * lhs_den;
  return check;
}

AuditCheck zero_check(std::string tag, int color, std::string instance,
                      long long lhs) {
  AuditCheck check;
  check.tag = std::move(tag);
  check.color = color;
  check.instance = std::move(instance);
  check.lhs_num = lhs;
  check.pass = lhs == 0;
  return check;
}

// All size-`want` subsets of `pool`, in lexicographic position order.
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

}  // namespace

bool StepAudit::passed() const { return failure_count() == 0; }

std::size_t StepAudit::failure_count() const {
  std::size_t failures = 0;
  for (const AuditCheck& check : checks) {
    if (!check.pass) ++failures;
  }
  return failures;
}

SplitFamilies build_split_families(const Hypergraph& graph, VertexId alpha) {
  SplitFamilies families;
  families.ground = graph.hinge_set(alpha);

  std::map<HingeId, long long> ground_index;
  for (std::size_t i = 0; i < families.ground.size(); ++i) {
    ground_index[families.ground[i]] = static_cast<long long>(i);
  }

  auto push_nonempty = [&](SetFamily& family, std::vector<long long> set) {
    if (!set.empty()) family.sets.push_back(std::move(set));
  };

  // Whole hinge set.
  {
    std::vector<long long> all(families.ground.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      all[i] = static_cast<long long>(i);
    }
    push_nonempty(families.degree_family, std::move(all));
  }

  int k = graph.colors();
  std::vector<std::vector<long long>> per_color(k + 1);
  // Edge groups keyed by the edge's vertex distribution; each group keeps
  // the alpha-hinges of its edges, overall and per color.
  std::map<VertexMultiset, std::vector<long long>> groups;
  std::map<std::pair<VertexMultiset, int>, std::vector<long long>>
      colored_groups;

  std::set<EdgeId> seen_edges;
  for (const HingeId& hinge : families.ground) {
    seen_edges.insert(hinge.edge);
  }
  for (EdgeId edge_id : seen_edges) {
    const Edge& e = graph.edge(edge_id);
    std::vector<long long> on_alpha;
    for (int i = 0; i < static_cast<int>(e.hinges.size()); ++i) {
      if (e.hinges[i] == alpha) {
        on_alpha.push_back(ground_index.at(HingeId{e.id, i}));
      }
    }
    VertexMultiset signature(std::span<const VertexId>(e.hinges));
    auto& group = groups[signature];
    group.insert(group.end(), on_alpha.begin(), on_alpha.end());
    if (k > 0) {
      auto& colored = colored_groups[{signature, e.color}];
      colored.insert(colored.end(), on_alpha.begin(), on_alpha.end());
      auto& color_set = per_color[e.color];
      color_set.insert(color_set.end(), on_alpha.begin(), on_alpha.end());
    }
    // Per-edge hinge set.
    push_nonempty(families.degree_family, std::move(on_alpha));
  }
  for (int j = 1; j <= k; ++j) {
    push_nonempty(families.degree_family, std::move(per_color[j]));
  }
  for (auto& [signature, set] : groups) {
    push_nonempty(families.group_family, std::move(set));
  }
  for (auto& [key, set] : colored_groups) {
    push_nonempty(families.group_family, std::move(set));
  }
  for (auto& family :
       {std::ref(families.degree_family), std::ref(families.group_family)}) {
    for (auto& set : family.get().sets) std::sort(set.begin(), set.end());
  }
  return families;
}

DetachmentState initial_state(const Hypergraph& graph,
                              const NumberFunction& counts) {
  DetachmentState state;
  state.graph = graph;
  state.counts = counts;
  for (VertexId v : graph.vertices()) state.origin[v] = v;
  return state;
}

DetachmentState detach_step(const DetachmentState& state, VertexId alpha) {
  int share = state.counts.at(alpha);
  if (share < 2) {
    throw DomainError("detach_step requires a split count >= 2 at vertex " +
                      std::to_string(alpha));
  }
  SplitFamilies families = build_split_families(state.graph, alpha);
  std::vector<long long> ground_ids(families.ground.size());
  for (std::size_t i = 0; i < ground_ids.size(); ++i) {
    ground_ids[i] = static_cast<long long>(i);
  }
  SplitCertificate cert = fair_split(ground_ids, families.degree_family,
                                     families.group_family, share);

  VertexId fresh = state.graph.vertices().empty()
                       ? 0
                       : state.graph.vertices().back() + 1;
  std::vector<VertexId> vertices = state.graph.vertices();
  vertices.push_back(fresh);
  std::vector<Edge> edges = state.graph.edges();
  std::map<EdgeId, std::size_t> edge_pos;
  for (std::size_t i = 0; i < edges.size(); ++i) edge_pos[edges[i].id] = i;
  for (long long chosen : cert.chosen) {
    const HingeId& hinge = families.ground[static_cast<std::size_t>(chosen)];
    edges[edge_pos.at(hinge.edge)].hinges[hinge.ordinal] = fresh;
  }

  DetachmentState next;
  next.graph = Hypergraph(std::move(vertices), std::move(edges),
                          state.graph.colors());
  std::map<VertexId, int> counts = state.counts.values();
  counts[alpha] = share - 1;
  counts[fresh] = 1;
  next.counts = NumberFunction(std::move(counts));
  next.origin = state.origin;
  next.origin[fresh] = state.origin.at(alpha);
  next.step = state.step + 1;
  return next;
}

StepAudit audit_step(const DetachmentState& prev, const DetachmentState& next,
                     VertexId alpha) {
  StepAudit audit;
  VertexId fresh = -1;
  for (VertexId v : next.graph.vertices()) {
    if (!prev.graph.has_vertex(v)) fresh = v;
  }
  if (fresh == -1) {
    throw DomainError("audit_step: next state introduces no new vertex");
  }
  long long g_prev = prev.counts.at(alpha);
  long long g_next = g_prev - 1;

  int k = prev.graph.colors();
  for (int j = 0; j <= k; ++j) {
    std::string degree_tag = j == 0 ? "B" : "C";
    long long d_prev = j == 0 ? prev.graph.degree(alpha)
                              : prev.graph.degree_in_color(alpha, j);
    long long d_next_alpha = j == 0 ? next.graph.degree(alpha)
                                    : next.graph.degree_in_color(alpha, j);
    long long d_next_fresh = j == 0 ? next.graph.degree(fresh)
                                    : next.graph.degree_in_color(fresh, j);
    audit.checks.push_back(approx_check(degree_tag + "1", j,
                                        "alpha=" + std::to_string(alpha),
                                        d_next_alpha, 1, d_prev * g_next,
                                        g_prev));
    audit.checks.push_back(approx_check(degree_tag + "2", j,
                                        "v=" + std::to_string(fresh),
                                        d_next_fresh, 1, d_prev, g_prev));

    auto prev_census = prev.graph.census(j);
    auto next_census = next.graph.census(j);

    bool doubled = false;
    for (const auto& [key, count] : next_census) {
      if (key.count(fresh) >= 2) {
        doubled = true;
        audit.checks.push_back(
            zero_check(degree_tag + "3", j, key.to_string(), count));
      }
    }
    if (!doubled) {
      audit.checks.push_back(zero_check(degree_tag + "3", j, "none", 0));
    }

    for (const auto& [key, count] : prev_census) {
      long long t = key.count(alpha);
      if (t < 1) continue;
      std::string instance = key.to_string();
      audit.checks.push_back(approx_check(
          degree_tag + "4", j, instance, lookup(next_census, key), 1,
          count * (g_prev - t), g_prev));
      VertexMultiset moved = key.without(alpha);
      moved.add(alpha, t - 1);
      moved.add(fresh, 1);
      audit.checks.push_back(approx_check(degree_tag + "5", j, instance,
                                          lookup(next_census, moved), 1,
                                          t * count, g_prev));
    }
  }
  return audit;
}

StepAudit audit_cumulative(const Hypergraph& original,
                           const NumberFunction& counts,
                           const DetachmentState& state) {
  StepAudit audit;

  // Structural sanity of the ancestry map; the share conditions below are
  // meaningless when it is broken, so a failure here ends the audit.
  {
    AuditCheck check;
    check.tag = "origin";
    check.instance = "all";
    check.pass = true;
    for (VertexId v : state.graph.vertices()) {
      auto it = state.origin.find(v);
      if (it == state.origin.end() || !original.has_vertex(it->second) ||
          !counts.defined_on(it->second) || !state.counts.defined_on(v)) {
        check.pass = false;
        check.instance = "v=" + std::to_string(v);
        break;
      }
    }
    bool bad = !check.pass;
    audit.checks.push_back(std::move(check));
    if (bad) return audit;
  }

  auto violation = find_simplicity_violation(state.graph, state.counts);
  {
    AuditCheck check;
    check.tag = "simple";
    check.instance =
        violation ? "v=" + std::to_string(violation->vertex) +
                        ",e=" + std::to_string(violation->edge)
                  : "all";
    check.lhs_num = violation ? violation->hinge_count : 0;
    check.pass = !violation;
    audit.checks.push_back(check);
  }

  std::map<VertexId, std::vector<VertexId>> fibers;
  for (const auto& [v, u] : state.origin) fibers[u].push_back(v);

  int k = original.colors();
  for (int j = 0; j <= k; ++j) {
    std::string degree_tag = j == 0 ? "D1" : "E1";
    std::string mult_tag = j == 0 ? "D2" : "E2";
    for (const auto& [v, u] : state.origin) {
      long long d_state = j == 0 ? state.graph.degree(v)
                                 : state.graph.degree_in_color(v, j);
      long long d_orig =
          j == 0 ? original.degree(u) : original.degree_in_color(u, j);
      audit.checks.push_back(approx_check(degree_tag, j,
                                          "v=" + std::to_string(v),
                                          d_state, state.counts.at(v), d_orig,
                                          counts.at(u)));
    }

    auto original_census = original.census(j);
    auto state_census = state.graph.census(j);

    // Forward direction: every realized multiset of the original, expanded
    // over the fibers of its vertices.
    for (const auto& [key, count] : original_census) {
      long long scale_orig = 1;
      for (const auto& [u, m] : key.entries()) {
        scale_orig *= intmath::binomial(counts.at(u), m);
      }
      // Per-vertex expansion options: (copies of u itself, subset of other
      // fiber members), weighted by the binomial at the current counts.
      struct Option {
        VertexMultiset part;
        long long weight;
      };
      std::vector<std::vector<Option>> options;
      for (const auto& [u, m] : key.entries()) {
        std::vector<Option> local;
        std::vector<VertexId> others;
        for (VertexId v : fibers.at(u)) {
          if (v != u) others.push_back(v);
        }
        int g_here = state.counts.at(u);
        for (long long own = 0; own <= std::min<long long>(m, g_here);
             ++own) {
          long long rest = m - own;
          if (rest > static_cast<long long>(others.size())) continue;
          for_each_subset(others, static_cast<std::size_t>(rest),
                          [&](const std::vector<VertexId>& subset) {
                            VertexMultiset part;
                            part.add(u, own);
                            for (VertexId v : subset) part.add(v, 1);
                            local.push_back(
                                {part, intmath::binomial(g_here, own)});
                          });
        }
        options.push_back(std::move(local));
      }
      std::vector<std::size_t> pick(options.size(), 0);
      std::function<void(std::size_t, VertexMultiset, long long)> expand =
          [&](std::size_t depth, VertexMultiset acc, long long weight) {
            if (depth == options.size()) {
              audit.checks.push_back(approx_check(
                  mult_tag, j, key.to_string() + "->" + acc.to_string(),
                  lookup(state_census, acc), weight, count, scale_orig));
              return;
            }
            for (const Option& option : options[depth]) {
              expand(depth + 1, acc.merged(option.part),
                     weight * option.weight);
            }
          };
      expand(0, VertexMultiset(), 1);
    }

    // Converse direction: realized multisets of the state whose projection
    // is unrealized in the original must not exist.
    for (const auto& [key, count] : state_census) {
      VertexMultiset projected;
      bool covered_by_simplicity = false;
      long long scale_state = 1;
      for (const auto& [v, c] : key.entries()) {
        VertexId u = state.origin.at(v);
        if (v != u && c >= 2) {
          covered_by_simplicity = true;
          break;
        }
        if (v == u) {
          if (c > state.counts.at(v)) {
            covered_by_simplicity = true;
            break;
          }
          scale_state *= intmath::binomial(state.counts.at(v), c);
        }
        projected.add(u, c);
      }
      if (covered_by_simplicity) continue;
      if (lookup(original_census, projected) == 0) {
        audit.checks.push_back(approx_check(
            mult_tag, j, projected.to_string() + "->" + key.to_string(),
            count, scale_state, 0, 1));
      }
    }
  }
  return audit;
}

DetachResult detach(const Hypergraph& graph, const NumberFunction& counts,
                    const DetachOptions& options) {
  for (VertexId v : graph.vertices()) {
    if (!counts.defined_on(v)) {
      throw DomainError("split counts undefined at vertex " +
                        std::to_string(v));
    }
  }
  for (const auto& [v, g] : counts.values()) {
    (void)g;
    if (!graph.has_vertex(v)) {
      throw DomainError("split counts name unknown vertex " +
                        std::to_string(v));
    }
  }
  if (auto violation = find_simplicity_violation(graph, counts)) {
    throw DomainError(
        "split counts are not simple: vertex " +
        std::to_string(violation->vertex) + " meets edge " +
        std::to_string(violation->edge) + " through " +
        std::to_string(violation->hinge_count) + " hinges but is allowed " +
        std::to_string(violation->bound));
  }

  std::vector<VertexId> order;
  for (VertexId v : graph.vertices()) {
    if (counts.at(v) >= 2) order.push_back(v);
  }
  if (options.seed != 0) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = order.size(); i > 1; --i) {
      std::size_t pick = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[pick]);
    }
  }

  DetachmentState state = initial_state(graph, counts);
  DetachResult result;
  for (VertexId alpha : order) {
    while (state.counts.at(alpha) >= 2) {
      DetachmentState next = detach_step(state, alpha);
      if (options.audit) {
        DetachStepRecord record;
        record.step = next.step;
        record.alpha = alpha;
        record.new_vertex = next.graph.vertices().back();
        record.step_audit = audit_step(state, next, alpha);
        record.cumulative_audit = audit_cumulative(graph, counts, next);
        result.audits.push_back(std::move(record));
      }
      state = std::move(next);
    }
  }
  result.detached = std::move(state.graph);
  result.psi = AmalgamationMap(std::move(state.origin));
  return result;
}

}  // namespace hdx
