#ifndef HDX_DETACH_HPP
#define HDX_DETACH_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hdx/hypergraph.hpp"
#include "hdx/laminar.hpp"

namespace hdx {

// One audited condition instance, with the exact integers behind it. The
// fair-share comparison lhs_num/lhs_den ~ rhs_num/rhs_den is evaluated as
// lo * lhs_den <= lhs_num <= hi * lhs_den where lo/hi bracket the right
// side. Equality conditions use lo == hi.
struct AuditCheck {
  std::string tag;       // B1..B5, C1..C5, D1, D2, E1, E2, simple
  int color = 0;         // color class for C*/E* tags, 0 otherwise
  std::string instance;  // which vertex / multiset the check is about
  long long lhs_num = 0;
  long long lhs_den = 1;
  long long rhs_num = 0;
  long long rhs_den = 1;
  long long lo = 0;
  long long hi = 0;
  bool pass = false;
};

struct StepAudit {
  std::vector<AuditCheck> checks;
  bool passed() const;
  std::size_t failure_count() const;
};

// Snapshot of the splitting process: the current hypergraph, the remaining
// split counts, and the map from every current vertex to its original
// ancestor.
struct DetachmentState {
  Hypergraph graph;
  NumberFunction counts;
  std::map<VertexId, VertexId> origin;
  int step = 0;
};

// The two laminar families steering one split of `alpha`, over the ground
// set of alpha's hinges. `degree_family` holds the whole hinge set, the
// per-color hinge sets, and the per-edge hinge sets; `group_family` holds
// the hinge sets of edges grouped by their vertex distribution (and by
// distribution and color). Element ids are indices into `ground`.
struct SplitFamilies {
  std::vector<HingeId> ground;
  SetFamily degree_family;
  SetFamily group_family;
};

SplitFamilies build_split_families(const Hypergraph& graph, VertexId alpha);

DetachmentState initial_state(const Hypergraph& graph,
                              const NumberFunction& counts);

// Splits a new vertex off `alpha`, re-seating a fair share of alpha's
// hinges onto it. Requires counts(alpha) >= 2.
DetachmentState detach_step(const DetachmentState& state, VertexId alpha);

// Per-step conditions relating `next` to `prev`: degree shares at alpha and
// the new vertex (B1, B2), no doubled hinge on the new vertex (B3), and
// multiplicity shares for every realized edge group (B4, B5); C1..C5 are
// the same conditions within each color class.
StepAudit audit_step(const DetachmentState& prev, const DetachmentState& next,
                     VertexId alpha);

// Cumulative conditions relating a state to the starting hypergraph:
// degree shares (D1), multiplicity shares with binomial weights over every
// realized multiset and its expansions (D2), their per-color analogues
// (E1, E2), and simplicity of the current state.
StepAudit audit_cumulative(const Hypergraph& original,
                           const NumberFunction& counts,
                           const DetachmentState& state);

struct DetachOptions {
  std::uint64_t seed = 0;  // 0 = split vertices in ascending id order
  bool audit = false;
};

struct DetachStepRecord {
  int step = 0;
  VertexId alpha = 0;
  VertexId new_vertex = 0;
  StepAudit step_audit;
  StepAudit cumulative_audit;
};

struct DetachResult {
  Hypergraph detached;
  AmalgamationMap psi;  // detached vertex -> original vertex
  std::vector<DetachStepRecord> audits;  // filled when options.audit is set
};

// Splits every vertex v into counts(v) vertices so that degrees and edge
// multiplicities are shared fairly, overall and per color class. `counts`
// must be defined exactly on the vertices of `graph` and be simple for it.
// The result has no edge meeting a vertex through more than one hinge.
DetachResult detach(const Hypergraph& graph, const NumberFunction& counts,
                    const DetachOptions& options = {});

}  // namespace hdx

#endif  // HDX_DETACH_HPP
