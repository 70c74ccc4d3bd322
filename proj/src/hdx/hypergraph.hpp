#ifndef HDX_HYPERGRAPH_HPP
#define HDX_HYPERGRAPH_HPP

#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hdx/errors.hpp"

namespace hdx {

using VertexId = long long;
using EdgeId = long long;

// A hinge is the atomic incidence between one vertex and one edge. Hinge
// identity is (edge id, ordinal within the edge) and is stable across
// amalgamation and detachment; only the vertex a hinge sits on changes.
struct HingeId {
  EdgeId edge = 0;
  int ordinal = 0;
  auto operator<=>(const HingeId&) const = default;
};

// Multiset of vertex ids in canonical form: entries sorted by vertex id,
// multiplicities >= 1.
class VertexMultiset {
 public:
  VertexMultiset() = default;
  explicit VertexMultiset(std::span<const VertexId> elements);

  static VertexMultiset repeated(VertexId v, long long count);

  void add(VertexId v, long long count = 1);

  long long count(VertexId v) const;
  // |U| = sum of multiplicities.
  long long size() const;
  bool empty() const { return entries_.empty(); }
  const std::vector<std::pair<VertexId, long long>>& entries() const {
    return entries_;
  }

  // Multiset union (multiplicities add).
  VertexMultiset merged(const VertexMultiset& other) const;
  // Copy with all occurrences of v removed.
  VertexMultiset without(VertexId v) const;

  std::string to_string() const;  // e.g. "{1^2,4}"

  auto operator<=>(const VertexMultiset&) const = default;

 private:
  std::vector<std::pair<VertexId, long long>> entries_;
};

struct Edge {
  EdgeId id = 0;
  int color = 0;  // 0 = uncolored, otherwise 1..k
  std::vector<VertexId> hinges;  // vertex under each hinge, by ordinal
  bool operator==(const Edge&) const = default;
};

// Hypergraph in the hinge model: vertices, edges, and hinges with total
// hinge->vertex and surjective hinge->edge incidence. An edge may attach to
// the same vertex through several hinges, so edge size (distinct incident
// vertices) and hinge count are different quantities. Instances are
// immutable after construction.
class Hypergraph {
 public:
  Hypergraph() = default;

  // `colors` is the number of color classes k; 0 means uncolored. When
  // k > 0 every edge must carry a color in 1..k, when k == 0 none may.
  Hypergraph(std::vector<VertexId> vertices, std::vector<Edge> edges,
             int colors = 0);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  int colors() const { return colors_; }
  bool colored() const { return colors_ > 0; }

  bool has_vertex(VertexId v) const;
  bool has_edge(EdgeId e) const;
  const Edge& edge(EdgeId e) const;
  long long hinge_count() const { return hinge_count_; }

  // Number of hinges incident with v.
  long long degree(VertexId v) const;
  // Number of hinges incident with v within color class j.
  long long degree_in_color(VertexId v, int j) const;
  // Number of distinct vertices incident with e (not the hinge count).
  int edge_size(EdgeId e) const;
  // Hinge distribution of e over vertices, as a multiset.
  VertexMultiset edge_multiset(EdgeId e) const;

  // Edges whose hinge distribution equals u exactly. Unknown vertices in u
  // simply yield no matches.
  std::vector<EdgeId> edges_joining(const VertexMultiset& u) const;
  long long multiplicity(const VertexMultiset& u) const;

  // H(v): all hinges on v, ordered by (edge id, ordinal).
  std::vector<HingeId> hinge_set(VertexId v) const;
  // H(v,e): hinges incident with both v and e.
  std::vector<HingeId> hinge_set(VertexId v, EdgeId e) const;
  // Hinges on u carried by edges whose distribution is u^t merged with
  // rest; the per-group hinge sets of the splitting step.
  std::vector<HingeId> hinges_joining(VertexId u, long long t,
                                      const VertexMultiset& rest) const;

  // Spanning sub-hypergraph of the color-j edges. Requires a coloring.
  Hypergraph color_class(int j) const;

  // Multiset -> multiplicity over all edges (color = 0) or over one color
  // class. Keys are exactly the realized multisets.
  std::map<VertexMultiset, long long> census(int color = 0) const;

  bool operator==(const Hypergraph&) const = default;

 private:
  std::vector<VertexId> vertices_;  // sorted, unique
  std::vector<Edge> edges_;         // sorted by id
  int colors_ = 0;
  long long hinge_count_ = 0;
  std::map<VertexId, std::vector<HingeId>> incidence_;  // H(v), precomputed

  const Edge* find_edge(EdgeId e) const;
  void require_vertex(VertexId v) const;
};

// Map from vertices to positive split counts.
class NumberFunction {
 public:
  NumberFunction() = default;
  explicit NumberFunction(std::map<VertexId, int> values);

  int at(VertexId v) const;
  bool defined_on(VertexId v) const { return values_.count(v) > 0; }
  const std::map<VertexId, int>& values() const { return values_; }
  // Sum of (g(v) - 1): the total number of splits a detachment performs.
  long long pending_splits() const;

  bool operator==(const NumberFunction&) const = default;

 private:
  std::map<VertexId, int> values_;
};

// Surjection from detached vertex ids onto amalgamated vertex ids.
class AmalgamationMap {
 public:
  AmalgamationMap() = default;
  explicit AmalgamationMap(std::map<VertexId, VertexId> to_target);

  VertexId target(VertexId source) const;
  const std::map<VertexId, VertexId>& entries() const { return to_target_; }
  // g(w) = size of the preimage of w.
  NumberFunction induced_number_function() const;
  std::map<VertexId, std::vector<VertexId>> fibers() const;

  bool operator==(const AmalgamationMap&) const = default;

 private:
  std::map<VertexId, VertexId> to_target_;
};

// True iff every (vertex, edge) hinge set has size at most g(v). With g == 1
// this is plain simplicity (no edge meets a vertex twice).
bool is_simple_function(const Hypergraph& g, const NumberFunction& f);
// First (vertex, edge, hinge-set size) violating simplicity, if any.
struct SimplicityViolation {
  VertexId vertex;
  EdgeId edge;
  long long hinge_count;
  int bound;
};
std::optional<SimplicityViolation> find_simplicity_violation(
    const Hypergraph& g, const NumberFunction& f);

// Image hypergraph under psi: same edges and hinges, each hinge re-seated on
// the image of its vertex. The vertex set becomes the (sorted) image of psi.
Hypergraph amalgamate(const Hypergraph& f, const AmalgamationMap& psi);

}  // namespace hdx

#endif  // HDX_HYPERGRAPH_HPP
