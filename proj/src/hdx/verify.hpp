#ifndef HDX_VERIFY_HPP
#define HDX_VERIFY_HPP

#include <string>
#include <vector>

#include "hdx/design.hpp"
#include "hdx/hypergraph.hpp"

// Solver-free validation of designs, detachments, and factorizations.
// Everything here recounts from the raw incidence maps; nothing calls the
// splitting engine or the matrix solver.

namespace hdx {

struct CheckResult {
  std::string name;
  bool pass = false;
  long long instances = 0;             // constraint instances examined
  std::vector<std::string> failures;   // one entry per failed instance,
                                       // with the exact integers involved
};

struct VerificationReport {
  std::string subject;
  std::vector<CheckResult> checks;
  bool pass() const;
};

// Exhaustive multiplicity census against the design parameters: every
// required vertex subset carries exactly lambda_j edges and nothing else is
// realized. For partite specs `parts` must give the vertex partition.
VerificationReport verify_design(
    const Hypergraph& graph, const DesignSpec& design,
    const std::optional<std::vector<std::vector<VertexId>>>& parts = {});

// Checks the coloring partitions the edges, every factor meets its degree
// bounds at every vertex, and the underlying hypergraph is the requested
// design.
VerificationReport verify_factorization(const Factorization& factorization);

// Checks psi against the split counts, simplicity, hinge-level agreement
// with the amalgamation, and the fair-share bounds on degrees and
// multiplicities (overall and per color class).
VerificationReport verify_detachment(const Hypergraph& original,
                                     const Hypergraph& detached,
                                     const AmalgamationMap& psi,
                                     const NumberFunction& counts);

}  // namespace hdx

#endif  // HDX_VERIFY_HPP
