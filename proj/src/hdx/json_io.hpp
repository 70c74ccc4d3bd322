#ifndef HDX_JSON_IO_HPP
#define HDX_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "hdx/design.hpp"
#include "hdx/detach.hpp"
#include "hdx/hypergraph.hpp"
#include "hdx/laminar.hpp"
#include "hdx/verify.hpp"

// JSON interchange for every artifact the library produces or consumes.
// Emission is canonical: object keys are sorted, vertices and edges appear
// in id order, hinges in ordinal order, so parse-then-emit is the identity
// on canonical documents and equal values serialize to equal bytes.

namespace hdx::json_io {

using nlohmann::json;

// { "vertices": [ids], "colors": k?, "edges": [ { "id", "color"?, "hinges":
// [ {"vertex": id}, ... ] } ] }. Hinge ids are (edge id, position in the
// hinge list).
Hypergraph parse_hypergraph(const json& doc, const std::string& where = "");
json emit_hypergraph(const Hypergraph& graph);

// [[vertex, count], ...]
NumberFunction parse_number_function(const json& doc,
                                     const std::string& where = "");
json emit_number_function(const NumberFunction& counts);

// [[detached, original], ...]
AmalgamationMap parse_psi(const json& doc, const std::string& where = "");
json emit_psi(const AmalgamationMap& psi);

// { "n", "H": [sizes], "lambda": [multiplicities], "parts": [p1..pn]? }
DesignSpec parse_design_spec(const json& doc, const std::string& where = "");
json emit_design_spec(const DesignSpec& design);

// { "R": [...], "Q": [...]? }
FactorSpec parse_factor_spec(const json& doc, const std::string& where = "");
json emit_factor_spec(const FactorSpec& factors);

FactorKind parse_factor_kind(const json& doc, const std::string& where = "");

json emit_matrix(const DistributionMatrix& matrix);
DistributionMatrix parse_matrix(const json& doc, const std::string& where = "");

// Self-describing artifacts; "kind" selects the verifier.
json emit_design_artifact(const Hypergraph& graph, const DesignSpec& design,
                          const std::optional<std::vector<std::vector<VertexId>>>&
                              parts);
json emit_detachment_artifact(const Hypergraph& original,
                              const NumberFunction& counts,
                              std::uint64_t seed, const DetachResult& result);
json emit_factorization_artifact(const Factorization& factorization);

json emit_report(const VerificationReport& report);
json emit_refusal(const Refusal& refusal);
json emit_audit_record(const DetachStepRecord& record);

json emit_split_certificate(const SplitCertificate& certificate);

// Reads any artifact and runs the matching verifier.
VerificationReport verify_artifact(const json& artifact);

json parse_text(const std::string& text);

}  // namespace hdx::json_io

#endif  // HDX_JSON_IO_HPP
