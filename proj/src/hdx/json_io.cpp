#include "hdx/json_io.hpp"

#include <algorithm>

namespace hdx::json_io {

namespace {

std::string at(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

const json& field(const json& doc, const std::string& where,
                  const std::string& key) {
  if (!doc.is_object()) throw ParseError(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw ParseError(where, "missing required key \"" + key + "\"");
  }
  return *it;
}

long long integer(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where, "expected an integer");
  return value.get<long long>();
}

std::vector<long long> integer_array(const json& value,
                                     const std::string& where) {
  if (!value.is_array()) throw ParseError(where, "expected an array");
  std::vector<long long> out;
  for (std::size_t i = 0; i < value.size(); ++i) {
    out.push_back(integer(value[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError("byte " + std::to_string(err.byte), err.what());
  }
}

Hypergraph parse_hypergraph(const json& doc, const std::string& where) {
  std::vector<VertexId> vertices =
      integer_array(field(doc, where, "vertices"), at(where, "vertices"));
  int colors = 0;
  if (doc.contains("colors")) {
    colors = static_cast<int>(integer(doc["colors"], at(where, "colors")));
  }
  const json& edges_doc = field(doc, where, "edges");
  if (!edges_doc.is_array()) {
    throw ParseError(at(where, "edges"), "expected an array");
  }
  std::vector<Edge> edges;
  int max_color = 0;
  for (std::size_t i = 0; i < edges_doc.size(); ++i) {
    std::string edge_where = at(where, "edges[" + std::to_string(i) + "]");
    const json& edge_doc = edges_doc[i];
    Edge edge;
    edge.id = integer(field(edge_doc, edge_where, "id"), at(edge_where, "id"));
    if (edge_doc.contains("color")) {
      edge.color = static_cast<int>(
          integer(edge_doc["color"], at(edge_where, "color")));
      max_color = std::max(max_color, edge.color);
    }
    const json& hinges = field(edge_doc, edge_where, "hinges");
    if (!hinges.is_array() || hinges.empty()) {
      throw ParseError(at(edge_where, "hinges"),
                       "every edge needs a non-empty hinge list");
    }
    for (std::size_t o = 0; o < hinges.size(); ++o) {
      std::string hinge_where =
          at(edge_where, "hinges[" + std::to_string(o) + "]");
      edge.hinges.push_back(
          integer(field(hinges[o], hinge_where, "vertex"),
                  at(hinge_where, "vertex")));
    }
    edges.push_back(std::move(edge));
  }
  if (colors == 0) colors = max_color;
  try {
    return Hypergraph(std::move(vertices), std::move(edges), colors);
  } catch (const DomainError& err) {
    throw ParseError(where.empty() ? "hypergraph" : where, err.what());
  }
}

json emit_hypergraph(const Hypergraph& graph) {
  json doc;
  doc["vertices"] = graph.vertices();
  if (graph.colored()) doc["colors"] = graph.colors();
  json edges = json::array();
  for (const Edge& e : graph.edges()) {
    json edge;
    edge["id"] = e.id;
    if (e.color != 0) edge["color"] = e.color;
    json hinges = json::array();
    for (VertexId v : e.hinges) hinges.push_back(json{{"vertex", v}});
    edge["hinges"] = std::move(hinges);
    edges.push_back(std::move(edge));
  }
  doc["edges"] = std::move(edges);
  return doc;
}

NumberFunction parse_number_function(const json& doc,
                                     const std::string& where) {
  if (!doc.is_array()) throw ParseError(where, "expected [[vertex, count]...]");
  std::map<VertexId, int> values;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::string entry_where = where + "[" + std::to_string(i) + "]";
    if (!doc[i].is_array() || doc[i].size() != 2) {
      throw ParseError(entry_where, "expected a [vertex, count] pair");
    }
    VertexId v = integer(doc[i][0], entry_where + "[0]");
    long long g = integer(doc[i][1], entry_where + "[1]");
    if (values.count(v)) throw ParseError(entry_where, "vertex repeated");
    if (g < 1) throw ParseError(entry_where, "count must be >= 1");
    values[v] = static_cast<int>(g);
  }
  return NumberFunction(std::move(values));
}

json emit_number_function(const NumberFunction& counts) {
  json doc = json::array();
  for (const auto& [v, g] : counts.values()) {
    doc.push_back(json::array({v, g}));
  }
  return doc;
}

AmalgamationMap parse_psi(const json& doc, const std::string& where) {
  if (!doc.is_array()) {
    throw ParseError(where, "expected [[detached, original]...]");
  }
  std::map<VertexId, VertexId> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::string entry_where = where + "[" + std::to_string(i) + "]";
    if (!doc[i].is_array() || doc[i].size() != 2) {
      throw ParseError(entry_where, "expected a [detached, original] pair");
    }
    VertexId v = integer(doc[i][0], entry_where + "[0]");
    VertexId u = integer(doc[i][1], entry_where + "[1]");
    if (entries.count(v)) throw ParseError(entry_where, "vertex repeated");
    entries[v] = u;
  }
  return AmalgamationMap(std::move(entries));
}

json emit_psi(const AmalgamationMap& psi) {
  json doc = json::array();
  for (const auto& [v, u] : psi.entries()) {
    doc.push_back(json::array({v, u}));
  }
  return doc;
}

DesignSpec parse_design_spec(const json& doc, const std::string& where) {
  DesignSpec design;
  design.n = integer(field(doc, where, "n"), at(where, "n"));
  for (long long h : integer_array(field(doc, where, "H"), at(where, "H"))) {
    design.sizes.push_back(static_cast<int>(h));
  }
  design.lambdas =
      integer_array(field(doc, where, "lambda"), at(where, "lambda"));
  if (doc.contains("parts")) {
    design.parts = integer_array(doc["parts"], at(where, "parts"));
  }
  try {
    design.validate();
  } catch (const DomainError& err) {
    throw ParseError(where.empty() ? "design" : where, err.what());
  }
  return design;
}

json emit_design_spec(const DesignSpec& design) {
  json doc;
  doc["n"] = design.n;
  doc["H"] = design.sizes;
  doc["lambda"] = design.lambdas;
  if (design.parts) doc["parts"] = *design.parts;
  return doc;
}

FactorSpec parse_factor_spec(const json& doc, const std::string& where) {
  FactorSpec factors;
  factors.r = integer_array(field(doc, where, "R"), at(where, "R"));
  if (doc.contains("Q")) {
    factors.q = integer_array(doc["Q"], at(where, "Q"));
  }
  return factors;
}

json emit_factor_spec(const FactorSpec& factors) {
  json doc;
  doc["R"] = factors.r;
  if (factors.q) doc["Q"] = *factors.q;
  return doc;
}

FactorKind parse_factor_kind(const json& doc, const std::string& where) {
  if (!doc.is_string()) throw ParseError(where, "expected a kind string");
  std::string kind = doc.get<std::string>();
  if (kind == "R") return FactorKind::R;
  if (kind == "QR") return FactorKind::QR;
  if (kind == "almostR") return FactorKind::AlmostR;
  throw ParseError(where, "unknown kind \"" + kind + "\"");
}

json emit_matrix(const DistributionMatrix& matrix) {
  json rows = json::array();
  for (std::size_t i = 0; i < matrix.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < matrix.cols; ++j) {
      row.push_back(matrix.at(i, j));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

DistributionMatrix parse_matrix(const json& doc, const std::string& where) {
  if (!doc.is_array() || doc.empty()) {
    throw ParseError(where, "expected a non-empty array of rows");
  }
  DistributionMatrix matrix;
  matrix.rows = doc.size();
  for (std::size_t i = 0; i < doc.size(); ++i) {
    std::vector<long long> row =
        integer_array(doc[i], where + "[" + std::to_string(i) + "]");
    if (i == 0) {
      matrix.cols = row.size();
    } else if (row.size() != matrix.cols) {
      throw ParseError(where + "[" + std::to_string(i) + "]",
                       "ragged matrix rows");
    }
    matrix.values.insert(matrix.values.end(), row.begin(), row.end());
  }
  return matrix;
}

namespace {

json emit_parts(const std::vector<std::vector<VertexId>>& parts) {
  json doc = json::array();
  for (const auto& part : parts) doc.push_back(part);
  return doc;
}

std::vector<std::vector<VertexId>> parse_parts(const json& doc,
                                               const std::string& where) {
  if (!doc.is_array()) throw ParseError(where, "expected an array of parts");
  std::vector<std::vector<VertexId>> parts;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    parts.push_back(
        integer_array(doc[i], where + "[" + std::to_string(i) + "]"));
  }
  return parts;
}

}  // namespace

json emit_design_artifact(const Hypergraph& graph, const DesignSpec& design,
                          const std::optional<std::vector<std::vector<VertexId>>>&
                              parts) {
  json doc;
  doc["kind"] = "design";
  doc["design"] = emit_design_spec(design);
  doc["hypergraph"] = emit_hypergraph(graph);
  if (parts) doc["parts"] = emit_parts(*parts);
  return doc;
}

json emit_detachment_artifact(const Hypergraph& original,
                              const NumberFunction& counts,
                              std::uint64_t seed, const DetachResult& result) {
  json doc;
  doc["kind"] = "detachment";
  doc["original"] = emit_hypergraph(original);
  doc["g"] = emit_number_function(counts);
  doc["seed"] = seed;
  doc["hypergraph"] = emit_hypergraph(result.detached);
  doc["psi"] = emit_psi(result.psi);
  return doc;
}

json emit_factorization_artifact(const Factorization& factorization) {
  json doc;
  doc["kind"] = to_string(factorization.kind);
  doc["design"] = emit_design_spec(factorization.design);
  doc["factors"] = emit_factor_spec(factorization.factors);
  doc["matrix"] = emit_matrix(factorization.matrix);
  doc["hypergraph"] = emit_hypergraph(factorization.graph);
  if (factorization.parts) doc["parts"] = emit_parts(*factorization.parts);
  json degrees = json::array();
  for (int j = 1; j <= factorization.graph.colors(); ++j) {
    json row = json::array();
    for (VertexId v : factorization.graph.vertices()) {
      row.push_back(factorization.graph.degree_in_color(v, j));
    }
    degrees.push_back(std::move(row));
  }
  doc["factor_degrees"] = std::move(degrees);
  return doc;
}

json emit_report(const VerificationReport& report) {
  json doc;
  doc["subject"] = report.subject;
  doc["pass"] = report.pass();
  json checks = json::array();
  for (const CheckResult& check : report.checks) {
    json entry;
    entry["name"] = check.name;
    entry["pass"] = check.pass;
    entry["instances"] = check.instances;
    entry["failures"] = check.failures;
    checks.push_back(std::move(entry));
  }
  doc["checks"] = std::move(checks);
  return doc;
}

json emit_refusal(const Refusal& refusal) {
  json doc;
  doc["refused"] = true;
  doc["condition"] = refusal.condition;
  doc["detail"] = refusal.detail;
  if (!refusal.data.is_null()) doc["data"] = refusal.data;
  return doc;
}

namespace {

json emit_audit_checks(const StepAudit& audit) {
  json checks = json::array();
  for (const AuditCheck& check : audit.checks) {
    json entry;
    entry["tag"] = check.tag;
    if (check.color != 0) entry["color"] = check.color;
    entry["instance"] = check.instance;
    entry["lhs"] = json::array({check.lhs_num, check.lhs_den});
    entry["rhs"] = json::array({check.rhs_num, check.rhs_den});
    entry["bounds"] = json::array({check.lo, check.hi});
    entry["pass"] = check.pass;
    checks.push_back(std::move(entry));
  }
  return checks;
}

}  // namespace

json emit_audit_record(const DetachStepRecord& record) {
  json doc;
  doc["step"] = record.step;
  doc["alpha"] = record.alpha;
  doc["new_vertex"] = record.new_vertex;
  doc["pass"] =
      record.step_audit.passed() && record.cumulative_audit.passed();
  doc["step_checks"] = emit_audit_checks(record.step_audit);
  doc["cumulative_checks"] = emit_audit_checks(record.cumulative_audit);
  return doc;
}

json emit_split_certificate(const SplitCertificate& certificate) {
  json doc;
  doc["z"] = certificate.chosen;
  json violations = json::array();
  for (const SplitViolation& violation : certificate.violations) {
    json entry;
    entry["family"] = violation.family;
    entry["index"] = violation.index;
    entry["intersection"] = violation.intersection;
    entry["bounds"] = json::array({violation.lo, violation.hi});
    violations.push_back(std::move(entry));
  }
  doc["valid"] = certificate.valid();
  doc["violations"] = std::move(violations);
  return doc;
}

VerificationReport verify_artifact(const json& artifact) {
  std::string kind;
  const json& kind_doc = field(artifact, "", "kind");
  if (!kind_doc.is_string()) throw ParseError("kind", "expected a string");
  kind = kind_doc.get<std::string>();

  if (kind == "design") {
    Hypergraph graph =
        parse_hypergraph(field(artifact, "", "hypergraph"), "hypergraph");
    DesignSpec design = parse_design_spec(field(artifact, "", "design"),
                                          "design");
    std::optional<std::vector<std::vector<VertexId>>> parts;
    if (artifact.contains("parts")) {
      parts = parse_parts(artifact["parts"], "parts");
    }
    return verify_design(graph, design, parts);
  }
  if (kind == "detachment") {
    Hypergraph original =
        parse_hypergraph(field(artifact, "", "original"), "original");
    Hypergraph detached =
        parse_hypergraph(field(artifact, "", "hypergraph"), "hypergraph");
    NumberFunction counts =
        parse_number_function(field(artifact, "", "g"), "g");
    AmalgamationMap psi = parse_psi(field(artifact, "", "psi"), "psi");
    return verify_detachment(original, detached, psi, counts);
  }
  if (kind == "R" || kind == "QR" || kind == "almostR") {
    Factorization factorization;
    factorization.kind = parse_factor_kind(artifact["kind"], "kind");
    factorization.design =
        parse_design_spec(field(artifact, "", "design"), "design");
    factorization.factors =
        parse_factor_spec(field(artifact, "", "factors"), "factors");
    factorization.matrix = parse_matrix(field(artifact, "", "matrix"),
                                        "matrix");
    factorization.graph =
        parse_hypergraph(field(artifact, "", "hypergraph"), "hypergraph");
    if (artifact.contains("parts")) {
      factorization.parts = parse_parts(artifact["parts"], "parts");
    }
    if (factorization.kind != FactorKind::QR && factorization.factors.q) {
      // Almost artifacts carry the derived lower bounds; rebuild silently.
      if (factorization.kind == FactorKind::R) {
        throw ParseError("factors.Q", "regular factorizations carry no Q");
      }
    }
    return verify_factorization(factorization);
  }
  throw ParseError("kind", "unknown artifact kind \"" + kind + "\"");
}

}  // namespace hdx::json_io
