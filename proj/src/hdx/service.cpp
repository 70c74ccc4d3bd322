#include "hdx/service.hpp"

#include "hdx/json_io.hpp"

namespace hdx::service {

namespace {

using json_io::json;

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::uint64_t seed_of(const json& request) {
  if (!request.contains("seed")) return 0;
  if (!request["seed"].is_number_unsigned() &&
      !request["seed"].is_number_integer()) {
    throw ParseError("seed", "expected an integer");
  }
  return request["seed"].get<std::uint64_t>();
}

}  // namespace

Outcome generate(const std::string& request_text) {
  json request = json_io::parse_text(request_text);
  DesignSpec design = json_io::parse_design_spec(
      request.contains("design") ? request["design"] : request, "design");
  Outcome outcome;
  if (design.partite()) {
    PartiteDesign built = build_partite_design(design);
    outcome.payload =
        dump(json_io::emit_design_artifact(built.graph, design, built.parts));
  } else {
    Hypergraph built = build_design(design);
    outcome.payload =
        dump(json_io::emit_design_artifact(built, design, std::nullopt));
  }
  return outcome;
}

Outcome split(const std::string& request_text) {
  json request = json_io::parse_text(request_text);
  if (!request.contains("ground") || !request["ground"].is_array()) {
    throw ParseError("ground", "expected an array of element ids");
  }
  std::vector<long long> ground;
  for (const auto& value : request["ground"]) {
    if (!value.is_number_integer()) {
      throw ParseError("ground", "expected integers");
    }
    ground.push_back(value.get<long long>());
  }
  auto family = [&](const char* key) {
    SetFamily out;
    if (!request.contains(key)) return out;
    if (!request[key].is_array()) {
      throw ParseError(key, "expected an array of sets");
    }
    for (const auto& set_doc : request[key]) {
      if (!set_doc.is_array()) throw ParseError(key, "expected sets");
      std::vector<long long> set;
      for (const auto& value : set_doc) {
        if (!value.is_number_integer()) {
          throw ParseError(key, "expected integers");
        }
        set.push_back(value.get<long long>());
      }
      out.sets.push_back(std::move(set));
    }
    return out;
  };
  SetFamily a = family("familyA");
  SetFamily b = family("familyB");
  if (!request.contains("n") || !request["n"].is_number_integer()) {
    throw ParseError("n", "expected an integer");
  }
  int n = request["n"].get<int>();

  SplitCertificate certificate = fair_split(ground, a, b, n);
  Outcome outcome;
  outcome.payload = dump(json_io::emit_split_certificate(certificate));
  return outcome;
}

Outcome detach(const std::string& request_text) {
  json request = json_io::parse_text(request_text);
  Hypergraph graph = json_io::parse_hypergraph(
      json_io::json(request.contains("hypergraph") ? request["hypergraph"]
                                                   : request),
      "hypergraph");
  NumberFunction counts = json_io::parse_number_function(
      request.contains("g") ? request["g"] : json::array(), "g");
  DetachOptions options;
  options.seed = seed_of(request);
  options.audit = request.value("audit", false);

  DetachResult result = hdx::detach(graph, counts, options);
  Outcome outcome;
  outcome.payload = dump(json_io::emit_detachment_artifact(
      graph, counts, options.seed, result));
  for (const DetachStepRecord& record : result.audits) {
    outcome.audit_lines += json_io::emit_audit_record(record).dump() + "\n";
  }
  return outcome;
}

Outcome factorize(const std::string& request_text) {
  json request = json_io::parse_text(request_text);
  DesignSpec design =
      json_io::parse_design_spec(request.contains("design") ? request["design"]
                                                            : request,
                                 "design");
  FactorSpec factors = json_io::parse_factor_spec(
      request.contains("factors") ? request["factors"] : request, "factors");
  FactorKind kind = FactorKind::R;
  if (request.contains("kind")) {
    kind = json_io::parse_factor_kind(request["kind"], "kind");
  } else if (request.value("almost", false)) {
    kind = FactorKind::AlmostR;
  } else if (factors.q) {
    kind = FactorKind::QR;
  }

  FactorizeResult result = hdx::factorize(design, factors, kind, seed_of(request));
  Outcome outcome;
  if (const Refusal* refusal = std::get_if<Refusal>(&result)) {
    outcome.status = kInfeasible;
    outcome.error = dump(json_io::emit_refusal(*refusal));
    return outcome;
  }
  outcome.payload = dump(
      json_io::emit_factorization_artifact(std::get<Factorization>(result)));
  return outcome;
}

Outcome verify(const std::string& artifact_text) {
  json artifact = json_io::parse_text(artifact_text);
  VerificationReport report = json_io::verify_artifact(artifact);
  Outcome outcome;
  outcome.status = report.pass() ? kOk : kVerificationFailed;
  outcome.payload = dump(json_io::emit_report(report));
  return outcome;
}

}  // namespace hdx::service
