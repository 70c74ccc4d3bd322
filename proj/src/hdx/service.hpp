#ifndef HDX_SERVICE_HPP
#define HDX_SERVICE_HPP

#include <string>

// Request/response operations behind the shared-library surface. Each call
// takes a JSON request and produces a JSON payload; refusals and failed
// verifications are reported through the status, with details in `payload`
// or `error`. Malformed input raises ParseError/DomainError.

namespace hdx::service {

enum Status {
  kOk = 0,
  kVerificationFailed = 1,
  kInfeasible = 2,
};

struct Outcome {
  Status status = kOk;
  std::string payload;      // artifact or report JSON
  std::string error;        // structured refusal JSON when status != kOk
  std::string audit_lines;  // JSON lines, detach with audit only
};

// { "design": {n,H,lambda,parts?} } -> design artifact
Outcome generate(const std::string& request);

// { "ground": [...], "familyA": [[...]...], "familyB": [[...]...], "n": k }
// -> { "z": [...], "certificate": {...} }
Outcome split(const std::string& request);

// { "hypergraph": {...}, "g": [[v,c]...], "seed"?, "audit"? }
// -> detachment artifact (+ audit lines)
Outcome detach(const std::string& request);

// { "design": {...}, "factors": {"R":[...],"Q"?}, "kind": "R"|"QR"|"almostR",
//   "seed"? } -> factorization artifact, or kInfeasible with refusal
Outcome factorize(const std::string& request);

// any self-describing artifact -> verification report; kVerificationFailed
// when a check fails
Outcome verify(const std::string& artifact);

}  // namespace hdx::service

#endif  // HDX_SERVICE_HPP
