#ifndef HDX_LAMINAR_HPP
#define HDX_LAMINAR_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hdx/errors.hpp"

namespace hdx {

// Family of subsets of a shared ground set, addressed by element ids.
// Laminar means every pair of member sets is nested or disjoint.
struct SetFamily {
  std::vector<std::vector<long long>> sets;
};

struct SplitViolation {
  std::string family;  // "A", "B", or "S" for the full ground set
  std::size_t index = 0;
  long long intersection = 0;
  long long lo = 0;
  long long hi = 0;
};

// Witness for a fair split: the chosen subset and any constraint that it
// fails. A valid certificate has no violations.
struct SplitCertificate {
  std::vector<long long> chosen;  // sorted element ids
  std::vector<SplitViolation> violations;
  bool valid() const { return violations.empty(); }
};

// True iff every pair of member sets is nested or disjoint. Throws if a
// member set contains an element outside the ground set.
bool is_laminar(const std::vector<long long>& ground, const SetFamily& family);

// Finds Z subset of `ground` with floor(|P|/n) <= |Z cap P| <= ceil(|P|/n)
// for every P in a, b, and the ground set itself. Both families must be
// laminar (hard error otherwise). The certificate is recomputed from the
// chosen set by direct counting, independent of the flow solver.
//
// Deterministic: identical inputs give identical output.
SplitCertificate fair_split(const std::vector<long long>& ground,
                            const SetFamily& a, const SetFamily& b, int n);

// Exhaustive oracle: scans subsets of `ground` in mask order and returns the
// first one meeting every constraint (including the ground-set constraint),
// or nullopt if none exists. Refuses ground sets larger than 22 elements.
std::optional<std::vector<long long>> brute_force_split(
    const std::vector<long long>& ground, const SetFamily& a,
    const SetFamily& b, int n);

}  // namespace hdx

#endif  // HDX_LAMINAR_HPP
