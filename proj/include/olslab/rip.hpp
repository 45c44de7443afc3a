#pragma once

#include <cstdint>
#include <vector>

#include "olslab/types.hpp"

namespace olslab {

inline constexpr std::int64_t kDefaultEnumerationCap = 1'000'000;

/// C(n, k), saturating at cap + 1 so callers can test feasibility without
/// overflow.
std::int64_t binomial_capped(int n, int k, std::int64_t cap);

/// Exact isometry constant of the given order by lexicographic enumeration
/// of all column subsets and symmetric eigensolves of their Gram matrices.
/// delta is reported even when >= 1 (rip_violated set) so sweeps can
/// approach the degenerate regime. Throws if C(n, order) exceeds the cap.
RipEstimate exact_rip_constant(const SensingMatrix& A, int order,
                               std::int64_t enumeration_cap = kDefaultEnumerationCap);

/// Samples random unit vectors on random order-sized supports and measures
/// how far ||Ax||^2 escapes [1 - delta, 1 + delta]. Returns the worst
/// exceedance; <= 0 means the certificate is consistent with the
/// definition on every sample.
double rip_definition_spot_check(const SensingMatrix& A,
                                 const RipEstimate& estimate, int trials,
                                 std::uint64_t rng_seed);

/// Slack of the projected-matrix isometry sandwich
///   (1 - d) ||x_{S\J}||^2 <= ||(I - P_J) A x||^2 <= (1 + d) ||x_{S\J}||^2
/// with d the exact constant at order |S u J|. Both slacks are >= 0 (up to
/// rounding) whenever the sandwich holds.
struct RipSandwich {
  double lower_slack = 0.0;  // middle - lower bound
  double upper_slack = 0.0;  // upper bound - middle
  double delta = 0.0;
  int order = 0;
};
RipSandwich modified_rip_check(const SensingMatrix& A, const SparseSignal& x,
                               const SupportSet& J,
                               std::int64_t enumeration_cap = kDefaultEnumerationCap);

/// delta_1 .. delta_max_order; non-decreasing for any matrix (violations
/// beyond rounding indicate an oracle bug).
std::vector<double> monotonicity_audit(const SensingMatrix& A, int max_order,
                                       std::int64_t enumeration_cap = kDefaultEnumerationCap);

}  // namespace olslab
