#include "olslab/rip.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "olslab/ols.hpp"
#include "olslab/rng.hpp"

namespace olslab {

namespace {

// Advances a k-combination of {1..n} in lexicographic order; false when
// exhausted.
bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  for (int i = k - 1; i >= 0; --i) {
    if (comb[static_cast<std::size_t>(i)] < n - (k - 1 - i)) {
      ++comb[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

std::int64_t binomial_capped(int n, int k, std::int64_t cap) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact: numerator is divisible at each step
    if (c > cap) return cap + 1;
  }
  return c;
}

RipEstimate exact_rip_constant(const SensingMatrix& A, int order,
                               std::int64_t enumeration_cap) {
  const int n = A.cols();
  if (order < 1 || order > n)
    throw std::invalid_argument("exact_rip_constant: order must be in [1, n]");
  if (binomial_capped(n, order, enumeration_cap) > enumeration_cap)
    throw std::invalid_argument(
        "exact_rip_constant: C(" + std::to_string(n) + ", " +
        std::to_string(order) + ") exceeds the enumeration cap of " +
        std::to_string(enumeration_cap) + "; use a smaller instance");

  double min_eig = std::numeric_limits<double>::infinity();
  double max_eig = -std::numeric_limits<double>::infinity();
  std::vector<int> min_witness, max_witness;

  std::vector<int> comb(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) comb[static_cast<std::size_t>(i)] = i + 1;
  Eigen::MatrixXd sub(A.rows(), order);
  do {
    for (int i = 0; i < order; ++i)
      sub.col(i) = A.entries.col(comb[static_cast<std::size_t>(i)] - 1);
    const Eigen::MatrixXd gram = sub.transpose() * sub;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                      Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(order - 1);
    // Strict improvement keeps the lexicographically first witness.
    if (lo < min_eig) {
      min_eig = lo;
      min_witness = comb;
    }
    if (hi > max_eig) {
      max_eig = hi;
      max_witness = comb;
    }
  } while (next_combination(comb, n));

  RipEstimate est;
  est.order = order;
  est.lambda_min = min_eig;
  est.lambda_max = max_eig;
  const double from_below = 1.0 - min_eig;
  const double from_above = max_eig - 1.0;
  est.delta = std::max(from_below, from_above);
  if (from_above > from_below)
    est.witness_subset = SupportSet(max_witness);
  else if (from_below > from_above)
    est.witness_subset = SupportSet(min_witness);
  else
    est.witness_subset = SupportSet(std::min(min_witness, max_witness));
  est.rip_violated = !(est.delta < 1.0);
  return est;
}

double rip_definition_spot_check(const SensingMatrix& A,
                                 const RipEstimate& estimate, int trials,
                                 std::uint64_t rng_seed) {
  if (trials < 1)
    throw std::invalid_argument("rip_definition_spot_check: trials must be >= 1");
  auto gen = rng::make_stream(rng_seed);
  const int n = A.cols();
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const std::vector<int> subset = rng::sample_indices(gen, n, estimate.order);
    Eigen::VectorXd coef(estimate.order);
    do {
      for (int i = 0; i < estimate.order; ++i) coef(i) = rng::standard_normal(gen);
    } while (coef.norm() <= kZeroThreshold);
    coef /= coef.norm();

    Eigen::VectorXd image = Eigen::VectorXd::Zero(A.rows());
    for (int i = 0; i < estimate.order; ++i)
      image += coef(i) * A.entries.col(subset[static_cast<std::size_t>(i)] - 1);
    const double energy = image.squaredNorm();
    const double exceed = std::max(energy - (1.0 + estimate.delta),
                                   (1.0 - estimate.delta) - energy);
    worst = std::max(worst, exceed);
  }
  return worst;
}

RipSandwich modified_rip_check(const SensingMatrix& A, const SparseSignal& x,
                               const SupportSet& J,
                               std::int64_t enumeration_cap) {
  const SupportSet joint = x.support.set_union(J);
  RipSandwich result;
  result.order = joint.size();
  if (joint.empty()) return result;  // zero signal, empty J: all terms vanish

  const RipEstimate est = exact_rip_constant(A, joint.size(), enumeration_cap);
  if (est.rip_violated)
    throw std::invalid_argument(
        "modified_rip_check: isometry violated at order " +
        std::to_string(joint.size()) + " (delta = " + std::to_string(est.delta) +
        ")");
  result.delta = est.delta;

  const double middle =
      project_complement(A, J, A.entries * x.values).squaredNorm();
  const double rest = restrict_signal(x, x.support.set_difference(J)).squaredNorm();
  result.lower_slack = middle - (1.0 - est.delta) * rest;
  result.upper_slack = (1.0 + est.delta) * rest - middle;
  return result;
}

std::vector<double> monotonicity_audit(const SensingMatrix& A, int max_order,
                                       std::int64_t enumeration_cap) {
  if (max_order < 1 || max_order > A.cols())
    throw std::invalid_argument("monotonicity_audit: max_order must be in [1, n]");
  std::vector<double> deltas;
  deltas.reserve(static_cast<std::size_t>(max_order));
  for (int order = 1; order <= max_order; ++order)
    deltas.push_back(exact_rip_constant(A, order, enumeration_cap).delta);
  return deltas;
}

}  // namespace olslab
