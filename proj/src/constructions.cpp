#include "olslab/constructions.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace olslab {

namespace {

constexpr double kPsdTolerance = 1e-12;

SparseSignal ones_off_first(int sparsity) {
  Eigen::VectorXd x = Eigen::VectorXd::Ones(sparsity + 1);
  x(0) = 0.0;
  return SparseSignal::from_values(std::move(x));
}

Eigen::MatrixXd counterexample_gram(int sparsity, double d) {
  if (sparsity == 2) {
    Eigen::MatrixXd g(3, 3);
    g << 1.0, d / 2, d / 2,
         d / 2, 1.0, -d / 2,
         d / 2, -d / 2, 1.0;
    return g;
  }
  if (sparsity == 3) {
    Eigen::MatrixXd g(4, 4);
    g << 1.0, d / 2, d / 2, d / 2,
         d / 2, 1.0, -d / 8, -d / 8,
         d / 2, -d / 8, 1.0, -d / 8,
         d / 2, -d / 8, -d / 8, 1.0;
    return g;
  }
  // sparsity >= 4: arrowhead coupling of the decoy column to an
  // orthonormal block.
  const int n = sparsity + 1;
  const double c = d / std::sqrt(static_cast<double>(sparsity));
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (int j = 1; j < n; ++j) {
    g(0, j) = c;
    g(j, 0) = c;
  }
  return g;
}

}  // namespace

GramSpec::GramSpec(Eigen::MatrixXd g) : entries(std::move(g)) {
  if (entries.rows() < 1 || entries.rows() != entries.cols())
    throw std::invalid_argument("GramSpec: matrix must be square, size >= 1");
  for (int i = 0; i < entries.rows(); ++i) {
    if (entries(i, i) != 1.0)
      throw std::invalid_argument("GramSpec: diagonal entry " +
                                  std::to_string(i + 1) + " is not 1");
    for (int j = i + 1; j < entries.cols(); ++j)
      if (std::abs(entries(i, j) - entries(j, i)) > 1e-14)
        throw std::invalid_argument("GramSpec: not symmetric at (" +
                                    std::to_string(i + 1) + ", " +
                                    std::to_string(j + 1) + ")");
  }
}

SensingMatrix gram_to_matrix(const GramSpec& G) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G.entries);
  const Eigen::VectorXd& evals = es.eigenvalues();  // ascending
  if (evals(0) < -kPsdTolerance)
    throw std::invalid_argument(
        "gram_to_matrix: not positive semidefinite (min eigenvalue " +
        std::to_string(evals(0)) + "); no factor exists");

  const int n = G.size();
  std::vector<int> kept;
  for (int i = n - 1; i >= 0; --i)  // descending eigenvalue order
    if (evals(i) > kPsdTolerance) kept.push_back(i);
  if (kept.empty())
    throw std::invalid_argument("gram_to_matrix: Gram matrix is numerically zero");

  Eigen::MatrixXd factor(static_cast<int>(kept.size()), n);
  for (std::size_t r = 0; r < kept.size(); ++r)
    factor.row(static_cast<int>(r)) =
        std::sqrt(evals(kept[r])) * es.eigenvectors().col(kept[r]).transpose();
  return SensingMatrix(std::move(factor));
}

ConstructedInstance counterexample(int sparsity, double delta_star) {
  if (sparsity == 1)
    throw std::invalid_argument(
        "counterexample: no failing instance exists for sparsity 1 (the "
        "threshold is 1 and admissible constants stay below it)");
  if (sparsity < 1)
    throw std::invalid_argument("counterexample: sparsity must be >= 2");
  if (!(delta_star > 0.0 && delta_star < 1.0))
    throw std::invalid_argument("counterexample: delta_star must lie in (0, 1)");

  ConstructedInstance out;
  out.gram = counterexample_gram(sparsity, delta_star);
  out.matrix = gram_to_matrix(GramSpec(out.gram));
  out.signal = ones_off_first(sparsity);
  return out;
}

ConstructedInstance tightness_example(int sparsity) {
  if (sparsity < 1)
    throw std::invalid_argument("tightness_example: sparsity must be >= 1");
  const int k = sparsity;
  const int n = k + 1;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a(0, 0) = std::sqrt(static_cast<double>(k - 1) / k);
  for (int i = 1; i < n; ++i) {
    a(i, 0) = 1.0 / k;
    a(i, i) = 1.0;
  }
  ConstructedInstance out;
  out.matrix = SensingMatrix(a);
  out.signal = ones_off_first(k);
  out.gram = a.transpose() * a;
  return out;
}

double recovery_threshold(int sparsity) {
  if (sparsity < 1)
    throw std::invalid_argument("recovery_threshold: sparsity must be >= 1");
  switch (sparsity) {
    case 1:
      return 1.0;
    case 2:
      return 1.0 / std::sqrt(2.25);   // = 2/3
    case 3:
      return 1.0 / std::sqrt(3.0625); // = 4/7
    default:
      return 1.0 / std::sqrt(static_cast<double>(sparsity));
  }
}

}  // namespace olslab
