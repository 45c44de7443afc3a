#pragma once

#include <Eigen/Dense>

#include "olslab/types.hpp"

namespace olslab {

/// Symmetric Gram target with unit diagonal. Symmetry (1e-14) and the
/// exact-unit diagonal are enforced here; positive semidefiniteness is
/// checked where a factor is actually extracted (gram_to_matrix).
struct GramSpec {
  Eigen::MatrixXd entries;

  explicit GramSpec(Eigen::MatrixXd g);
  int size() const { return static_cast<int>(entries.rows()); }
};

/// A factor A with A'A = G (1e-10 entrywise), built from the symmetric
/// eigendecomposition: rows are sqrt(lambda_i) * u_i' over the eigenvalues
/// above 1e-12, so a singular G yields rank(G) rows. Any factor is
/// determined only up to left rotation; every downstream quantity (inner
/// products, projections, isometry constants) depends on G alone.
/// Throws if the smallest eigenvalue is below -1e-12.
SensingMatrix gram_to_matrix(const GramSpec& G);

struct ConstructedInstance {
  SensingMatrix matrix;
  SparseSignal signal;
  Eigen::MatrixXd gram;  // the target Gram, kept for Gram-level comparisons
};

/// Instance with isometry constant delta_star at order sparsity + 1 on
/// which greedy selection goes wrong whenever delta_star reaches the
/// recovery threshold: the decoy column 1 wins the first iteration. The
/// signal has support {2, ..., sparsity + 1} with unit entries. Three Gram
/// families cover sparsity 2, 3 and >= 4; each is positive semidefinite on
/// the whole admissible range delta_star in (0, 1). sparsity = 1 has no
/// such instance and is rejected.
ConstructedInstance counterexample(int sparsity, double delta_star);

/// Explicit (K+1) x (K+1) instance on which the off-support selection
/// score bound is attained with equality at the first iteration: both
/// sides equal 1 and the order-(K+1) isometry constant is 1/sqrt(K).
/// K = 1 degenerates to duplicate columns (constant 1, flagged violated).
ConstructedInstance tightness_example(int sparsity);

/// Sharp threshold C_K: greedy recovery of every K-sparse signal is
/// guaranteed when the order-(K+1) isometry constant is below this value,
/// and a failing instance exists at or above it.
///   K = 1: 1, K = 2: 2/3, K = 3: 4/7, K >= 4: 1/sqrt(K).
double recovery_threshold(int sparsity);

}  // namespace olslab
