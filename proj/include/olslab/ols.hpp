#pragma once

#include <Eigen/Dense>

#include "olslab/types.hpp"

namespace olslab {

/// Columns whose projected residual falls below this (relative) threshold
/// are treated as spanned by the current selection.
inline constexpr double kRankTolerance = 1e-10;

/// Two scores tie iff their difference is <= kTieTolerance * (1 + max
/// score); the smallest index among tied candidates wins.
inline constexpr double kTieTolerance = 1e-9;

/// Residuals at or below this norm are treated as exactly zero.
inline constexpr double kResidualZero = 1e-12;

enum class SelectionRule { kProjection, kRatio };

const char* to_string(SelectionRule rule);
SelectionRule selection_rule_from_string(const std::string& name);

struct Selection {
  int index = 0;          // chosen column, 1-based
  Eigen::VectorXd scores; // per column; NaN marks excluded candidates
};

/// v minus its orthogonal projection onto span(A_J). J = {} is the
/// identity. Throws if the columns A_J are linearly dependent (rank
/// decided by singular values at kRankTolerance relative to the largest),
/// naming the dependent columns.
Eigen::VectorXd project_complement(const SensingMatrix& A, const SupportSet& J,
                                   const Eigen::VectorXd& v);

/// Greedy step that minimizes the post-projection residual energy
/// || (I - P_{S_prev + {i}}) y ||^2 over candidates i outside S_prev.
/// A candidate whose column already lies in span(A_{S_prev}) cannot reduce
/// the residual and is scored with the current residual energy.
Selection identify_projection(const SensingMatrix& A, const Eigen::VectorXd& y,
                              const SupportSet& S_prev);

/// Equivalent selection in ratio form: maximizes
/// |<r_prev, a_j>| / ||(I - P_{S_prev}) a_j|| over candidates j outside
/// S_prev, where r_prev is the current residual. Candidates with projected
/// column norm <= kRankTolerance score 0 (their numerator is necessarily 0
/// because the residual is orthogonal to the selected span).
Selection identify_ratio(const SensingMatrix& A, const Eigen::VectorXd& r_prev,
                         const SupportSet& S_prev);

/// Least-squares fit of y on the columns of S; entries off S are zero.
/// Solved through QR of A_S, never by normal equations. Throws if A_S is
/// rank deficient.
SparseSignal least_squares_on_support(const SensingMatrix& A,
                                      const Eigen::VectorXd& y,
                                      const SupportSet& S);

/// Runs exactly `sparsity` iterations of identify / augment / estimate /
/// update and returns the full trace. If the residual hits zero early the
/// algorithm keeps selecting (every remaining candidate ties and the
/// smallest unselected index wins); those iterations carry a
/// degenerate-selection flag.
OlsTrace run_ols(const SensingMatrix& A, const Eigen::VectorXd& y,
                 int sparsity, SelectionRule rule = SelectionRule::kProjection);

namespace detail {

/// Orthonormal basis of span(M) from column-pivoted QR; rank decided at
/// kRankTolerance. Returns an m x rank matrix (zero columns when rank 0).
Eigen::MatrixXd span_basis(const Eigen::MatrixXd& M);

/// Smallest index whose score is within tolerance of the best; NaN entries
/// are excluded. `minimize` selects argmin instead of argmax.
int select_extremal(const Eigen::VectorXd& scores, bool minimize);

}  // namespace detail

}  // namespace olslab
