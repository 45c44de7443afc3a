#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace olslab {

// An entry counts as nonzero iff |value| > kZeroThreshold. Exact
// constructions produce exact zeros; the slack absorbs rounding in signals
// assembled from least-squares solves.
inline constexpr double kZeroThreshold = 1e-12;

/// Ordered set of distinct 1-based column indices. Insertion order is
/// preserved, so a support also records selection history.
class SupportSet {
 public:
  SupportSet() = default;
  explicit SupportSet(std::vector<int> indices);

  /// {1, ..., n}
  static SupportSet full(int n);

  bool contains(int index) const;

  /// Appends a new index; throws on duplicates or indices < 1.
  void insert(int index);

  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<int>& indices() const { return indices_; }

  /// Elements of *this, then elements of other not already present.
  SupportSet set_union(const SupportSet& other) const;
  /// Elements of *this not in other, in this set's order.
  SupportSet set_difference(const SupportSet& other) const;
  SupportSet set_intersection(const SupportSet& other) const;

  bool subset_of(const SupportSet& other) const;

  /// Order-insensitive equality.
  bool same_elements(const SupportSet& other) const;

  /// Copy with indices in ascending order.
  SupportSet sorted() const;

  std::string to_string() const;

 private:
  std::vector<int> indices_;
};

/// Measurement operator. Columns are expected to have unit Euclidean norm;
/// validate_sensing_matrix checks that against column_norm_tolerance.
struct SensingMatrix {
  Eigen::MatrixXd entries;
  double column_norm_tolerance = 1e-10;

  SensingMatrix() = default;
  explicit SensingMatrix(Eigen::MatrixXd m, double norm_tolerance = 1e-10);

  int rows() const { return static_cast<int>(entries.rows()); }
  int cols() const { return static_cast<int>(entries.cols()); }

  /// Single column, 1-based.
  Eigen::VectorXd column(int index) const;

  /// Submatrix with the columns indexed by J, in J's order.
  Eigen::MatrixXd columns(const SupportSet& J) const;
};

/// Returns the list of violated invariants (empty means valid). Off-norm
/// columns are reported, one entry per column; non-finite entries throw.
std::vector<std::string> validate_sensing_matrix(const SensingMatrix& A);

/// Dense vector paired with the index set of its nonzero entries.
struct SparseSignal {
  Eigen::VectorXd values;
  SupportSet support;

  /// Builds from a dense vector. Entries with |v| <= kZeroThreshold are
  /// flushed to exact zero; support lists the rest in ascending order.
  static SparseSignal from_values(Eigen::VectorXd values);

  /// Zero vector of the given length with nonzeros placed at `support`
  /// (in the support's order).
  static SparseSignal from_support(int length, const SupportSet& support,
                                   const Eigen::VectorXd& nonzeros);

  int length() const { return static_cast<int>(values.size()); }
  int sparsity() const { return support.size(); }
};

/// Entries of x at the indices of J, in J's order.
Eigen::VectorXd restrict_signal(const SparseSignal& x, const SupportSet& J);

/// Certificate for the restricted isometry constant of a given order:
/// delta = max(lambda_max - 1, 1 - lambda_min) with the extremal
/// eigenvalues taken over all column subsets of that size.
struct RipEstimate {
  int order = 0;
  double delta = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  /// Subset attaining the eigenvalue that defines delta.
  SupportSet witness_subset;
  /// Set when delta >= 1, i.e. no valid isometry constant of this order.
  bool rip_violated = false;
};

/// One greedy-selection step: scores for every candidate column (NaN marks
/// columns excluded because they were already selected), the chosen index,
/// the resulting residual norm and the support snapshot after augmenting.
struct IterationRecord {
  int k = 0;
  Eigen::VectorXd scores;
  int chosen_index = 0;
  double residual_norm = 0.0;
  SupportSet estimated_support;
  /// Selection happened with an (almost) zero residual; every candidate
  /// ties and the smallest unselected index wins.
  bool degenerate_selection = false;
};

struct OlsTrace {
  std::vector<IterationRecord> iterations;
  SparseSignal final_estimate;
};

}  // namespace olslab
