#include "olslab/ols.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace olslab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Greedy scan in J's order: a column is dependent if it lies in the span
// of the accepted columns before it.
std::string dependent_column_report(const Eigen::MatrixXd& Aj,
                                    const SupportSet& J) {
  const auto m = Aj.rows();
  Eigen::MatrixXd basis(m, 0);
  std::string dependents;
  for (int i = 0; i < Aj.cols(); ++i) {
    Eigen::VectorXd res = Aj.col(i);
    if (basis.cols() > 0) res -= basis * (basis.transpose() * res);
    if (res.norm() <= kRankTolerance * std::max(1.0, Aj.col(i).norm())) {
      if (!dependents.empty()) dependents += ", ";
      dependents += std::to_string(J.indices()[static_cast<std::size_t>(i)]);
    } else {
      basis.conservativeResize(m, basis.cols() + 1);
      basis.col(basis.cols() - 1) = res / res.norm();
    }
  }
  return dependents;
}

// Rank by singular values, relative to the largest.
int numerical_rank(const Eigen::MatrixXd& M) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankTolerance * sv(0)) ++rank;
  return rank;
}

void require_independent(const SensingMatrix& A, const SupportSet& J,
                         const char* op) {
  if (J.empty()) return;
  const Eigen::MatrixXd Aj = A.columns(J);
  if (numerical_rank(Aj) < J.size())
    throw std::invalid_argument(
        std::string(op) + ": columns " + dependent_column_report(Aj, J) +
        " of " + J.to_string() + " are linearly dependent on the others");
}

}  // namespace

const char* to_string(SelectionRule rule) {
  return rule == SelectionRule::kProjection ? "projection" : "ratio";
}

SelectionRule selection_rule_from_string(const std::string& name) {
  if (name == "projection") return SelectionRule::kProjection;
  if (name == "ratio") return SelectionRule::kRatio;
  throw std::invalid_argument("unknown selection rule '" + name +
                              "' (expected projection or ratio)");
}

namespace detail {

Eigen::MatrixXd span_basis(const Eigen::MatrixXd& M) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(M);
  qr.setThreshold(kRankTolerance);
  const auto rank = qr.rank();
  return qr.householderQ() * Eigen::MatrixXd::Identity(M.rows(), rank);
}

int select_extremal(const Eigen::VectorXd& scores, bool minimize) {
  double best = kNaN;
  double largest = 0.0;  // scale for the tie tolerance
  for (int i = 0; i < scores.size(); ++i) {
    const double s = scores(i);
    if (std::isnan(s)) continue;
    if (std::isnan(best) || (minimize ? s < best : s > best)) best = s;
    largest = std::max(largest, s);
  }
  if (std::isnan(best))
    throw std::invalid_argument("select_extremal: no eligible candidate");
  const double tol = kTieTolerance * (1.0 + largest);
  for (int i = 0; i < scores.size(); ++i) {
    const double s = scores(i);
    if (std::isnan(s)) continue;
    if (std::abs(s - best) <= tol) return i + 1;
  }
  throw std::logic_error("select_extremal: best score not found again");
}

}  // namespace detail

Eigen::VectorXd project_complement(const SensingMatrix& A, const SupportSet& J,
                                   const Eigen::VectorXd& v) {
  if (v.size() != A.rows())
    throw std::invalid_argument("project_complement: vector length " +
                                std::to_string(v.size()) + " != row count " +
                                std::to_string(A.rows()));
  if (J.empty()) return v;
  if (!J.subset_of(SupportSet::full(A.cols())))
    throw std::invalid_argument("project_complement: J not within [1, n]");
  require_independent(A, J, "project_complement");
  const Eigen::MatrixXd Q = detail::span_basis(A.columns(J));
  return v - Q * (Q.transpose() * v);
}

Selection identify_projection(const SensingMatrix& A, const Eigen::VectorXd& y,
                              const SupportSet& S_prev) {
  const int n = A.cols();
  if (S_prev.size() >= std::min(A.rows(), n))
    throw std::invalid_argument(
        "identify_projection: selection already at min(m, n) columns");
  require_independent(A, S_prev, "identify_projection");
  const Eigen::MatrixXd selected = A.columns(S_prev);

  Selection sel;
  sel.scores = Eigen::VectorXd::Constant(n, kNaN);
  Eigen::MatrixXd augmented(A.rows(), S_prev.size() + 1);
  if (S_prev.size() > 0) augmented.leftCols(S_prev.size()) = selected;
  for (int i = 1; i <= n; ++i) {
    if (S_prev.contains(i)) continue;
    augmented.col(S_prev.size()) = A.column(i);
    const Eigen::MatrixXd Q = detail::span_basis(augmented);
    sel.scores(i - 1) = (y - Q * (Q.transpose() * y)).squaredNorm();
  }
  sel.index = detail::select_extremal(sel.scores, /*minimize=*/true);
  return sel;
}

Selection identify_ratio(const SensingMatrix& A, const Eigen::VectorXd& r_prev,
                         const SupportSet& S_prev) {
  const int n = A.cols();
  if (r_prev.size() != A.rows())
    throw std::invalid_argument("identify_ratio: residual length mismatch");

  Eigen::MatrixXd Q;
  if (!S_prev.empty()) Q = detail::span_basis(A.columns(S_prev));
  Selection sel;
  sel.scores = Eigen::VectorXd::Constant(n, kNaN);
  for (int j = 1; j <= n; ++j) {
    if (S_prev.contains(j)) continue;
    const Eigen::VectorXd a = A.column(j);
    const double den =
        S_prev.empty() ? a.norm() : (a - Q * (Q.transpose() * a)).norm();
    sel.scores(j - 1) =
        den <= kRankTolerance ? 0.0 : std::abs(r_prev.dot(a)) / den;
  }
  sel.index = detail::select_extremal(sel.scores, /*minimize=*/false);
  return sel;
}

SparseSignal least_squares_on_support(const SensingMatrix& A,
                                      const Eigen::VectorXd& y,
                                      const SupportSet& S) {
  if (y.size() != A.rows())
    throw std::invalid_argument(
        "least_squares_on_support: measurement length mismatch");
  if (S.empty()) return SparseSignal::from_values(Eigen::VectorXd::Zero(A.cols()));
  require_independent(A, S, "least_squares_on_support");

  const Eigen::MatrixXd As = A.columns(S);
  const Eigen::VectorXd coef = Eigen::HouseholderQR<Eigen::MatrixXd>(As).solve(y);
  Eigen::VectorXd values = Eigen::VectorXd::Zero(A.cols());
  for (int i = 0; i < S.size(); ++i)
    values[S.indices()[static_cast<std::size_t>(i)] - 1] = coef(i);
  return SparseSignal::from_values(std::move(values));
}

OlsTrace run_ols(const SensingMatrix& A, const Eigen::VectorXd& y, int sparsity,
                 SelectionRule rule) {
  if (sparsity < 1 || sparsity > std::min(A.rows(), A.cols()))
    throw std::invalid_argument("run_ols: sparsity must be in [1, min(m, n)]");
  if (y.size() != A.rows())
    throw std::invalid_argument("run_ols: measurement length mismatch");
  const auto violations = validate_sensing_matrix(A);
  if (!violations.empty())
    throw std::invalid_argument("run_ols: invalid sensing matrix: " +
                                violations.front());

  OlsTrace trace;
  SupportSet support;
  Eigen::VectorXd residual = y;
  for (int k = 1; k <= sparsity; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.degenerate_selection = residual.norm() <= kResidualZero;

    const Selection sel = rule == SelectionRule::kProjection
                              ? identify_projection(A, y, support)
                              : identify_ratio(A, residual, support);
    support.insert(sel.index);
    const SparseSignal estimate = least_squares_on_support(A, y, support);
    residual = y - A.entries * estimate.values;

    rec.scores = sel.scores;
    rec.chosen_index = sel.index;
    rec.residual_norm = residual.norm();
    rec.estimated_support = support;
    trace.iterations.push_back(std::move(rec));
    if (k == sparsity) trace.final_estimate = estimate;
  }
  return trace;
}

}  // namespace olslab
