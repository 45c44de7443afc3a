#include "olslab/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace olslab {

SupportSet::SupportSet(std::vector<int> indices) {
  for (int idx : indices) insert(idx);
}

SupportSet SupportSet::full(int n) {
  if (n < 1) throw std::invalid_argument("SupportSet::full: n must be >= 1");
  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
  SupportSet s;
  s.indices_ = std::move(idx);
  return s;
}

bool SupportSet::contains(int index) const {
  return std::find(indices_.begin(), indices_.end(), index) != indices_.end();
}

void SupportSet::insert(int index) {
  if (index < 1)
    throw std::invalid_argument("SupportSet: indices are 1-based, got " +
                                std::to_string(index));
  if (contains(index))
    throw std::invalid_argument("SupportSet: duplicate index " +
                                std::to_string(index));
  indices_.push_back(index);
}

SupportSet SupportSet::set_union(const SupportSet& other) const {
  SupportSet out = *this;
  for (int idx : other.indices_)
    if (!out.contains(idx)) out.indices_.push_back(idx);
  return out;
}

SupportSet SupportSet::set_difference(const SupportSet& other) const {
  SupportSet out;
  for (int idx : indices_)
    if (!other.contains(idx)) out.indices_.push_back(idx);
  return out;
}

SupportSet SupportSet::set_intersection(const SupportSet& other) const {
  SupportSet out;
  for (int idx : indices_)
    if (other.contains(idx)) out.indices_.push_back(idx);
  return out;
}

bool SupportSet::subset_of(const SupportSet& other) const {
  return std::all_of(indices_.begin(), indices_.end(),
                     [&](int idx) { return other.contains(idx); });
}

bool SupportSet::same_elements(const SupportSet& other) const {
  return size() == other.size() && subset_of(other);
}

SupportSet SupportSet::sorted() const {
  SupportSet out = *this;
  std::sort(out.indices_.begin(), out.indices_.end());
  return out;
}

std::string SupportSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (i > 0) out += ", ";
    out += std::to_string(indices_[i]);
  }
  return out + "}";
}

SensingMatrix::SensingMatrix(Eigen::MatrixXd m, double norm_tolerance)
    : entries(std::move(m)), column_norm_tolerance(norm_tolerance) {
  if (entries.rows() < 1 || entries.cols() < 1)
    throw std::invalid_argument("SensingMatrix: dimensions must be >= 1");
}

Eigen::VectorXd SensingMatrix::column(int index) const {
  if (index < 1 || index > cols())
    throw std::invalid_argument("SensingMatrix::column: index " +
                                std::to_string(index) + " out of [1, " +
                                std::to_string(cols()) + "]");
  return entries.col(index - 1);
}

Eigen::MatrixXd SensingMatrix::columns(const SupportSet& J) const {
  Eigen::MatrixXd out(rows(), J.size());
  for (int i = 0; i < J.size(); ++i)
    out.col(i) = column(J.indices()[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<std::string> validate_sensing_matrix(const SensingMatrix& A) {
  if (!A.entries.allFinite())
    throw std::invalid_argument(
        "validate_sensing_matrix: matrix contains non-finite entries");
  std::vector<std::string> violations;
  for (int j = 0; j < A.cols(); ++j) {
    const double norm = A.entries.col(j).norm();
    const double dev = std::abs(norm - 1.0);
    if (dev > A.column_norm_tolerance) {
      char buf[160];
      std::snprintf(buf, sizeof(buf),
                    "column %d: norm %.12g deviates from 1 by %.3g "
                    "(tolerance %.3g)",
                    j + 1, norm, dev, A.column_norm_tolerance);
      violations.emplace_back(buf);
    }
  }
  return violations;
}

SparseSignal SparseSignal::from_values(Eigen::VectorXd values) {
  if (values.size() < 1)
    throw std::invalid_argument("SparseSignal: length must be >= 1");
  SparseSignal x;
  for (int i = 0; i < values.size(); ++i) {
    if (std::abs(values[i]) > kZeroThreshold)
      x.support.insert(i + 1);
    else
      values[i] = 0.0;
  }
  x.values = std::move(values);
  return x;
}

SparseSignal SparseSignal::from_support(int length, const SupportSet& support,
                                        const Eigen::VectorXd& nonzeros) {
  if (support.size() != nonzeros.size())
    throw std::invalid_argument(
        "SparseSignal::from_support: support/value size mismatch");
  Eigen::VectorXd values = Eigen::VectorXd::Zero(length);
  for (int i = 0; i < support.size(); ++i) {
    const int idx = support.indices()[static_cast<std::size_t>(i)];
    if (idx > length)
      throw std::invalid_argument(
          "SparseSignal::from_support: index exceeds length");
    values[idx - 1] = nonzeros[i];
  }
  return from_values(std::move(values));
}

Eigen::VectorXd restrict_signal(const SparseSignal& x, const SupportSet& J) {
  Eigen::VectorXd out(J.size());
  for (int i = 0; i < J.size(); ++i) {
    const int idx = J.indices()[static_cast<std::size_t>(i)];
    if (idx < 1 || idx > x.length())
      throw std::invalid_argument("restrict_signal: index " +
                                  std::to_string(idx) + " out of [1, " +
                                  std::to_string(x.length()) + "]");
    out[i] = x.values[idx - 1];
  }
  return out;
}

}  // namespace olslab
