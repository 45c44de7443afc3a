#include "olslab/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace olslab::io {

namespace {

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // binary keeps LF endings
  if (!out)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

double read_real(std::istream& in, const std::filesystem::path& path) {
  double v;
  if (!(in >> v))
    throw std::runtime_error("malformed number in '" + path.string() + "'");
  return v;
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

Eigen::MatrixXd read_matrix(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  long long rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows < 1 || cols < 1)
    throw std::runtime_error("'" + path.string() +
                             "': expected a leading \"m n\" line with m, n >= 1");
  Eigen::MatrixXd m(rows, cols);
  for (long long r = 0; r < rows; ++r)
    for (long long c = 0; c < cols; ++c) m(r, c) = read_real(in, path);
  return m;
}

void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m) {
  auto out = open_for_write(path);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << format_double(m(r, c));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

Eigen::VectorXd read_vector(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  long long n = 0;
  if (!(in >> n) || n < 1)
    throw std::runtime_error("'" + path.string() +
                             "': expected a leading length line with n >= 1");
  Eigen::VectorXd v(n);
  for (long long i = 0; i < n; ++i) v(i) = read_real(in, path);
  return v;
}

void write_vector(const std::filesystem::path& path, const Eigen::VectorXd& v) {
  auto out = open_for_write(path);
  out << v.size() << '\n';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out << ' ';
    out << format_double(v(i));
  }
  out << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

nlohmann::json trace_to_json(const OlsTrace& trace) {
  nlohmann::json iterations = nlohmann::json::array();
  for (const auto& rec : trace.iterations) {
    nlohmann::json scores = nlohmann::json::array();
    for (Eigen::Index i = 0; i < rec.scores.size(); ++i) {
      if (std::isnan(rec.scores(i)))
        scores.push_back(nullptr);  // excluded candidate
      else
        scores.push_back(rec.scores(i));
    }
    iterations.push_back({{"k", rec.k},
                          {"chosen_index", rec.chosen_index},
                          {"residual_norm", rec.residual_norm},
                          {"degenerate_selection", rec.degenerate_selection},
                          {"estimated_support", rec.estimated_support.indices()},
                          {"scores", std::move(scores)}});
  }
  std::vector<double> values(trace.final_estimate.values.data(),
                             trace.final_estimate.values.data() +
                                 trace.final_estimate.values.size());
  return {{"iterations", std::move(iterations)},
          {"final_estimate",
           {{"length", trace.final_estimate.length()},
            {"support", trace.final_estimate.support.indices()},
            {"values", std::move(values)}}}};
}

nlohmann::json rip_estimate_to_json(const RipEstimate& estimate) {
  return {{"order", estimate.order},
          {"delta", estimate.delta},
          {"lambda_min", estimate.lambda_min},
          {"lambda_max", estimate.lambda_max},
          {"witness_subset", estimate.witness_subset.indices()},
          {"rip_violated", estimate.rip_violated}};
}

}  // namespace olslab::io
