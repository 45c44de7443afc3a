#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "olslab/types.hpp"

namespace olslab::io {

// Plain-text exchange format shared by every subcommand: matrices start
// with a "m n" line followed by m rows of n space-separated reals; vectors
// start with "n" followed by one line of n reals. Values are written with
// 17 significant digits so files round-trip exactly.

Eigen::MatrixXd read_matrix(const std::filesystem::path& path);
void write_matrix(const std::filesystem::path& path, const Eigen::MatrixXd& m);

Eigen::VectorXd read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const Eigen::VectorXd& v);

/// 17-significant-digit rendering used by the text format.
std::string format_double(double value);

nlohmann::json trace_to_json(const OlsTrace& trace);
nlohmann::json rip_estimate_to_json(const RipEstimate& estimate);

}  // namespace olslab::io
