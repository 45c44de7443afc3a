#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "olslab/ols.hpp"
#include "olslab/types.hpp"

namespace olslab {

enum class SignalModel { kGaussian, kRademacher, kOnes };

const char* to_string(SignalModel model);
SignalModel signal_model_from_string(const std::string& name);

/// Monte-Carlo grid over (m, K) cells with fresh unit-column Gaussian
/// matrices per trial. Every trial derives its RNG stream from
/// (rng_seed, cell index, trial index), so results do not depend on the
/// number of workers or on scheduling.
struct ExperimentConfig {
  std::vector<int> m_range;
  int n = 0;
  std::vector<int> k_range;
  int trials_per_cell = 0;
  SignalModel signal_model = SignalModel::kGaussian;
  SelectionRule rule = SelectionRule::kProjection;
  std::uint64_t rng_seed = 0;
  std::filesystem::path output_path;  // empty writes nowhere (caller renders)
  int workers = 1;
};

/// Throws listing every violated config invariant.
void validate_config(const ExperimentConfig& config);

struct PhaseCell {
  int m = 0;
  int k = 0;
  int trials = 0;
  int exact_recovery_count = 0;
  /// Mean exact order-(K+1) constant over the cell's draws; absent when
  /// the subset enumeration would exceed kDeltaEnumerationLimit.
  std::optional<double> mean_delta;
};

/// Subset budget under which the per-draw isometry constant is computed;
/// above it the column is omitted rather than approximated.
inline constexpr std::int64_t kDeltaEnumerationLimit = 100'000;

/// Runs the grid and renders the CSV (header
/// m,K,trials,successes,rate[,mean_delta]; rates with 6 decimals, LF line
/// endings, '.' decimal point). Writes output_path when set. Identical
/// config and seed give bit-identical CSV regardless of worker count.
std::vector<PhaseCell> run_phase_experiment(const ExperimentConfig& config);

std::string phase_cells_to_csv(const std::vector<PhaseCell>& cells,
                               bool with_delta);

/// Whether a config's CSV carries the mean_delta column (it does iff the
/// enumeration is feasible for every K in the grid).
bool phase_delta_feasible(const ExperimentConfig& config);

/// One deterministic failure-boundary probe per grid value: builds the
/// counterexample instance at delta_star, runs the solver, and records the
/// first selected index and whether recovery succeeded.
struct BoundaryPoint {
  double delta_star = 0.0;
  int first_pick = 0;
  bool recovered = false;
};

std::vector<BoundaryPoint> run_boundary_sweep(int sparsity,
                                              const std::vector<double>& delta_grid,
                                              SelectionRule rule);

/// CSV with header delta_star,ols_first_pick,recovered.
std::string boundary_points_to_csv(const std::vector<BoundaryPoint>& points);

}  // namespace olslab
