#include "olslab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "olslab/constructions.hpp"
#include "olslab/rip.hpp"
#include "olslab/rng.hpp"

namespace olslab {

namespace {

// Unit-column Gaussian draw; a column is redrawn if its raw norm is
// negligible (cannot be normalized without bias).
SensingMatrix draw_unit_column_matrix(std::mt19937_64& gen, int m, int n) {
  Eigen::MatrixXd a(m, n);
  for (int j = 0; j < n; ++j) {
    double norm = 0.0;
    do {
      for (int i = 0; i < m; ++i) a(i, j) = rng::standard_normal(gen);
      norm = a.col(j).norm();
    } while (norm < 1e-8);
    a.col(j) /= norm;
  }
  return SensingMatrix(std::move(a));
}

SparseSignal draw_signal(std::mt19937_64& gen, int n, int k, SignalModel model) {
  const SupportSet support(rng::sample_indices(gen, n, k));
  Eigen::VectorXd nz(k);
  for (int i = 0; i < k; ++i) {
    switch (model) {
      case SignalModel::kGaussian:
        do {
          nz(i) = rng::standard_normal(gen);
        } while (std::abs(nz(i)) <= kZeroThreshold);
        break;
      case SignalModel::kRademacher:
        nz(i) = rng::rademacher(gen);
        break;
      case SignalModel::kOnes:
        nz(i) = 1.0;
        break;
    }
  }
  return SparseSignal::from_support(n, support, nz);
}

std::string format_rate(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

const char* to_string(SignalModel model) {
  switch (model) {
    case SignalModel::kGaussian:
      return "gaussian";
    case SignalModel::kRademacher:
      return "rademacher";
    case SignalModel::kOnes:
      return "ones";
  }
  return "?";
}

SignalModel signal_model_from_string(const std::string& name) {
  if (name == "gaussian") return SignalModel::kGaussian;
  if (name == "rademacher") return SignalModel::kRademacher;
  if (name == "ones") return SignalModel::kOnes;
  throw std::invalid_argument("unknown signal model '" + name +
                              "' (expected gaussian, rademacher or ones)");
}

void validate_config(const ExperimentConfig& config) {
  std::string problems;
  auto add = [&](const std::string& p) {
    if (!problems.empty()) problems += "; ";
    problems += p;
  };
  if (config.m_range.empty()) add("m range is empty");
  if (config.k_range.empty()) add("K range is empty");
  if (config.n < 1) add("n must be >= 1");
  if (config.trials_per_cell < 1) add("trials per cell must be >= 1");
  if (config.workers < 1) add("workers must be >= 1");
  for (int k : config.k_range) {
    if (k < 1) add("K = " + std::to_string(k) + " is not positive");
    for (int m : config.m_range)
      if (k > m)
        add("K = " + std::to_string(k) + " exceeds m = " + std::to_string(m));
    if (config.n < k + 1)
      add("n must be at least max K + 1 (got n = " + std::to_string(config.n) +
          ", K = " + std::to_string(k) + ")");
  }
  if (!problems.empty())
    throw std::invalid_argument("invalid experiment config: " + problems);
}

bool phase_delta_feasible(const ExperimentConfig& config) {
  return std::all_of(config.k_range.begin(), config.k_range.end(), [&](int k) {
    return binomial_capped(config.n, k + 1, kDeltaEnumerationLimit) <=
           kDeltaEnumerationLimit;
  });
}

std::vector<PhaseCell> run_phase_experiment(const ExperimentConfig& config) {
  validate_config(config);
  // Fail on an unwritable output path before burning any compute.
  if (!config.output_path.empty()) write_text_file(config.output_path, "");

  const bool with_delta = phase_delta_feasible(config);
  struct Cell {
    int m, k;
  };
  std::vector<Cell> cells;
  for (int m : config.m_range)
    for (int k : config.k_range) cells.push_back({m, k});

  const int trials = config.trials_per_cell;
  struct TrialResult {
    bool success = false;
    double delta = 0.0;
  };
  std::vector<TrialResult> results(cells.size() * static_cast<std::size_t>(trials));

  // Work items are indexed by (cell, trial); each derives its own stream,
  // so any scheduling produces the same results vector.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t item = next.fetch_add(1);
      if (item >= results.size()) return;
      const std::size_t cell_idx = item / static_cast<std::size_t>(trials);
      const std::size_t trial_idx = item % static_cast<std::size_t>(trials);
      auto gen = rng::make_stream(config.rng_seed, cell_idx, trial_idx);

      const auto [m, k] = cells[cell_idx];
      const SensingMatrix a = draw_unit_column_matrix(gen, m, config.n);
      const SparseSignal x = draw_signal(gen, config.n, k, config.signal_model);
      const Eigen::VectorXd y = a.entries * x.values;
      const OlsTrace trace = run_ols(a, y, k, config.rule);

      TrialResult r;
      r.success = trace.final_estimate.support.same_elements(x.support);
      if (with_delta)
        r.delta = exact_rip_constant(a, k + 1, kDeltaEnumerationLimit).delta;
      results[item] = r;
    }
  };
  if (config.workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < config.workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<PhaseCell> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    PhaseCell cell;
    cell.m = cells[c].m;
    cell.k = cells[c].k;
    cell.trials = trials;
    double delta_sum = 0.0;
    for (int t = 0; t < trials; ++t) {
      const TrialResult& r = results[c * static_cast<std::size_t>(trials) +
                                     static_cast<std::size_t>(t)];
      cell.exact_recovery_count += r.success ? 1 : 0;
      delta_sum += r.delta;
    }
    if (with_delta) cell.mean_delta = delta_sum / trials;
    out.push_back(std::move(cell));
  }

  if (!config.output_path.empty())
    write_text_file(config.output_path, phase_cells_to_csv(out, with_delta));
  return out;
}

std::string phase_cells_to_csv(const std::vector<PhaseCell>& cells,
                               bool with_delta) {
  std::string csv = with_delta ? "m,K,trials,successes,rate,mean_delta\n"
                               : "m,K,trials,successes,rate\n";
  for (const auto& cell : cells) {
    csv += std::to_string(cell.m) + ',' + std::to_string(cell.k) + ',' +
           std::to_string(cell.trials) + ',' +
           std::to_string(cell.exact_recovery_count) + ',' +
           format_rate(static_cast<double>(cell.exact_recovery_count) /
                       cell.trials);
    if (with_delta) csv += ',' + format_rate(cell.mean_delta.value());
    csv += '\n';
  }
  return csv;
}

std::vector<BoundaryPoint> run_boundary_sweep(int sparsity,
                                              const std::vector<double>& delta_grid,
                                              SelectionRule rule) {
  if (sparsity < 2)
    throw std::invalid_argument(
        "run_boundary_sweep: sparsity must be >= 2 (no failing family exists "
        "below that)");
  for (double d : delta_grid)
    if (!(d > 0.0 && d < 1.0))
      throw std::invalid_argument("run_boundary_sweep: grid values must lie in (0, 1)");

  std::vector<BoundaryPoint> points;
  points.reserve(delta_grid.size());
  for (double d : delta_grid) {
    const ConstructedInstance instance = counterexample(sparsity, d);
    const Eigen::VectorXd y = instance.matrix.entries * instance.signal.values;
    const OlsTrace trace = run_ols(instance.matrix, y, sparsity, rule);
    BoundaryPoint p;
    p.delta_star = d;
    p.first_pick = trace.iterations.front().chosen_index;
    p.recovered =
        trace.final_estimate.support.same_elements(instance.signal.support);
    points.push_back(p);
  }
  return points;
}

std::string boundary_points_to_csv(const std::vector<BoundaryPoint>& points) {
  std::string csv = "delta_star,ols_first_pick,recovered\n";
  for (const auto& p : points) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", p.delta_star);
    csv += std::string(buf) + ',' + std::to_string(p.first_pick) + ',' +
           (p.recovered ? "1" : "0") + '\n';
  }
  return csv;
}

}  // namespace olslab
