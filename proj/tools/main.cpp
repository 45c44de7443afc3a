// Command-line front end: solver runs, exact isometry certificates,
// instance construction, guarantee verification and Monte-Carlo
// experiments, all seedable and deterministic.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "olslab/checks.hpp"
#include "olslab/constructions.hpp"
#include "olslab/experiment.hpp"
#include "olslab/io.hpp"
#include "olslab/ols.hpp"
#include "olslab/rip.hpp"
#include "olslab/rng.hpp"

namespace {

using nlohmann::json;
using namespace olslab;

constexpr const char* kVersion = "1.2.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Grid tokens accept plain decimals and exact fractions like 2/3.
double parse_real_token(const std::string& token) {
  const auto slash = token.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument("bad number '" + token + "'");
    return v;
  }
  const double num = std::stod(token.substr(0, slash), &used);
  if (used != slash) throw std::invalid_argument("bad fraction '" + token + "'");
  const double den = std::stod(token.substr(slash + 1), &used);
  if (used != token.size() - slash - 1 || den == 0.0)
    throw std::invalid_argument("bad fraction '" + token + "'");
  return num / den;
}

std::vector<std::string> split_commas(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto comma = list.find(',', start);
    const auto end = comma == std::string::npos ? list.size() : comma;
    if (end > start) out.push_back(list.substr(start, end - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list '" + list + "'");
  return out;
}

std::vector<int> parse_int_list(const std::string& list) {
  std::vector<int> out;
  for (const auto& token : split_commas(list)) out.push_back(std::stoi(token));
  return out;
}

std::vector<double> parse_real_list(const std::string& list) {
  std::vector<double> out;
  for (const auto& token : split_commas(list)) out.push_back(parse_real_token(token));
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  std::cout << text;
  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << text;
  }
}

SensingMatrix load_matrix(const std::string& path) {
  return SensingMatrix(io::read_matrix(path));
}

struct CommonOpts {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";  // text | csv | json
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--seed", opts.seed, "RNG seed (u64)");
  cmd->add_option("--out", opts.out, "also write the output to this file");
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
}

// ---------------------------------------------------------------- ols solve

struct SolveOpts {
  std::string matrix, signal, rule = "projection", trace;
  int sparsity = 0;
  CommonOpts common;
};

void run_solve(const SolveOpts& o) {
  const SensingMatrix a = load_matrix(o.matrix);
  const Eigen::VectorXd y = io::read_vector(o.signal);
  const OlsTrace trace =
      run_ols(a, y, o.sparsity, selection_rule_from_string(o.rule));

  if (!o.trace.empty()) {
    json j = io::trace_to_json(trace);
    j["rule"] = o.rule;
    j["sparsity"] = o.sparsity;
    std::ofstream out(o.trace, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + o.trace + "' for writing");
    out << j.dump(2) << '\n';
  }

  std::string text;
  if (o.common.format == "json") {
    json j = io::trace_to_json(trace);
    j["rule"] = o.rule;
    j["sparsity"] = o.sparsity;
    text = j.dump(2) + "\n";
  } else {
    for (const auto& rec : trace.iterations) {
      text += "iteration " + std::to_string(rec.k) + ": chose column " +
              std::to_string(rec.chosen_index) +
              ", residual norm " + fmt(rec.residual_norm) +
              (rec.degenerate_selection ? " (degenerate tie)" : "") + "\n";
    }
    text += "support " + trace.final_estimate.support.to_string() + "\n";
    text += "coefficients";
    for (int idx : trace.final_estimate.support.indices())
      text += " x[" + std::to_string(idx) + "]=" +
              fmt(trace.final_estimate.values(idx - 1));
    text += "\n";
  }
  emit(text, o.common.out);
}

// --------------------------------------------------------------- rip compute

struct RipOpts {
  std::string matrix;
  int order = 0;
  int spot_check = 0;
  CommonOpts common;
};

void run_rip(const RipOpts& o) {
  const SensingMatrix a = load_matrix(o.matrix);
  const RipEstimate est = exact_rip_constant(a, o.order);
  std::optional<double> exceedance;
  if (o.spot_check > 0)
    exceedance = rip_definition_spot_check(a, est, o.spot_check, o.common.seed);

  std::string text;
  if (o.common.format == "json") {
    json j = io::rip_estimate_to_json(est);
    if (exceedance) j["spot_check"] = {{"trials", o.spot_check},
                                       {"seed", o.common.seed},
                                       {"worst_exceedance", *exceedance}};
    text = j.dump(2) + "\n";
  } else {
    text += "order " + std::to_string(est.order) + "\n";
    text += "delta " + fmt(est.delta) + (est.rip_violated ? " (violated)" : "") + "\n";
    text += "lambda_min " + fmt(est.lambda_min) + "\n";
    text += "lambda_max " + fmt(est.lambda_max) + "\n";
    text += "witness " + est.witness_subset.to_string() + "\n";
    if (exceedance)
      text += "spot_check_worst_exceedance " + fmt(*exceedance) + " (" +
              std::to_string(o.spot_check) + " trials)\n";
  }
  emit(text, o.common.out);
}

// ----------------------------------------------------------------- construct

struct ConstructOpts {
  int sparsity = 0;
  double delta = 0.0;
  std::string out_matrix, out_signal;
};

void write_instance(const ConstructedInstance& inst, const ConstructOpts& o) {
  io::write_matrix(o.out_matrix, inst.matrix.entries);
  io::write_vector(o.out_signal, inst.signal.values);
  std::cout << "wrote " << inst.matrix.rows() << "x" << inst.matrix.cols()
            << " matrix to " << o.out_matrix << " and signal with support "
            << inst.signal.support.to_string() << " to " << o.out_signal << "\n";
}

// -------------------------------------------------------------------- verify

struct VerifyOpts {
  std::string matrix, suite = "all";
  int sparsity = 0;
  int trials = 100;
  CommonOpts common;
};

std::vector<SupportSet> proper_subsets(const SupportSet& support) {
  std::vector<SupportSet> out;
  const auto& s = support.indices();
  const int k = support.size();
  for (unsigned mask = 0; mask + 1 < (1u << k); ++mask) {
    std::vector<int> subset;
    for (int i = 0; i < k; ++i)
      if (mask & (1u << i)) subset.push_back(s[static_cast<std::size_t>(i)]);
    out.emplace_back(subset);
  }
  return out;
}

json verify_selection_suite(const SensingMatrix& a, int sparsity, int trials,
                            std::uint64_t seed) {
  auto gen = rng::make_stream(seed, 1);
  int steps = 0, mismatches = 0, recovered = 0;
  for (int t = 0; t < trials; ++t) {
    const SupportSet support(rng::sample_indices(gen, a.cols(), sparsity));
    Eigen::VectorXd nz(sparsity);
    for (int i = 0; i < sparsity; ++i) {
      do {
        nz(i) = rng::standard_normal(gen);
      } while (std::abs(nz(i)) <= kZeroThreshold);
    }
    const SparseSignal x = SparseSignal::from_support(a.cols(), support, nz);
    const OlsTrace trace = run_ols(a, a.entries * x.values, sparsity);
    recovered += trace.final_estimate.support.same_elements(support) ? 1 : 0;

    // the step predictor must agree with what the solver actually did
    SupportSet partial;
    for (const auto& rec : trace.iterations) {
      const SelectionMargin margin = selection_margin(a, x, partial);
      const bool actual = support.contains(rec.chosen_index);
      ++steps;
      if (margin.correct != actual) ++mismatches;
      if (!actual) break;
      partial.insert(rec.chosen_index);
      if (partial.size() >= support.size()) break;
    }
  }
  return {{"name", "selection"},
          {"status", mismatches == 0 ? "pass" : "fail"},
          {"instances", trials},
          {"steps_checked", steps},
          {"predictor_mismatches", mismatches},
          {"instances_recovered", recovered}};
}

json verify_bound_suite(const SensingMatrix& a, int sparsity, int trials,
                        std::uint64_t seed, bool comparison) {
  auto gen = rng::make_stream(seed, comparison ? 3 : 2);
  int checked = 0, violations = 0, skipped = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const SupportSet support(rng::sample_indices(gen, a.cols(), sparsity));
    Eigen::VectorXd nz(sparsity);
    for (int i = 0; i < sparsity; ++i) {
      do {
        nz(i) = rng::standard_normal(gen);
      } while (std::abs(nz(i)) <= kZeroThreshold);
    }
    const SparseSignal x = SparseSignal::from_support(a.cols(), support, nz);
    for (const SupportSet& partial : proper_subsets(support)) {
      if (comparison) {
        const BoundComparison c = off_support_bound_comparison(a, x, partial);
        if (!c.in_hypothesis) {
          ++skipped;
          continue;
        }
        ++checked;
        if (c.measured > c.new_bound + 1e-9 ||
            c.new_bound > c.prior_bound + 1e-12 ||
            std::abs(c.improvement_ratio - 2.0 / std::sqrt(3.0)) > 1e-12)
          ++violations;
        worst_margin = std::min(worst_margin, c.new_bound - c.measured);
      } else {
        const ScoreBound b = off_support_score_bound(a, x, partial);
        if (!b.in_hypothesis) {
          ++skipped;
          continue;
        }
        ++checked;
        if (b.observed > b.bound + 1e-9) ++violations;
        worst_margin = std::min(worst_margin, b.bound - b.observed);
      }
    }
  }
  json j = {{"name", comparison ? "bound-comparison" : "off-support-bound"},
            {"instances", trials},
            {"checked", checked},
            {"out_of_hypothesis_skipped", skipped},
            {"violations", violations}};
  if (checked == 0)
    j["status"] = "skipped";
  else {
    j["status"] = violations == 0 ? "pass" : "fail";
    j["worst_margin"] = worst_margin;
  }
  return j;
}

json verify_recovery_suite(const SensingMatrix& a, int sparsity, int trials,
                           std::uint64_t seed) {
  const RecoveryReport report = verify_exact_recovery(a, trials, sparsity, seed);
  json failures = json::array();
  for (const auto& f : report.failures)
    failures.push_back({{"signal", f.description},
                        {"recovered_support", f.recovered_support.indices()}});
  return {{"name", "recovery"},
          {"status", report.all_recovered() ? "pass" : "fail"},
          {"runs", report.total_runs},
          {"failures", std::move(failures)}};
}

void run_verify(const VerifyOpts& o) {
  const SensingMatrix a = load_matrix(o.matrix);
  const RipEstimate est = exact_rip_constant(a, o.sparsity + 1);
  const double threshold = recovery_threshold(o.sparsity);

  json report = {{"matrix", o.matrix},
                 {"sparsity", o.sparsity},
                 {"trials", o.trials},
                 {"seed", o.common.seed},
                 {"delta", io::rip_estimate_to_json(est)},
                 {"threshold", threshold},
                 {"hypothesis_met", est.delta < threshold},
                 {"checks", json::array()}};

  const bool all = o.suite == "all";
  if (all || o.suite == "selection")
    report["checks"].push_back(
        verify_selection_suite(a, o.sparsity, o.trials, o.common.seed));
  if (all || o.suite == "off-support-bound")
    report["checks"].push_back(
        verify_bound_suite(a, o.sparsity, o.trials, o.common.seed, false));
  if (all || o.suite == "bound-comparison")
    report["checks"].push_back(
        verify_bound_suite(a, o.sparsity, o.trials, o.common.seed, true));
  if (all || o.suite == "recovery")
    report["checks"].push_back(
        verify_recovery_suite(a, o.sparsity, o.trials, o.common.seed));

  bool pass = true;
  for (const auto& check : report["checks"])
    if (check["status"] == "fail") pass = false;
  report["pass"] = pass;

  std::string text;
  if (o.common.format == "json") {
    text = report.dump(2) + "\n";
  } else {
    text += "delta_" + std::to_string(o.sparsity + 1) + " = " + fmt(est.delta) +
            ", threshold = " + fmt(threshold) +
            (est.delta < threshold ? " (hypothesis met)\n"
                                   : " (hypothesis NOT met)\n");
    for (const auto& check : report["checks"]) {
      text += "[" + check["status"].get<std::string>() + "] " +
              check["name"].get<std::string>();
      if (check.contains("violations"))
        text += ": " + std::to_string(check["checked"].get<int>()) +
                " checked, " + std::to_string(check["violations"].get<int>()) +
                " violations";
      if (check.contains("predictor_mismatches"))
        text += ": " + std::to_string(check["steps_checked"].get<int>()) +
                " steps, " +
                std::to_string(check["predictor_mismatches"].get<int>()) +
                " mismatches";
      if (check.contains("failures"))
        text += ": " + std::to_string(check["runs"].get<int>()) + " runs, " +
                std::to_string(check["failures"].size()) + " failures";
      text += "\n";
    }
    text += std::string("result: ") + (pass ? "pass" : "FAIL") + "\n";
  }
  emit(text, o.common.out);
  if (!pass) throw std::runtime_error("verification failed");
}

// --------------------------------------------------------------- experiments

struct PhaseOpts {
  std::string m_list, k_list, model = "gaussian", rule = "projection";
  int n = 0, trials = 0, workers = 1;
  CommonOpts common;
};

void run_phase(const PhaseOpts& o) {
  ExperimentConfig cfg;
  cfg.m_range = parse_int_list(o.m_list);
  cfg.n = o.n;
  cfg.k_range = parse_int_list(o.k_list);
  cfg.trials_per_cell = o.trials;
  cfg.signal_model = signal_model_from_string(o.model);
  cfg.rule = selection_rule_from_string(o.rule);
  cfg.rng_seed = o.common.seed;
  cfg.workers = o.workers;
  const auto cells = run_phase_experiment(cfg);
  emit(phase_cells_to_csv(cells, phase_delta_feasible(cfg)), o.common.out);
}

struct BoundaryOpts {
  std::string grid, rule = "projection";
  int sparsity = 0;
  CommonOpts common;
};

void run_boundary(const BoundaryOpts& o) {
  const auto points = run_boundary_sweep(o.sparsity, parse_real_list(o.grid),
                                         selection_rule_from_string(o.rule));
  emit(boundary_points_to_csv(points), o.common.out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sparse-recovery laboratory for orthogonal least squares"};
  app.set_version_flag("--version", std::string("olslab ") + kVersion +
                                        " [rng: " + rng::kAlgorithmName + "]");
  app.require_subcommand(1);

  // ols solve
  auto* ols_cmd = app.add_subcommand("ols", "run the greedy solver");
  ols_cmd->require_subcommand(1);
  SolveOpts solve_opts;
  auto* solve = ols_cmd->add_subcommand("solve", "recover a signal from a measurement");
  solve->add_option("--matrix", solve_opts.matrix, "sensing matrix file")->required();
  solve->add_option("--signal", solve_opts.signal, "measurement vector file")->required();
  solve->add_option("--sparsity,-K", solve_opts.sparsity, "iteration count K")->required();
  solve->add_option("--rule", solve_opts.rule, "identification rule")
      ->check(CLI::IsMember({"projection", "ratio"}));
  solve->add_option("--trace", solve_opts.trace, "write the JSON trace here");
  add_common(solve, solve_opts.common);
  solve->callback([&] { run_solve(solve_opts); });

  // rip compute
  auto* rip_cmd = app.add_subcommand("rip", "exact isometry certificates");
  rip_cmd->require_subcommand(1);
  RipOpts rip_opts;
  auto* rip = rip_cmd->add_subcommand("compute", "exact constant by enumeration");
  rip->add_option("--matrix", rip_opts.matrix, "sensing matrix file")->required();
  rip->add_option("--order,-K", rip_opts.order, "subset size")->required();
  rip->add_option("--spot-check", rip_opts.spot_check,
                  "random trials against the definition");
  add_common(rip, rip_opts.common);
  rip->callback([&] { run_rip(rip_opts); });

  // construct
  auto* construct = app.add_subcommand("construct", "explicit instances");
  construct->require_subcommand(1);
  ConstructOpts cex_opts;
  auto* cex = construct->add_subcommand(
      "counterexample", "failing instance with a prescribed constant");
  cex->add_option("--K", cex_opts.sparsity, "sparsity (>= 2)")->required();
  cex->add_option("--delta", cex_opts.delta, "target constant in (0, 1)")->required();
  cex->add_option("--out-matrix", cex_opts.out_matrix)->required();
  cex->add_option("--out-signal", cex_opts.out_signal)->required();
  cex->callback([&] { write_instance(counterexample(cex_opts.sparsity, cex_opts.delta), cex_opts); });

  ConstructOpts tight_opts;
  auto* tight = construct->add_subcommand(
      "tightness", "instance attaining the off-support bound with equality");
  tight->add_option("--K", tight_opts.sparsity, "sparsity (>= 1)")->required();
  tight->add_option("--out-matrix", tight_opts.out_matrix)->required();
  tight->add_option("--out-signal", tight_opts.out_signal)->required();
  tight->callback([&] { write_instance(tightness_example(tight_opts.sparsity), tight_opts); });

  // verify
  VerifyOpts verify_opts;
  auto* verify = app.add_subcommand("verify", "numeric guarantee checks");
  verify->add_option("--matrix", verify_opts.matrix, "sensing matrix file")->required();
  verify->add_option("--sparsity,-K", verify_opts.sparsity, "sparsity K")->required();
  verify->add_option("--trials", verify_opts.trials, "random signals per suite");
  verify->add_option("--suite", verify_opts.suite, "which checks to run")
      ->check(CLI::IsMember({"selection", "off-support-bound", "bound-comparison",
                             "recovery", "all"}));
  add_common(verify, verify_opts.common);
  verify->callback([&] { run_verify(verify_opts); });

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Monte-Carlo sweeps");
  experiment->require_subcommand(1);
  PhaseOpts phase_opts;
  auto* phase = experiment->add_subcommand("phase", "recovery rate over an (m, K) grid");
  phase->add_option("--m", phase_opts.m_list, "comma-separated m values")->required();
  phase->add_option("--n", phase_opts.n, "signal length")->required();
  phase->add_option("--K", phase_opts.k_list, "comma-separated K values")->required();
  phase->add_option("--trials", phase_opts.trials, "trials per cell")->required();
  phase->add_option("--model", phase_opts.model, "signal model")
      ->check(CLI::IsMember({"gaussian", "rademacher", "ones"}));
  phase->add_option("--rule", phase_opts.rule, "identification rule")
      ->check(CLI::IsMember({"projection", "ratio"}));
  phase->add_option("--workers", phase_opts.workers, "worker threads");
  add_common(phase, phase_opts.common);
  phase->callback([&] { run_phase(phase_opts); });

  BoundaryOpts boundary_opts;
  auto* boundary = experiment->add_subcommand(
      "boundary", "failure boundary on the constructed instances");
  boundary->add_option("--K", boundary_opts.sparsity, "sparsity (>= 2)")->required();
  boundary->add_option("--grid", boundary_opts.grid,
                       "comma-separated constants; fractions like 2/3 allowed")
      ->required();
  boundary->add_option("--rule", boundary_opts.rule, "identification rule")
      ->check(CLI::IsMember({"projection", "ratio"}));
  add_common(boundary, boundary_opts.common);
  boundary->callback([&] { run_boundary(boundary_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
