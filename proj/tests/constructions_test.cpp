#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "olslab/constructions.hpp"
#include "olslab/ols.hpp"
#include "olslab/rip.hpp"
#include "test_util.hpp"

using namespace olslab;

TEST_CASE("recovery threshold constants") {
  CHECK(recovery_threshold(1) == 1.0);
  CHECK(recovery_threshold(2) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(recovery_threshold(3) == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
  CHECK(recovery_threshold(4) == 0.5);
  CHECK(recovery_threshold(9) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(recovery_threshold(0), std::invalid_argument);
  CHECK_THROWS_AS(recovery_threshold(-2), std::invalid_argument);
}

TEST_CASE("threshold beats the classical 1/sqrt(K+1) condition everywhere") {
  for (int k = 1; k <= 50; ++k)
    REQUIRE(recovery_threshold(k) > 1.0 / std::sqrt(static_cast<double>(k + 1)));
}

TEST_CASE("gram spec validation") {
  CHECK_NOTHROW(GramSpec(Eigen::MatrixXd::Identity(3, 3)));
  Eigen::MatrixXd bad_diag = Eigen::MatrixXd::Identity(2, 2);
  bad_diag(0, 0) = 0.5;
  CHECK_THROWS_AS(GramSpec(std::move(bad_diag)), std::invalid_argument);
  Eigen::MatrixXd asym = Eigen::MatrixXd::Identity(2, 2);
  asym(0, 1) = 0.25;
  CHECK_THROWS_AS(GramSpec(std::move(asym)), std::invalid_argument);
}

TEST_CASE("factorizing the identity Gram gives orthonormal columns") {
  const SensingMatrix A = gram_to_matrix(GramSpec(Eigen::MatrixXd::Identity(3, 3)));
  CHECK(A.rows() == 3);
  CHECK((A.entries.transpose() * A.entries - Eigen::MatrixXd::Identity(3, 3))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
}

TEST_CASE("an indefinite Gram is rejected") {
  Eigen::MatrixXd g(2, 2);
  g << 1.0, 1.5, 1.5, 1.0;  // eigenvalues 2.5 and -0.5
  CHECK_THROWS_AS(gram_to_matrix(GramSpec(std::move(g))), std::invalid_argument);
}

TEST_CASE("a singular Gram factors with rank(G) rows") {
  Eigen::MatrixXd g(2, 2);
  g << 1.0, 1.0, 1.0, 1.0;  // rank one
  const SensingMatrix A = gram_to_matrix(GramSpec(std::move(g)));
  CHECK(A.rows() == 1);
  CHECK((A.entries.transpose() * A.entries -
         Eigen::MatrixXd::Constant(2, 2, 1.0))
            .cwiseAbs()
            .maxCoeff() <= 1e-10);
}

TEST_CASE("factor reproduces the Gram for every family and parameter") {
  for (int k : {2, 3, 4, 6, 8}) {
    for (double d : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto inst = counterexample(k, d);
      const Eigen::MatrixXd gram =
          inst.matrix.entries.transpose() * inst.matrix.entries;
      REQUIRE((gram - inst.gram).cwiseAbs().maxCoeff() <= 1e-10);
      REQUIRE(validate_sensing_matrix(inst.matrix).empty());
    }
  }
}

TEST_CASE("failing-family constant is certified at order K + 1") {
  for (int k : {2, 3, 4, 6, 8}) {
    for (double d : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const auto inst = counterexample(k, d);
      REQUIRE(exact_rip_constant(inst.matrix, k + 1).delta ==
              doctest::Approx(d).epsilon(1e-9));
    }
  }
}

TEST_CASE("case dispatch and input validation of the failing family") {
  CHECK_THROWS_AS(counterexample(1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(counterexample(2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(counterexample(2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(counterexample(2, -0.5), std::invalid_argument);

  const auto k2 = counterexample(2, 0.5);
  CHECK(k2.matrix.cols() == 3);
  CHECK(k2.signal.support.same_elements(SupportSet({2, 3})));

  const auto k5 = counterexample(5, 0.5);
  CHECK(k5.matrix.cols() == 6);
  CHECK(k5.signal.support.same_elements(SupportSet({2, 3, 4, 5, 6})));
}

TEST_CASE("first-iteration scores of the failing family match the closed forms") {
  SUBCASE("K = 2 at the threshold: all three scores tie at 2/3") {
    const auto inst = counterexample(2, 2.0 / 3.0);
    const Eigen::VectorXd y = inst.matrix.entries * inst.signal.values;
    for (int j = 1; j <= 3; ++j)
      CHECK(std::abs(y.dot(inst.matrix.column(j))) ==
            doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(run_ols(inst.matrix, y, 2).iterations[0].chosen_index == 1);
  }
  SUBCASE("K = 3 at the threshold: all four scores tie at 6/7") {
    const auto inst = counterexample(3, 4.0 / 7.0);
    const Eigen::VectorXd y = inst.matrix.entries * inst.signal.values;
    for (int j = 1; j <= 4; ++j)
      CHECK(std::abs(y.dot(inst.matrix.column(j))) ==
            doctest::Approx(6.0 / 7.0).epsilon(1e-12));
    CHECK(run_ols(inst.matrix, y, 3).iterations[0].chosen_index == 1);
  }
  SUBCASE("K = 5 above the threshold: decoy scores sqrt(5)/2 > 1") {
    const auto inst = counterexample(5, 0.5);  // 0.5 > 1/sqrt(5)
    const Eigen::VectorXd y = inst.matrix.entries * inst.signal.values;
    CHECK(std::abs(y.dot(inst.matrix.column(1))) ==
          doctest::Approx(std::sqrt(5.0) * 0.5).epsilon(1e-12));
    for (int j = 2; j <= 6; ++j)
      CHECK(std::abs(y.dot(inst.matrix.column(j))) ==
            doctest::Approx(1.0).epsilon(1e-12));
    const OlsTrace trace = run_ols(inst.matrix, y, 5);
    CHECK(trace.iterations[0].chosen_index == 1);
    CHECK_FALSE(trace.final_estimate.support.same_elements(inst.signal.support));
  }
}

TEST_CASE("recovery flips exactly at the threshold on the constructed instances") {
  for (int k : {2, 3, 4, 6}) {
    const double ck = recovery_threshold(k);
    const auto at = counterexample(k, ck);
    const auto below = counterexample(k, ck - 0.01);

    const OlsTrace failing =
        run_ols(at.matrix, at.matrix.entries * at.signal.values, k);
    REQUIRE(failing.iterations[0].chosen_index == 1);
    REQUIRE_FALSE(failing.final_estimate.support.same_elements(at.signal.support));

    const OlsTrace passing =
        run_ols(below.matrix, below.matrix.entries * below.signal.values, k);
    REQUIRE(passing.final_estimate.support.same_elements(below.signal.support));
  }
}

TEST_CASE("tightness instance layout and degenerate K = 1 case") {
  const auto inst = tightness_example(4);
  CHECK(inst.matrix.rows() == 5);
  CHECK(inst.matrix.cols() == 5);
  CHECK(validate_sensing_matrix(inst.matrix).empty());
  const Eigen::VectorXd y = inst.matrix.entries * inst.signal.values;
  CHECK(y.dot(inst.matrix.column(1)) == doctest::Approx(1.0).epsilon(1e-14));
  // y = A x keeps the signal's coordinates on this instance
  CHECK((y - inst.signal.values).norm() <= 1e-14);

  // K = 1 degenerates to duplicate columns: Gram [[1,1],[1,1]],
  // eigenvalues {2, 0}, constant 1, flagged.
  const auto k1 = tightness_example(1);
  CHECK(k1.matrix.entries(0, 0) == 0.0);
  CHECK(validate_sensing_matrix(k1.matrix).empty());
  const RipEstimate est = exact_rip_constant(k1.matrix, 2);
  CHECK(est.delta == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.rip_violated);
  CHECK(est.lambda_max == doctest::Approx(2.0).epsilon(1e-12));
}
