#include <cmath>

#include "doctest.h"

#include "hdct/clr.hpp"
#include "hdct/datagen.hpp"
#include "hdct/distributions.hpp"
#include "hdct/mean_tests.hpp"
#include "test_util.hpp"

using namespace hdct;

namespace {

ClrMatrix fixture_clr(const std::string& name) {
  return clr_transform(validate_composition(testutil::load_fixture(name)));
}

Eigen::VectorXd zeros3() { return Eigen::VectorXd::Zero(3); }

}  // namespace

TEST_CASE("one-sample statistics match the committed goldens on F1") {
  const auto golden = testutil::load_goldens();
  const ClrMatrix y = fixture_clr("f1.csv");
  const TestTriple t = run_all_one(y, zeros3(), 0.05);

  CHECK(testutil::close_rel(t.sum.statistic, golden.at("f1_sum_stat"), 1e-8));
  CHECK(testutil::close_rel(t.max.statistic, golden.at("f1_max_stat"), 1e-8));
  CHECK(testutil::close_rel(t.combo.statistic, golden.at("f1_combo_stat"), 1e-8));
}

TEST_CASE("one-sample statistics match the live oracle tightly") {
  const ClrMatrix y = fixture_clr("f1.csv");
  const TestTriple t = run_all_one(y, zeros3(), 0.05);
  const oracle::Statistics ref = oracle::stats_one(testutil::to_oracle(y.values()));

  CHECK(testutil::close_rel(t.sum.statistic, ref.sum_stat, 1e-12));
  CHECK(testutil::close_rel(t.max.statistic, ref.max_stat, 1e-12));
  CHECK(testutil::close_rel(t.sum.pvalue, ref.sum_pvalue, 1e-10));
  CHECK(testutil::close_rel(t.max.pvalue, ref.max_pvalue, 1e-10));
  CHECK(testutil::close_rel(t.combo.statistic, ref.combo_stat, 1e-10));
}

TEST_CASE("two-sample statistics match goldens and oracle on F2a/F2b") {
  const auto golden = testutil::load_goldens();
  const ClrMatrix y1 = fixture_clr("f2a.csv");
  const ClrMatrix y2 = fixture_clr("f2b.csv");
  const TestTriple t = run_all_two(y1, y2, 0.05);

  CHECK(testutil::close_rel(t.sum.statistic, golden.at("f2_sum_stat"), 1e-8));
  CHECK(testutil::close_rel(t.max.statistic, golden.at("f2_max_stat"), 1e-8));
  CHECK(testutil::close_rel(t.combo.statistic, golden.at("f2_combo_stat"), 1e-8));

  const oracle::Statistics ref = oracle::stats_two(
      testutil::to_oracle(y1.values()), testutil::to_oracle(y2.values()));
  CHECK(testutil::close_rel(t.sum.statistic, ref.sum_stat, 1e-12));
  CHECK(testutil::close_rel(t.max.statistic, ref.max_stat, 1e-12));
  CHECK(testutil::close_rel(t.combo.statistic, ref.combo_stat, 1e-10));
}

TEST_CASE("individual entry points agree with the batch runner") {
  const ClrMatrix y = fixture_clr("f1.csv");
  const TestTriple t = run_all_one(y, zeros3(), 0.05);
  CHECK(sum_test_one(y, zeros3(), 0.05).statistic == t.sum.statistic);
  CHECK(max_test_one(y, zeros3(), 0.05).statistic == t.max.statistic);
  CHECK(combo_test_one(y, zeros3(), 0.05).statistic == t.combo.statistic);

  const ClrMatrix y2 = fixture_clr("f2b.csv");
  const TestTriple t2 = run_all_two(y, y2, 0.05);
  CHECK(sum_test_two(y, y2, 0.05).statistic == t2.sum.statistic);
  CHECK(max_test_two(y, y2, 0.05).statistic == t2.max.statistic);
  CHECK(combo_test_two(y, y2, 0.05).statistic == t2.combo.statistic);
}

TEST_CASE("statistics are invariant under per-row basis rescaling") {
  const Eigen::MatrixXd base = testutil::load_fixture("f1.csv");
  Eigen::MatrixXd scaled = base;
  const double factors[5] = {2, 3, 1, 5, 7};
  for (int i = 0; i < 5; ++i) {
    scaled.row(i) *= factors[i];
  }
  const TestTriple a = run_all_one(clr_transform(close(base)), zeros3(), 0.05);
  const TestTriple b = run_all_one(clr_transform(close(scaled)), zeros3(), 0.05);
  CHECK(testutil::close_rel(a.sum.statistic, b.sum.statistic, 1e-10));
  CHECK(testutil::close_rel(a.max.statistic, b.max.statistic, 1e-10));
  CHECK(testutil::close_rel(a.combo.statistic, b.combo.statistic, 1e-10));
}

TEST_CASE("statistics are invariant under column permutation") {
  const Eigen::MatrixXd base = testutil::load_fixture("f1.csv");
  Eigen::MatrixXd permuted(5, 3);
  permuted.col(0) = base.col(2);
  permuted.col(1) = base.col(0);
  permuted.col(2) = base.col(1);

  const TestTriple a = run_all_one(clr_transform(validate_composition(base)),
                                   zeros3(), 0.05);
  const TestTriple b = run_all_one(clr_transform(validate_composition(permuted)),
                                   zeros3(), 0.05);
  CHECK(testutil::close_rel(a.sum.statistic, b.sum.statistic, 1e-12));
  CHECK(testutil::close_rel(a.max.statistic, b.max.statistic, 1e-12));
}

TEST_CASE("identical groups: zero difference, no rejection") {
  const ClrMatrix y = fixture_clr("f2a.csv");
  const TestOutcome sum = sum_test_two(y, y, 0.05);
  CHECK(sum.statistic < 0.0);  // quadratic form is exactly 0
  CHECK_FALSE(sum.reject);
  CHECK(sum_test_two(y, y, 0.5).reject == false);

  const TestOutcome max = max_test_two(y, y, 0.05);
  const double p = 3.0;
  CHECK(max.statistic ==
        doctest::Approx(-2.0 * std::log(p) + std::log(std::log(p))).epsilon(1e-12));
  // At p = 3 the centering constant is small, so the null p-value of a zero
  // raw statistic is only ~0.80; it approaches 1 as p grows.
  CHECK(max.pvalue > 0.79);
  CHECK(max.pvalue == doctest::Approx(gumbel_pvalue(max.statistic)));
  CHECK_FALSE(max.reject);

  const TestOutcome combo = combo_test_two(y, y, 0.05);
  CHECK_FALSE(combo.reject);
}

TEST_CASE("combo statistic is the minimum of its sub-test p-values") {
  const ClrMatrix y1 = fixture_clr("f2a.csv");
  const ClrMatrix y2 = fixture_clr("f2b.csv");
  const TestTriple t = run_all_two(y1, y2, 0.05);
  CHECK(t.combo.statistic == std::min(t.sum.pvalue, t.max.pvalue));
  CHECK(t.combo.pvalue ==
        doctest::Approx(1.0 - (1.0 - t.combo.statistic) * (1.0 - t.combo.statistic))
            .epsilon(1e-15));
  // Rejection region sits below the threshold, not above.
  CHECK(t.combo.reject == (t.combo.statistic < combo_threshold(0.05)));
}

TEST_CASE("rejection thresholds and decisions are consistent") {
  const ClrMatrix y = fixture_clr("f1.csv");
  for (double alpha : {0.01, 0.05, 0.2, 0.9}) {
    const TestTriple t = run_all_one(y, zeros3(), alpha);
    CHECK(t.sum.threshold == doctest::Approx(std_normal_quantile(1.0 - alpha)));
    CHECK(t.max.threshold == doctest::Approx(gumbel_quantile(alpha)));
    CHECK(t.combo.threshold == doctest::Approx(combo_threshold(alpha)));
    CHECK(t.sum.reject == (t.sum.statistic >= t.sum.threshold));
    CHECK(t.max.reject == (t.max.statistic >= t.max.threshold));
    CHECK(t.combo.reject == (t.combo.statistic < t.combo.threshold));
  }
}

TEST_CASE("mu0 must be centered and of the right length") {
  const ClrMatrix y = fixture_clr("f1.csv");
  Eigen::VectorXd uncentered(3);
  uncentered << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(sum_test_one(y, uncentered, 0.05), NonCenteredMu0);
  CHECK_THROWS_AS(sum_test_one(y, Eigen::VectorXd::Zero(4), 0.05),
                  DimensionMismatch);
}

TEST_CASE("testing against a centered mu0 equals testing shifted data") {
  const ClrMatrix y = fixture_clr("f1.csv");
  Eigen::VectorXd mu0(3);
  mu0 << 0.2, -0.05, -0.15;

  const TestTriple direct = run_all_one(y, mu0, 0.05);
  const ClrMatrix shifted = ClrMatrix::from_centered(
      y.values().rowwise() - mu0.transpose());
  const TestTriple via_shift = run_all_one(shifted, zeros3(), 0.05);

  CHECK(testutil::close_rel(direct.sum.statistic, via_shift.sum.statistic, 1e-12));
  CHECK(testutil::close_rel(direct.max.statistic, via_shift.max.statistic, 1e-12));
}

TEST_CASE("alpha outside (0,1) is rejected") {
  const ClrMatrix y = fixture_clr("f1.csv");
  CHECK_THROWS_AS(sum_test_one(y, zeros3(), 0.0), DomainError);
  CHECK_THROWS_AS(sum_test_one(y, zeros3(), 1.0), DomainError);
}

TEST_CASE("repeated calls are bit-identical") {
  const ClrMatrix y1 = fixture_clr("f2a.csv");
  const ClrMatrix y2 = fixture_clr("f2b.csv");
  const TestTriple a = run_all_two(y1, y2, 0.05);
  const TestTriple b = run_all_two(y1, y2, 0.05);
  CHECK(a.sum.statistic == b.sum.statistic);
  CHECK(a.max.statistic == b.max.statistic);
  CHECK(a.combo.statistic == b.combo.statistic);
  CHECK(a.sum.pvalue == b.sum.pvalue);
}

TEST_CASE("two-sample statistics ignore a common log-basis shift") {
  const Eigen::MatrixXd w1 = testutil::load_fixture("f2a.csv").array().log();
  const Eigen::MatrixXd w2 = testutil::load_fixture("f2b.csv").array().log();

  const TestTriple a =
      run_all_two(clr_from_log_basis(LogBasisMatrix::from(w1)),
                  clr_from_log_basis(LogBasisMatrix::from(w2)), 0.05);
  const double c = 3.75;
  const TestTriple b = run_all_two(
      clr_from_log_basis(LogBasisMatrix::from(w1.array() + c)),
      clr_from_log_basis(LogBasisMatrix::from(w2.array() + c)), 0.05);

  CHECK(testutil::close_rel(a.sum.statistic, b.sum.statistic, 1e-10));
  CHECK(testutil::close_rel(a.max.statistic, b.max.statistic, 1e-10));
}

TEST_CASE("theoretical power at zero signal equals alpha") {
  const Eigen::MatrixXd sigma = build_covariance(CovarianceSpec::b1(12));
  for (double c : {0.0, 1.0, -2.5}) {
    const Eigen::VectorXd mu = Eigen::VectorXd::Constant(12, c);
    const double power = theoretical_power_sum(sigma, mu, 200.0, 0.05);
    CHECK(power == doctest::Approx(0.05).epsilon(1e-10));
  }
}

TEST_CASE("theoretical power is nondecreasing in n_eff") {
  const Eigen::MatrixXd sigma = build_covariance(CovarianceSpec::b1(20));
  const Eigen::VectorXd mu = signal_vector({4, 0.5}, 20);
  double prev = 0.0;
  for (double n_eff = 10.0; n_eff <= 400.0; n_eff += 10.0) {
    const double power = theoretical_power_sum(sigma, mu, n_eff, 0.05);
    CHECK(power >= prev - 1e-12);
    prev = power;
  }
  CHECK(prev > 0.05);
}

TEST_CASE("theoretical power validates its inputs") {
  Eigen::MatrixXd bad(3, 3);
  bad << 1, 0.5, 0.2, 0.4, 1, 0.1, 0.2, 0.1, 1;  // not symmetric
  CHECK_THROWS_AS(theoretical_power_sum(bad, Eigen::VectorXd::Zero(3), 10, 0.05),
                  NonSymmetric);
  const Eigen::MatrixXd sigma = build_covariance(CovarianceSpec::b1(3));
  CHECK_THROWS_AS(theoretical_power_sum(sigma, Eigen::VectorXd::Zero(4), 10, 0.05),
                  DimensionMismatch);
  CHECK_THROWS_AS(theoretical_power_sum(sigma, Eigen::VectorXd::Zero(3), 0.0, 0.05),
                  DomainError);
}
