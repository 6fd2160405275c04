#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tsecon/cointegration.hpp"
#include "tsecon/error.hpp"
#include "tsecon/pipeline/synthetic.hpp"
#include "tsecon/random.hpp"

using namespace tsecon;

namespace {

CointegrationOptions bandwidth(double bw) {
    CointegrationOptions o;
    o.bandwidth = Bandwidth::fixed(bw);
    return o;
}

// x: random walks; y = a + x b + e with e orthogonal to [1, x_t, dx_t] on rows 1..n-1.
struct Degenerate {
    Eigen::VectorXd y;
    Eigen::MatrixXd x;
};

Degenerate degenerate_system(std::uint64_t seed, int n, int k) {
    Rng rng(seed);
    Eigen::MatrixXd x(n, k);
    for (int j = 0; j < k; ++j) {
        double v = 0.0;
        for (int t = 0; t < n; ++t) x(t, j) = v += rng.normal();
    }
    const int rows = n - 1;
    Eigen::MatrixXd z(rows, 1 + 2 * k);
    z.col(0).setOnes();
    z.middleCols(1, k) = x.bottomRows(rows);
    z.rightCols(k) = x.bottomRows(rows) - x.topRows(rows);
    Eigen::VectorXd e(rows);
    for (int t = 0; t < rows; ++t) e(t) = rng.normal();
    e -= z * oracle::ols(z, e).beta;
    Eigen::VectorXd y(n);
    y(0) = 0.0;
    for (int t = 1; t < n; ++t) {
        y(t) = 0.5 + e(t - 1);
        for (int j = 0; j < k; ++j) y(t) += (j + 1.5) * x(t, j);
    }
    return {y, x};
}

std::vector<std::string> names(int k) {
    std::vector<std::string> out;
    for (int j = 0; j < k; ++j) out.push_back("X" + std::to_string(j + 1));
    return out;
}

Eigen::VectorXd ols_on_trimmed(const Degenerate& s) {
    const auto rows = s.y.size() - 1;
    Eigen::MatrixXd z(rows, 1 + s.x.cols());
    z.col(0).setOnes();
    z.rightCols(s.x.cols()) = s.x.bottomRows(rows);
    return oracle::ols(z, s.y.tail(rows)).beta;
}

}  // namespace

TEST(Fmols, ZeroCorrectionEqualsOls) {
    for (int k : {1, 2, 3}) {
        const auto s = degenerate_system(static_cast<std::uint64_t>(10 + k), 80, k);
        const auto beta = ols_on_trimmed(s);
        const auto fit = fmols_fit(s.y, s.x, names(k), bandwidth(0));
        EXPECT_NEAR(fit.intercept.coefficient, beta(0), 1e-10);
        for (int j = 0; j < k; ++j) EXPECT_NEAR(fit.coefficients[j].coefficient, beta(j + 1), 1e-10);
        EXPECT_EQ(fit.n_effective, 79);
        EXPECT_DOUBLE_EQ(fit.bandwidth, 0.0);
    }
}

TEST(Ccr, ZeroCorrectionEqualsOls) {
    for (int k : {1, 2}) {
        const auto s = degenerate_system(static_cast<std::uint64_t>(20 + k), 90, k);
        const auto beta = ols_on_trimmed(s);
        const auto fit = ccr_fit(s.y, s.x, names(k), bandwidth(0));
        EXPECT_NEAR(fit.intercept.coefficient, beta(0), 1e-10);
        for (int j = 0; j < k; ++j) EXPECT_NEAR(fit.coefficients[j].coefficient, beta(j + 1), 1e-10);
    }
}

TEST(Dols, ZeroWindowEqualsAugmentedOls) {
    const auto s = degenerate_system(5, 60, 2);
    CointegrationOptions o;
    o.leads = 0;
    o.lags = 0;
    const auto fit = dols_fit(s.y, s.x, names(2), o);
    const Eigen::Index rows = 59;
    const auto design = DesignBuilder(rows)
                            .intercept()
                            .add("X1", s.x.col(0).tail(rows))
                            .add("X2", s.x.col(1).tail(rows))
                            .add("DX1", s.x.col(0).tail(rows) - s.x.col(0).head(rows))
                            .add("DX2", s.x.col(1).tail(rows) - s.x.col(1).head(rows))
                            .build();
    const auto ols = ols_fit(s.y.tail(rows), design);
    EXPECT_NEAR(fit.intercept.coefficient, ols.coefficients(0), 1e-12);
    EXPECT_NEAR(fit.coefficients[0].coefficient, ols.coefficients(1), 1e-12);
    EXPECT_NEAR(fit.coefficients[1].coefficient, ols.coefficients(2), 1e-12);
    EXPECT_EQ(fit.leads, 0);
    EXPECT_EQ(fit.lags, 0);
}

TEST(Dols, StandardErrorsScaledByLongRunVariance) {
    pipeline::SyntheticSpec spec;
    spec.n = 150;
    const auto d = pipeline::generate_synthetic(spec, 77).data;
    CointegrationOptions o;
    o.leads = 1;
    o.lags = 2;
    o.bandwidth = Bandwidth::fixed(3);
    const auto fit = cointegration_fit(CointegrationMethod::dols, d, "Y", {"X1"}, o);
    EXPECT_EQ(fit.n_effective, 150 - 1 - 3);
    EXPECT_EQ(fit.leads, 1);
    EXPECT_EQ(fit.lags, 2);
    EXPECT_GT(fit.long_run_variance, 0.0);
    EXPECT_NEAR(fit.coefficient("X1").std_error, std::sqrt(fit.covariance(1, 1)), 1e-15);
    EXPECT_THROW((void)fit.coefficient("X9"), ValidationError);
}

TEST(Cointegration, DefaultWindowAndWarnings) {
    EXPECT_EQ(dols_default_window(32), 1);
    EXPECT_EQ(dols_default_window(500), 1);
    EXPECT_EQ(dols_default_window(1600), 2);
    const auto s = degenerate_system(3, 15, 1);
    const auto fit = fmols_fit(s.y, s.x, names(1));
    EXPECT_FALSE(fit.warnings.empty());
    const auto big = degenerate_system(3, 40, 1);
    EXPECT_TRUE(fmols_fit(big.y, big.x, names(1)).warnings.empty());
}

TEST(Cointegration, Errors) {
    const auto s = degenerate_system(1, 40, 1);
    Eigen::MatrixXd lin(40, 1);
    for (int t = 0; t < 40; ++t) lin(t, 0) = 3.0 * t;  // constant differences
    EXPECT_THROW((void)fmols_fit(s.y, lin, names(1)), NumericalError);
    EXPECT_THROW((void)fmols_fit(s.y.head(39), s.x, names(1)), ValidationError);
    EXPECT_THROW((void)fmols_fit(s.y, s.x, names(2)), ValidationError);
    CointegrationOptions wide;
    wide.leads = 10;
    wide.lags = 10;
    EXPECT_THROW((void)dols_fit(s.y, s.x, names(1), wide), DataError);
}

TEST(Cointegration, SlopesRecoveredInLargeSample) {
    pipeline::SyntheticSpec spec;
    spec.n = 500;
    const auto d = pipeline::generate_synthetic(spec, 2).data;
    for (auto m : {CointegrationMethod::fmols, CointegrationMethod::dols, CointegrationMethod::ccr}) {
        const auto fit = cointegration_fit(m, d, "Y", {"X1"});
        EXPECT_NEAR(fit.coefficient("X1").coefficient, 2.0, 0.05) << to_string(m);
        EXPECT_DOUBLE_EQ(fit.bandwidth, std::floor(4.0 * std::pow(m == CointegrationMethod::dols
                                                                      ? (500.0 - 3.0) / 100.0
                                                                      : 499.0 / 100.0,
                                                                  2.0 / 9.0)));
    }
}

TEST(Cointegration, TrendOption) {
    pipeline::SyntheticSpec spec;
    spec.n = 120;
    const auto d = pipeline::generate_synthetic(spec, 8).data;
    CointegrationOptions o;
    o.trend = true;
    const auto fit = cointegration_fit(CointegrationMethod::fmols, d, "Y", {"X1"}, o);
    ASSERT_TRUE(fit.trend.has_value());
    EXPECT_EQ(fit.covariance.rows(), 3);
}
