#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tsecon/critical_values.hpp"
#include "tsecon/error.hpp"
#include "tsecon/random.hpp"
#include "tsecon/unit_root.hpp"

using namespace tsecon;

namespace {

std::vector<double> random_walk(std::uint64_t seed, int n, double drift = 0.0) {
    Rng rng(seed);
    std::vector<double> y(n);
    double v = 0.0;
    for (auto& x : y) x = v += drift + rng.normal();
    return y;
}

std::vector<double> ar1(std::uint64_t seed, int n, double phi) {
    Rng rng(seed);
    std::vector<double> y(n);
    double v = 0.0;
    for (auto& x : y) x = v = phi * v + rng.normal();
    return y;
}

// Oracle DF regression: dy_t on [det, y_{t-1}, dy_{t-1..p}] for t = p+1..n-1.
oracle::Ols df_oracle(const std::vector<double>& y, int det_cols, int p) {
    const int n = static_cast<int>(y.size());
    const int rows = n - 1 - p;
    Eigen::MatrixXd x(rows, det_cols + 1 + p);
    Eigen::VectorXd dy(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = r + p + 1;
        int c = 0;
        if (det_cols >= 1) x(r, c++) = 1.0;
        if (det_cols == 2) x(r, c++) = t;
        x(r, c++) = y[t - 1];
        for (int i = 1; i <= p; ++i) x(r, c++) = y[t - i] - y[t - i - 1];
        dy(r) = y[t] - y[t - 1];
    }
    return oracle::ols(x, dy);
}

UnitRootSpec spec(UnitRootTest t, Deterministic d, LagPolicy lags, Bandwidth bw = Bandwidth::automatic()) {
    UnitRootSpec s;
    s.test = t;
    s.deterministic = d;
    s.lags = lags;
    s.bandwidth = bw;
    return s;
}

}  // namespace

TEST(Adf, FixedLagMatchesDirectRegression) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto y = random_walk(seed, 90, 0.2);
        for (int p : {0, 1, 3}) {
            const auto c = adf_test(y, spec(UnitRootTest::adf, Deterministic::constant, LagPolicy::fixed(p)));
            const auto oc = df_oracle(y, 1, p);
            EXPECT_NEAR(c.statistic, oc.t(1), 1e-10 * std::fabs(oc.t(1)));
            EXPECT_EQ(c.lags_used, p);
            EXPECT_EQ(c.n_effective, 89 - p);
            const auto ct =
                adf_test(y, spec(UnitRootTest::adf, Deterministic::constant_trend, LagPolicy::fixed(p)));
            const auto oct = df_oracle(y, 2, p);
            EXPECT_NEAR(ct.statistic, oct.t(2), 1e-10 * std::fabs(oct.t(2)));
        }
    }
}

TEST(Adf, AutomaticLagIsWithinBounds) {
    const auto y = ar1(8, 120, 0.9);
    const auto r = adf_test(y, spec(UnitRootTest::adf, Deterministic::constant, LagPolicy::auto_ic(4)));
    EXPECT_GE(r.lags_used, 0);
    EXPECT_LE(r.lags_used, 4);
    // The selected order reproduces the statistic when fixed.
    const auto f = adf_test(y, spec(UnitRootTest::adf, Deterministic::constant, LagPolicy::fixed(r.lags_used)));
    EXPECT_DOUBLE_EQ(f.statistic, r.statistic);
    EXPECT_EQ(schwert_max_lag(100), 12);
    EXPECT_EQ(schwert_max_lag(32), 9);
}

TEST(Adf, StationarySeriesRejectsRandomWalkDoesNot) {
    const auto s = ar1(5, 200, 0.3);
    EXPECT_TRUE(adf_test(s).rejects_at(0.01));
    EXPECT_EQ(adf_test(s).marker, "***");
}

TEST(Adf, Errors) {
    EXPECT_THROW((void)adf_test(std::vector<double>{1, 2}), DataError);
    std::vector<double> line(30);
    for (int i = 0; i < 30; ++i) line[i] = 2.0 * i;
    try {
        (void)adf_test(line);
        FAIL();
    } catch (const DataError& e) {
        EXPECT_NE(std::string(e.what()).find("variance zero"), std::string::npos);
    }
    EXPECT_THROW((void)adf_test(random_walk(1, 8),
                                spec(UnitRootTest::adf, Deterministic::constant, LagPolicy::fixed(5))),
                 DataError);
    EXPECT_THROW((void)adf_test(random_walk(1, 30), spec(UnitRootTest::adf, Deterministic::none,
                                                          LagPolicy::fixed(0))),
                 ValidationError);
    EXPECT_THROW((void)LagPolicy::fixed(-1), ValidationError);
}

TEST(PhillipsPerron, ZeroBandwidthEqualsAdfZero) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto y = random_walk(seed, 60);
        for (auto det : {Deterministic::constant, Deterministic::constant_trend}) {
            const auto pp = pp_test(y, spec(UnitRootTest::pp, det, LagPolicy::fixed(0), Bandwidth::fixed(0)));
            const auto adf = adf_test(y, spec(UnitRootTest::adf, det, LagPolicy::fixed(0)));
            EXPECT_NEAR(pp.statistic, adf.statistic, 1e-10 * std::fabs(adf.statistic));
        }
    }
}

TEST(PhillipsPerron, MatchesClosedForm) {
    const auto y = ar1(17, 70, 0.8);
    const double bw = 3.0;
    const auto o = df_oracle(y, 1, 0);
    const double T = static_cast<double>(o.resid.size());
    const double g0 = o.resid.squaredNorm() / T;
    double omega = g0;
    for (int j = 1; j < o.resid.size(); ++j) {
        const double w = std::max(0.0, 1.0 - j / (bw + 1.0));
        double g = 0.0;
        for (Eigen::Index t = j; t < o.resid.size(); ++t) g += o.resid(t) * o.resid(t - j);
        omega += 2.0 * w * g / T;
    }
    const double s = std::sqrt(o.sigma2);
    const double expect = std::sqrt(g0 / omega) * o.t(1) - 0.5 * (omega - g0) / std::sqrt(omega) * (T * o.se(1) / s);
    const auto pp = pp_test(y, spec(UnitRootTest::pp, Deterministic::constant, LagPolicy::fixed(0),
                                    Bandwidth::fixed(bw)));
    EXPECT_NEAR(pp.statistic, expect, 1e-10 * std::fabs(expect));
    EXPECT_DOUBLE_EQ(pp.bandwidth_used, bw);
}

TEST(DfGls, DetrendingMatchesQuasiDifferenceRegression) {
    const auto y = random_walk(23, 50, 0.5);
    const int n = 50;
    const double alpha = 1.0 - 13.5 / n;
    Eigen::MatrixXd z(n, 2);
    Eigen::VectorXd yq(n);
    for (int t = 0; t < n; ++t) {
        const double tt = t + 1;
        z(t, 0) = t == 0 ? 1.0 : 1.0 - alpha;
        z(t, 1) = t == 0 ? 1.0 : tt - alpha * (tt - 1.0);
        yq(t) = t == 0 ? y[0] : y[t] - alpha * y[t - 1];
    }
    const auto o = oracle::ols(z, yq);
    const auto d = gls_detrend(y, Deterministic::constant_trend);
    for (int t = 0; t < n; ++t) EXPECT_NEAR(d[t], y[t] - o.beta(0) - o.beta(1) * (t + 1), 1e-10);
}

TEST(DfGls, StatisticIsNoDeterministicAdfOnDetrendedSeries) {
    const auto y = random_walk(29, 80, 0.1);
    for (auto det : {Deterministic::constant, Deterministic::constant_trend}) {
        const auto d = gls_detrend(y, det);
        const auto o = df_oracle(d, 0, 2);
        const auto r = dfgls_test(y, spec(UnitRootTest::dfgls, det, LagPolicy::fixed(2)));
        EXPECT_NEAR(r.statistic, o.t(0), 1e-10 * std::fabs(o.t(0)));
    }
}

TEST(CriticalValues, MacKinnonAsymptotesAndOrdering) {
    const auto c = mackinnon_tau(Deterministic::constant, 1000000);
    EXPECT_NEAR(c.pct1, -3.43035, 1e-4);
    EXPECT_NEAR(c.pct5, -2.86154, 1e-4);
    EXPECT_NEAR(c.pct10, -2.56677, 1e-4);
    const auto ct = mackinnon_tau(Deterministic::constant_trend, 1000000);
    EXPECT_NEAR(ct.pct5, -3.41049, 1e-4);
    const auto nc = mackinnon_tau(Deterministic::none, 1000000);
    EXPECT_NEAR(nc.pct5, -1.94100, 1e-4);
    for (int n : {20, 30, 50, 100, 500}) {
        for (auto det : {Deterministic::none, Deterministic::constant, Deterministic::constant_trend}) {
            const auto cv = mackinnon_tau(det, n);
            EXPECT_LT(cv.pct1, cv.pct5);
            EXPECT_LT(cv.pct5, cv.pct10);
        }
        // Small samples push the critical values further left.
        EXPECT_LT(mackinnon_tau(Deterministic::constant, n).pct5, c.pct5);
    }
}

TEST(CriticalValues, ErsTableNodes) {
    const auto t100 = ers_dfgls(Deterministic::constant_trend, 100);
    EXPECT_NEAR(t100.pct1, -3.58, 1e-12);
    EXPECT_NEAR(t100.pct5, -3.03, 1e-12);
    EXPECT_NEAR(t100.pct10, -2.74, 1e-12);
    const auto t50 = ers_dfgls(Deterministic::constant_trend, 50);
    EXPECT_NEAR(t50.pct5, -3.19, 1e-12);
    // Linear in 1/T between the nodes.
    const auto t75 = ers_dfgls(Deterministic::constant_trend, 75);
    const double w = (1.0 / 75 - 1.0 / 100) / (1.0 / 50 - 1.0 / 100);
    EXPECT_NEAR(t75.pct5, -3.03 + w * (-3.19 + 3.03), 1e-12);
}

TEST(Marker, ConsistentWithCriticalValues) {
    const CriticalValues cv{-3.5, -2.9, -2.6};
    for (double s = -5.0; s < 1.0; s += 0.01) {
        const auto m = significance_marker(s, cv);
        const std::string expect = s < cv.pct1 ? "***" : s < cv.pct5 ? "**" : s < cv.pct10 ? "*" : "";
        EXPECT_EQ(m, expect) << s;
    }
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        const auto r = adf_test(ar1(seed, 60, 0.7));
        EXPECT_EQ(r.rejects_at(0.01), r.marker == "***");
        EXPECT_EQ(r.rejects_at(0.05), r.marker.size() >= 2);
        EXPECT_EQ(r.rejects_at(0.10), !r.marker.empty());
    }
    EXPECT_THROW((void)adf_test(ar1(1, 60, 0.7)).rejects_at(0.2), ValidationError);
}

TEST(Integration, Classification) {
    UnitRootResult rej, acc;
    rej.statistic = -5.0;
    rej.critical_values = {-3.5, -2.9, -2.6};
    acc.statistic = -1.0;
    acc.critical_values = rej.critical_values;
    EXPECT_EQ(classify_integration(rej, acc).order, IntegrationOrder::I0);
    EXPECT_EQ(classify_integration(acc, rej).order, IntegrationOrder::I1);
    EXPECT_EQ(classify_integration(acc, acc).order, IntegrationOrder::higher);
    EXPECT_EQ(to_string(IntegrationOrder::higher), "I(2)+");
    EXPECT_EQ(to_string(IntegrationOrder::I1), "I(1)");
}

TEST(Integration, RandomWalkAndDoubleIntegrated) {
    const TimeSeries rw("X", 1900, random_walk(3, 150));
    EXPECT_EQ(integration_order(rw, {}).order, IntegrationOrder::I1);
    std::vector<double> i2(150);
    double acc = 0.0;
    const auto w = random_walk(4, 150);
    for (int i = 0; i < 150; ++i) i2[i] = acc += w[i];
    EXPECT_EQ(integration_order(TimeSeries("Z", 1900, i2), {}).order, IntegrationOrder::higher);
    EXPECT_EQ(integration_order(TimeSeries("S", 1900, ar1(5, 150, 0.2)), {}).order, IntegrationOrder::I0);
}
