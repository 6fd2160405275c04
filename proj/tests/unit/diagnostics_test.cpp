#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tsecon/diagnostics.hpp"
#include "tsecon/error.hpp"
#include "tsecon/probability.hpp"
#include "tsecon/random.hpp"

using namespace tsecon;

namespace {

OlsFit sample_fit(std::uint64_t seed, int n, double ar) {
    Rng rng(seed);
    Eigen::VectorXd x1(n), x2(n), y(n);
    double u = 0.0;
    for (int i = 0; i < n; ++i) {
        x1(i) = rng.normal();
        x2(i) = rng.normal() + 0.5 * x1(i);
        u = ar * u + rng.normal() * (1.0 + 0.8 * std::fabs(x2(i)));
        y(i) = 1.0 + 2.0 * x1(i) - x2(i) + u;
    }
    return ols_fit(y, DesignBuilder(n).intercept().add("X1", x1).add("X2", x2).build());
}

double centered_r2(const Eigen::VectorXd& y, const Eigen::VectorXd& resid) {
    return 1.0 - resid.squaredNorm() / (y.array() - y.mean()).matrix().squaredNorm();
}

}  // namespace

TEST(JarqueBera, FromResidualsAndMoments) {
    Rng rng(5);
    std::vector<double> e(200);
    for (auto& v : e) v = rng.normal() + 0.2 * rng.normal() * rng.normal() * rng.normal();
    const auto m = oracle::moments(e);
    const double s = m.m3 / std::pow(m.m2, 1.5), k = m.m4 / (m.m2 * m.m2);
    const auto r = jarque_bera(e);
    EXPECT_NEAR(r.statistic, 200.0 / 6.0 * (s * s + (k - 3) * (k - 3) / 4.0), 1e-10);
    EXPECT_NEAR(r.p_value, std::exp(-r.statistic / 2.0), 1e-12);
    EXPECT_EQ(r.df, std::vector<double>{2.0});
    EXPECT_EQ(r.name, "Jarque-Bera");
}

TEST(JarqueBera, DecisionText) {
    const auto ok = jarque_bera(0.1, 3.1, 32);
    EXPECT_FALSE(ok.rejected);
    EXPECT_EQ(ok.decision, "Residuals are normally distributed");
    const auto bad = jarque_bera(1.5, 6.0, 100);
    EXPECT_TRUE(bad.rejected);
    EXPECT_EQ(bad.decision, "Residuals are not normally distributed");
    EXPECT_DOUBLE_EQ(bad.decision_at, 0.05);
    EXPECT_THROW((void)jarque_bera(std::vector<double>{1, 2, 3}), DataError);
    EXPECT_THROW((void)jarque_bera(0.0, 3.0, 40, 1.5), ValidationError);
}

TEST(BreuschGodfrey, MatchesAuxiliaryRegressionOracle) {
    const auto fit = sample_fit(3, 60, 0.6);
    for (int order : {1, 2, 4}) {
        Eigen::MatrixXd z(60, 3 + order);
        z.leftCols(3) = fit.regressors;
        for (int i = 1; i <= order; ++i) {
            for (int t = 0; t < 60; ++t) z(t, 2 + i) = t >= i ? fit.residuals(t - i) : 0.0;
        }
        const auto aux = oracle::ols(z, fit.residuals);
        const double lm = 60.0 * centered_r2(fit.residuals, aux.resid);
        const auto r = breusch_godfrey(fit, order);
        EXPECT_NEAR(r.statistic, lm, 1e-9);
        EXPECT_NEAR(r.p_value, survival(Distribution::chi_square(order), lm), 1e-10);
    }
    EXPECT_TRUE(breusch_godfrey(fit, 2).rejected);
    EXPECT_EQ(breusch_godfrey(fit, 2).decision, "Serial correlation exists");
    EXPECT_THROW((void)breusch_godfrey(fit, 0), ValidationError);
    EXPECT_THROW((void)breusch_godfrey(fit, 57), ValidationError);
}

TEST(BreuschPaganGodfrey, MatchesAuxiliaryRegressionOracle) {
    const auto fit = sample_fit(9, 300, 0.0);
    const Eigen::VectorXd e2 = fit.residuals.array().square();
    const auto aux = oracle::ols(fit.regressors, e2);
    const double lm = 300.0 * centered_r2(e2, aux.resid);
    const auto r = breusch_pagan_godfrey(fit);
    EXPECT_NEAR(r.statistic, lm, 1e-9);
    EXPECT_EQ(r.df, std::vector<double>{2.0});
    EXPECT_TRUE(r.rejected);
    EXPECT_EQ(r.decision, "Heteroscedasticity exists");
}

TEST(Granger, MatchesRssFormula) {
    Rng rng(17);
    const int n = 32, lag = 2;
    std::vector<double> x(n), y(n);
    for (int t = 0; t < n; ++t) {
        x[t] = rng.normal() + (t > 0 ? 0.5 * x[t - 1] : 0.0);
        y[t] = rng.normal() + (t > 1 ? 0.4 * x[t - 2] + 0.3 * y[t - 1] : 0.0);
    }
    const Dataset d({TimeSeries("Y", 1990, y), TimeSeries("X", 1990, x)});
    const int obs = n - lag;
    Eigen::MatrixXd zu(obs, 1 + 2 * lag);
    Eigen::VectorXd resp(obs);
    for (int t = lag; t < n; ++t) {
        zu(t - lag, 0) = 1.0;
        for (int i = 1; i <= lag; ++i) {
            zu(t - lag, i) = y[t - i];
            zu(t - lag, lag + i) = x[t - i];
        }
        resp(t - lag) = y[t];
    }
    const double rss_u = oracle::ols(zu, resp).rss;
    const double rss_r = oracle::ols(zu.leftCols(1 + lag), resp).rss;
    const double f = ((rss_r - rss_u) / lag) / (rss_u / (obs - 2 * lag - 1));
    const auto g = granger_test(d, "X", "Y", lag);
    EXPECT_EQ(g.obs, 30);
    EXPECT_NEAR(g.f_statistic, f, 1e-10 * f);
    EXPECT_NEAR(g.p_value, survival(Distribution::f(2, 25), f), 1e-12);
    // Direction matters.
    const auto rev = granger_test(d, "Y", "X", lag);
    EXPECT_NE(rev.f_statistic, g.f_statistic);
}

TEST(Granger, PairwiseOrderingAndErrors) {
    Rng rng(2);
    std::vector<double> a(40), b(40), c(40);
    for (int i = 0; i < 40; ++i) {
        a[i] = rng.normal();
        b[i] = rng.normal();
        c[i] = rng.normal();
    }
    const Dataset d({TimeSeries("A", 1, a), TimeSeries("B", 1, b), TimeSeries("C", 1, c)});
    const auto pairs = granger_pairwise(d, {"A", "B", "C"}, 1);
    ASSERT_EQ(pairs.size(), 4u);
    EXPECT_EQ(pairs[0].cause, "B");
    EXPECT_EQ(pairs[0].effect, "A");
    EXPECT_EQ(pairs[1].cause, "A");
    EXPECT_EQ(pairs[1].effect, "B");
    EXPECT_EQ(pairs[2].cause, "C");
    EXPECT_EQ(pairs[3].effect, "C");
    EXPECT_THROW((void)granger_test(d, "A", "A", 1), ValidationError);
    EXPECT_THROW((void)granger_test(d, "A", "B", 0), ValidationError);
    EXPECT_THROW((void)granger_test(d, "A", "B", 15), DataError);
    EXPECT_THROW((void)granger_pairwise(d, {"A"}, 1), ValidationError);
}
