#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "tsecon/ardl.hpp"
#include "tsecon/error.hpp"
#include "tsecon/pipeline/synthetic.hpp"
#include "tsecon/probability.hpp"
#include "tsecon/random.hpp"

using namespace tsecon;

namespace {

Dataset cointegrated(std::uint64_t seed, int n, std::vector<double> beta = {2.0}) {
    pipeline::SyntheticSpec s;
    s.n = n;
    s.beta = beta;
    s.regressors.clear();
    for (std::size_t j = 0; j < beta.size(); ++j) s.regressors.push_back("X" + std::to_string(j + 1));
    return pipeline::generate_synthetic(s, seed).data;
}

ArdlSpec make_spec(int p, std::vector<int> q, BoundsCase c = BoundsCase::restricted_constant) {
    ArdlSpec s;
    s.dependent = "Y";
    for (std::size_t j = 0; j < q.size(); ++j) s.regressors.push_back("X" + std::to_string(j + 1));
    s.p = p;
    s.q = std::move(q);
    s.deterministic_case = c;
    return s;
}

// Levels-form ARDL design on rows t = start..n-1: [1, y_{t-1..t-p}, x_{j,t..t-q_j}].
oracle::Ols levels_oracle(const Dataset& d, const ArdlSpec& s, int start) {
    const auto& y = d.at("Y").values();
    const int n = static_cast<int>(d.n_obs());
    int cols = 1 + s.p;
    for (int q : s.q) cols += q + 1;
    Eigen::MatrixXd x(n - start, cols);
    Eigen::VectorXd yy(n - start);
    for (int t = start; t < n; ++t) {
        int c = 0;
        x(t - start, c++) = 1.0;
        for (int i = 1; i <= s.p; ++i) x(t - start, c++) = y[t - i];
        for (std::size_t j = 0; j < s.q.size(); ++j) {
            const auto& xv = d.at(s.regressors[j]).values();
            for (int i = 0; i <= s.q[j]; ++i) x(t - start, c++) = xv[t - i];
        }
        yy(t - start) = y[t];
    }
    return oracle::ols(x, yy);
}

}  // namespace

TEST(ArdlSpec, LabelCountsAndValidation) {
    const auto s = make_spec(2, {1, 0, 3});
    EXPECT_EQ(s.label(), "ARDL(2,1,0,3)");
    EXPECT_EQ(s.max_lag(), 3);
    EXPECT_EQ(s.total_lags(), 6);
    EXPECT_EQ(s.n_params(), 1 + 4 + 1 + 4);
    EXPECT_THROW(make_spec(0, {1}).validate(100), ValidationError);
    EXPECT_THROW(make_spec(1, {-1}).validate(100), ValidationError);
    auto bad = make_spec(1, {1});
    bad.q.push_back(2);
    EXPECT_THROW(bad.validate(100), ValidationError);
    auto self = make_spec(1, {1});
    self.regressors[0] = "Y";
    EXPECT_THROW(self.validate(100), ValidationError);
    EXPECT_THROW(make_spec(2, {2, 2, 2}).validate(12), DataError);
}

TEST(Ardl, SingleLagThetaIsLevelsCoefficientMinusOne) {
    const auto d = cointegrated(3, 60);
    const auto spec = make_spec(1, {0});
    const auto fit = fit_ardl(d, spec);
    const auto o = levels_oracle(d, spec, 1);
    EXPECT_NEAR(fit.theta(0), o.beta(1) - 1.0, 1e-10);
    EXPECT_NEAR(fit.theta(1), o.beta(2), 1e-10);
    EXPECT_NEAR(fit.levels_fit.coef("C"), o.beta(0), 1e-9);
    EXPECT_NEAR(fit.levels_fit.rss, o.rss, 1e-10 * o.rss);
    EXPECT_EQ(fit.first_year, d.first_year() + 1);
    EXPECT_EQ(fit.levels_fit.names,
              (std::vector<std::string>{"C", "Y(-1)", "X1"}));
}

TEST(Ardl, ErrorCorrectionFormIsExactReparameterisation) {
    const auto d = cointegrated(8, 80, {2.0, -1.0});
    const auto spec = make_spec(3, {2, 0});
    const auto fit = fit_ardl(d, spec);
    const auto o = levels_oracle(d, spec, 3);
    // levels coefficients: C, y1, y2, y3, x1_0, x1_1, x1_2, x2_0
    EXPECT_NEAR(fit.levels_fit.rss, o.rss, 1e-10 * o.rss);
    EXPECT_NEAR((fit.levels_fit.residuals - o.resid).norm(), 0.0, 1e-9);
    EXPECT_NEAR(fit.theta(0), o.beta(1) + o.beta(2) + o.beta(3) - 1.0, 1e-9);
    EXPECT_NEAR(fit.theta(1), o.beta(4) + o.beta(5) + o.beta(6), 1e-9);
    EXPECT_NEAR(fit.theta(2), o.beta(7), 1e-9);
    EXPECT_EQ(fit.levels_fit.names,
              (std::vector<std::string>{"C", "Y(-1)", "X1(-1)", "X2", "D(Y(-1))", "D(Y(-2))", "D(X1)",
                                        "D(X1(-1))"}));
    EXPECT_EQ(fit.n_effective(), 77);
}

TEST(Ardl, SampleLagShiftsEstimationWindow) {
    const auto d = cointegrated(2, 40);
    const auto fit = fit_ardl(d, make_spec(1, {1}), 3);
    EXPECT_EQ(fit.n_effective(), 37);
    EXPECT_EQ(fit.first_year, d.first_year() + 3);
    EXPECT_THROW((void)fit_ardl(d, make_spec(2, {2}), 1), ValidationError);
    auto unknown = make_spec(1, {1});
    unknown.regressors[0] = "Q";
    EXPECT_THROW((void)fit_ardl(d, unknown), ValidationError);
}

TEST(Ardl, LongRunIdentityAndDeltaMethod) {
    const auto d = cointegrated(12, 70, {1.5, 0.5});
    const auto fit = fit_ardl(d, make_spec(2, {1, 2}));
    const auto lr = long_run(fit);
    ASSERT_EQ(lr.size(), 3u);
    EXPECT_EQ(lr[2].name, "C");
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(lr[j].coefficient, -fit.theta(j + 1) / fit.theta(0), 1e-12);
    EXPECT_NEAR(lr[2].coefficient, -fit.levels_fit.coef("C") / fit.theta(0), 1e-12);

    // Delta method against a central-difference gradient of g(theta) = -theta_j / theta_y.
    const auto& v = fit.levels_fit.coef_covariance;
    const Eigen::VectorXd b = fit.levels_fit.coefficients;
    for (int j = 0; j < 2; ++j) {
        const Eigen::Index num = fit.theta_index[j + 1], den = fit.theta_index[0];
        auto g = [&](const Eigen::VectorXd& c) { return -c(num) / c(den); };
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(b.size());
        for (Eigen::Index i : {num, den}) {
            const double h = 1e-6 * std::max(1.0, std::fabs(b(i)));
            Eigen::VectorXd up = b, dn = b;
            up(i) += h;
            dn(i) -= h;
            grad(i) = (g(up) - g(dn)) / (2.0 * h);
        }
        const double se = std::sqrt(grad.dot(v * grad));
        EXPECT_NEAR(lr[j].std_error, se, 1e-6 * se);
        EXPECT_DOUBLE_EQ(long_run_se(fit)[static_cast<std::size_t>(j)], lr[j].std_error);
    }
}

TEST(Ardl, LongRunStandardErrorAgreesWithParametricBootstrap) {
    // Resample coefficients from N(b, V) and compare the spread of -theta_x/theta_y with the delta SE.
    const auto d = cointegrated(31, 400);
    const auto fit = fit_ardl(d, make_spec(1, {1}));
    const auto lr = long_run(fit);
    const Eigen::MatrixXd chol = fit.levels_fit.coef_covariance.llt().matrixL();
    const Eigen::VectorXd b = fit.levels_fit.coefficients;
    Rng rng(99);
    const int reps = 4000;
    double s1 = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        Eigen::VectorXd z(b.size());
        for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = rng.normal();
        const Eigen::VectorXd c = b + chol * z;
        const double g = -c(fit.theta_index[1]) / c(fit.theta_index[0]);
        s1 += g;
        s2 += g * g;
    }
    const double sd = std::sqrt(s2 / reps - (s1 / reps) * (s1 / reps));
    EXPECT_NEAR(lr[0].std_error / sd, 1.0, 0.1);
}

TEST(Ardl, EcmOmegaEqualsOneStepThetaAndResidualsAgree) {
    for (std::uint64_t seed : {4u, 5u, 6u}) {
        const auto d = cointegrated(seed, 90, {2.0, 0.7});
        for (auto c : {BoundsCase::restricted_constant, BoundsCase::unrestricted_constant,
                       BoundsCase::unrestricted_constant_trend}) {
            const auto fit = fit_ardl(d, make_spec(2, {1, 0}, c));
            const auto ecm = ecm_fit(fit);
            const auto one_step = oracle::ols(fit.design.matrix(), fit.response);
            EXPECT_NEAR(ecm.ect.coefficient, one_step.beta(fit.theta_index[0]), 1e-8);
            EXPECT_NEAR(ecm.short_run_fit.rss, one_step.rss, 1e-8 * one_step.rss);
            EXPECT_EQ(ecm.ect.name, "CointEq(-1)");
            EXPECT_EQ(ecm.valid, ecm.ect.coefficient > -1.0 && ecm.ect.coefficient < 0.0);
        }
    }
}

TEST(Ardl, EcmRejectsZeroAdjustment) {
    // y is exactly a random walk with unit coefficient, so theta_y = 0 to rounding.
    Rng rng(1);
    std::vector<double> y(30), x(30);
    double a = 0.0;
    for (int i = 0; i < 30; ++i) {
        x[i] = rng.normal();
        y[i] = a += x[i];
    }
    Dataset d({TimeSeries("Y", 1990, y), TimeSeries("X1", 1990, x)});
    const auto fit = fit_ardl(d, make_spec(1, {0}));
    EXPECT_THROW((void)ecm_fit(fit), NumericalError);
    EXPECT_THROW((void)long_run(fit), NumericalError);
}

TEST(Bounds, FMatchesRssOracle) {
    const auto d = cointegrated(14, 60, {1.0, 2.0});
    for (auto c : {BoundsCase::restricted_constant, BoundsCase::unrestricted_constant,
                   BoundsCase::unrestricted_constant_trend}) {
        const auto fit = fit_ardl(d, make_spec(2, {1, 1}, c));
        const auto& x = fit.design.matrix();
        std::vector<Eigen::Index> keep;
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const auto& name = fit.design.names()[static_cast<std::size_t>(j)];
            const bool level = name == "Y(-1)" || name == "X1(-1)" || name == "X2(-1)";
            const bool restricted_c = c == BoundsCase::restricted_constant && name == "C";
            if (!level && !restricted_c) keep.push_back(j);
        }
        Eigen::MatrixXd xr(x.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t i = 0; i < keep.size(); ++i) xr.col(static_cast<Eigen::Index>(i)) = x.col(keep[i]);
        const double rss_u = oracle::ols(x, fit.response).rss;
        const double rss_r = oracle::ols(xr, fit.response).rss;
        const int q = static_cast<int>(x.cols() - xr.cols());
        const double f = ((rss_r - rss_u) / q) / (rss_u / static_cast<double>(x.rows() - x.cols()));
        const auto b = bounds_test(fit);
        EXPECT_NEAR(b.f_statistic, f, 1e-10 * f);
        EXPECT_EQ(b.restrictions, c == BoundsCase::restricted_constant ? 4 : 3);
        EXPECT_EQ(b.k, 2);
    }
}

TEST(Bounds, DecisionRule) {
    const auto hi = bounds_decision(5.8605, 5, BoundsCase::restricted_constant);
    EXPECT_EQ(hi.decision, BoundsDecision::cointegrated);
    ASSERT_TRUE(hi.level.has_value());
    EXPECT_DOUBLE_EQ(*hi.level, 0.01);
    EXPECT_TRUE(hi.cointegrated_at(0.05));
    EXPECT_EQ(bounds_decision(1.50, 5, BoundsCase::restricted_constant).decision, BoundsDecision::not_cointegrated);
    EXPECT_EQ(bounds_decision(2.50, 5, BoundsCase::restricted_constant).decision, BoundsDecision::inconclusive);
    const auto mid = bounds_decision(3.5, 5, BoundsCase::restricted_constant);
    EXPECT_DOUBLE_EQ(*mid.level, 0.05);
    EXPECT_TRUE(mid.cointegrated_at(0.05));
    EXPECT_FALSE(mid.cointegrated_at(0.01));
    EXPECT_DOUBLE_EQ(mid.bound_at(0.025).i1, 3.73);
    EXPECT_THROW((void)mid.bound_at(0.2), ValidationError);
    EXPECT_THROW((void)bounds_decision(3.0, 11, BoundsCase::restricted_constant), ValidationError);
}

TEST(Bounds, EmbeddedTableValues) {
    const auto b = pss_f_bounds(BoundsCase::restricted_constant, 5);
    const double i0[] = {2.08, 2.39, 2.70, 3.06};
    const double i1[] = {3.00, 3.38, 3.73, 4.15};
    for (int i = 0; i < 4; ++i) {
        EXPECT_EQ(b[i].i0, i0[i]);
        EXPECT_EQ(b[i].i1, i1[i]);
    }
    for (auto c : {BoundsCase::restricted_constant, BoundsCase::unrestricted_constant,
                   BoundsCase::unrestricted_constant_trend}) {
        for (int k = 1; k <= 10; ++k) {
            const auto t = pss_f_bounds(c, k);
            for (int i = 0; i < 4; ++i) {
                EXPECT_LT(t[i].i0, t[i].i1);
                if (i > 0) EXPECT_GT(t[i].i1, t[i - 1].i1);
            }
        }
    }
    EXPECT_THROW((void)pss_f_bounds(BoundsCase::unrestricted_constant, 0), ValidationError);
}

TEST(Bounds, ValidityRule) {
    EXPECT_TRUE(ecm_coefficient_valid(-0.226));
    EXPECT_FALSE(ecm_coefficient_valid(0.05));
    EXPECT_FALSE(ecm_coefficient_valid(-1.0));
    EXPECT_FALSE(ecm_coefficient_valid(0.0));
}

TEST(LagSelection, MatchesBruteForceOnCommonSample) {
    const auto d = cointegrated(21, 50, {2.0, -0.5});
    const int max_p = 2, max_q = 2;
    const auto sel = select_lags(d, "Y", {"X1", "X2"}, max_p, max_q, InfoCriterion::aic);
    EXPECT_EQ(sel.candidates_evaluated, 2 * 3 * 3);
    double best = 1e300;
    ArdlSpec best_spec;
    for (int p = 1; p <= max_p; ++p) {
        for (int q1 = 0; q1 <= max_q; ++q1) {
            for (int q2 = 0; q2 <= max_q; ++q2) {
                const auto s = make_spec(p, {q1, q2});
                const auto o = levels_oracle(d, s, 2);
                const double n = static_cast<double>(o.resid.size());
                const double k = static_cast<double>(o.beta.size());
                const double ll = -n / 2.0 * (1.0 + std::log(2.0 * M_PI) + std::log(o.rss / n));
                const double aic = -2.0 * ll / n + 2.0 * k / n;
                if (aic < best - 1e-12) {
                    best = aic;
                    best_spec = s;
                }
            }
        }
    }
    EXPECT_EQ(sel.spec, best_spec);
    EXPECT_NEAR(sel.criterion_value, best, 1e-10);
}

TEST(LagSelection, InvalidGrid) {
    const auto d = cointegrated(2, 30);
    EXPECT_THROW((void)select_lags(d, "Y", {"X1"}, 0, 1), ValidationError);
    EXPECT_THROW((void)select_lags(d, "Y", {"X1"}, 1, -1), ValidationError);
    EXPECT_THROW((void)select_lags(d, "Y", {"X1"}, 26, 0), DataError);
}

TEST(Ardl, SyntheticCointegrationRecoversLongRun) {
    const auto d = cointegrated(2024, 200);
    const auto sel = select_lags(d, "Y", {"X1"}, 2, 2, InfoCriterion::sic);
    const auto fit = fit_ardl(d, sel.spec, 2);
    const auto b = bounds_test(fit);
    EXPECT_TRUE(b.cointegrated_at(0.05));
    const auto ecm = ecm_fit(fit);
    EXPECT_NEAR(ecm.long_run[0].coefficient, 2.0, 0.1);
    EXPECT_TRUE(ecm.valid);
}
