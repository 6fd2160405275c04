#include "tsecon/unit_root.hpp"

#include <cmath>
#include <limits>

#include "tsecon/error.hpp"

namespace tsecon {

std::string to_string(UnitRootTest t) {
    switch (t) {
        case UnitRootTest::adf: return "ADF";
        case UnitRootTest::pp: return "PP";
        case UnitRootTest::dfgls: return "DF-GLS";
    }
    return "?";
}

std::string to_string(InfoCriterion c) { return c == InfoCriterion::aic ? "aic" : "sic"; }

std::string to_string(IntegrationOrder o) {
    switch (o) {
        case IntegrationOrder::I0: return "I(0)";
        case IntegrationOrder::I1: return "I(1)";
        case IntegrationOrder::higher: return "I(2)+";
    }
    return "?";
}

LagPolicy LagPolicy::fixed(int p) {
    if (p < 0) throw ValidationError("lag order must be non-negative");
    LagPolicy out;
    out.fixed_ = true;
    out.order_ = p;
    return out;
}

LagPolicy LagPolicy::auto_ic(std::optional<int> max_p, InfoCriterion criterion) {
    if (max_p && *max_p < 0) throw ValidationError("maximum lag must be non-negative");
    LagPolicy out;
    out.max_p_ = max_p;
    out.criterion_ = criterion;
    return out;
}

int schwert_max_lag(std::size_t n) {
    return static_cast<int>(std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

bool UnitRootResult::rejects_at(double level) const {
    if (std::fabs(level - 0.01) < 1e-12) return statistic < critical_values.pct1;
    if (std::fabs(level - 0.05) < 1e-12) return statistic < critical_values.pct5;
    if (std::fabs(level - 0.10) < 1e-12) return statistic < critical_values.pct10;
    throw ValidationError("unit-root decisions are available at the 1%, 5% and 10% levels");
}

std::string significance_marker(double statistic, const CriticalValues& cv) {
    if (statistic < cv.pct1) return "***";
    if (statistic < cv.pct5) return "**";
    if (statistic < cv.pct10) return "*";
    return "";
}

namespace {

int deterministic_columns(Deterministic det) {
    switch (det) {
        case Deterministic::none: return 0;
        case Deterministic::constant: return 1;
        case Deterministic::constant_trend: return 2;
    }
    return 0;
}

int max_feasible_lag(std::size_t n, Deterministic det) {
    // n_eff = n - 1 - p must be at least (det + 1 + p) + 5.
    return (static_cast<int>(n) - 7 - deterministic_columns(det)) / 2;
}

void require_variation(std::span<const double> y) {
    if (y.size() < 3) throw DataError("series too short for a unit-root test");
    const double d0 = y[1] - y[0];
    bool varies = false;
    for (std::size_t t = 2; t < y.size() && !varies; ++t) varies = (y[t] - y[t - 1]) != d0;
    if (!varies) throw DataError("variance zero: first differences are constant");
}

struct DfRegression {
    OlsFit fit;
    Eigen::Index rho_index = 0;
};

// dy_t = [det] + rho * y_{t-1} + sum_{i=1..p} phi_i dy_{t-i}, for t = first..n-1.
DfRegression df_regression(std::span<const double> y, Deterministic det, int p, std::size_t first) {
    const std::size_t n = y.size();
    const auto rows = static_cast<Eigen::Index>(n - first);
    Eigen::VectorXd dy(rows);
    Eigen::VectorXd level(rows);
    Eigen::VectorXd trend(rows);
    Eigen::MatrixXd lags(rows, p);
    for (std::size_t t = first; t < n; ++t) {
        const auto r = static_cast<Eigen::Index>(t - first);
        dy(r) = y[t] - y[t - 1];
        level(r) = y[t - 1];
        trend(r) = static_cast<double>(t);
        for (int i = 1; i <= p; ++i) lags(r, i - 1) = y[t - i] - y[t - i - 1];
    }
    DesignBuilder b(rows);
    if (det != Deterministic::none) b.intercept();
    if (det == Deterministic::constant_trend) b.add("TREND", trend);
    const Eigen::Index rho_index = b.cols();
    b.add("Y(-1)", level);
    for (int i = 1; i <= p; ++i) b.add("DY(-" + std::to_string(i) + ")", lags.col(i - 1));
    return DfRegression{ols_fit(dy, b.build()), rho_index};
}

// Picks the lag order (fixed or by IC on the common sample) and returns the
// regression re-estimated on the largest sample for that order.
DfRegression augmented_regression(std::span<const double> y, Deterministic det, const LagPolicy& policy,
                                  int& lags_used) {
    const std::size_t n = y.size();
    const int feasible = max_feasible_lag(n, det);
    if (feasible < 0) {
        throw DataError("series too short for a unit-root test: n = " + std::to_string(n));
    }
    if (policy.is_fixed()) {
        if (policy.order() > feasible) {
            throw DataError("series too short for " + std::to_string(policy.order()) +
                            " lags: n = " + std::to_string(n));
        }
        lags_used = policy.order();
        return df_regression(y, det, lags_used, static_cast<std::size_t>(lags_used) + 1);
    }
    const int max_p = std::min(policy.max_p().value_or(schwert_max_lag(n)), feasible);
    const auto common = static_cast<std::size_t>(max_p) + 1;
    double best = std::numeric_limits<double>::infinity();
    int best_p = 0;
    for (int p = 0; p <= max_p; ++p) {
        const auto fit = df_regression(y, det, p, common).fit;
        const double ic = policy.criterion() == InfoCriterion::aic ? fit.aic : fit.sic;
        if (ic < best - 1e-12) {
            best = ic;
            best_p = p;
        }
    }
    lags_used = best_p;
    return df_regression(y, det, best_p, static_cast<std::size_t>(best_p) + 1);
}

UnitRootResult finish(UnitRootTest test, Deterministic det, double statistic, CriticalValues cv,
                      int n_eff) {
    UnitRootResult r;
    r.test = test;
    r.deterministic = det;
    r.statistic = statistic;
    r.critical_values = cv;
    r.marker = significance_marker(statistic, cv);
    r.n_effective = n_eff;
    return r;
}

}  // namespace

UnitRootResult adf_test(std::span<const double> y, const UnitRootSpec& spec) {
    if (spec.deterministic == Deterministic::none) {
        throw ValidationError("ADF test supports constant or constant+trend deterministics");
    }
    require_variation(y);
    int lags = 0;
    const auto reg = augmented_regression(y, spec.deterministic, spec.lags, lags);
    const auto n_eff = static_cast<int>(reg.fit.n);
    auto r = finish(UnitRootTest::adf, spec.deterministic, reg.fit.t_stats(reg.rho_index),
                    mackinnon_tau(spec.deterministic, n_eff), n_eff);
    r.lags_used = lags;
    return r;
}

UnitRootResult pp_test(std::span<const double> y, const UnitRootSpec& spec) {
    if (spec.deterministic == Deterministic::none) {
        throw ValidationError("PP test supports constant or constant+trend deterministics");
    }
    require_variation(y);
    if (max_feasible_lag(y.size(), spec.deterministic) < 0) {
        throw DataError("series too short for a unit-root test: n = " + std::to_string(y.size()));
    }
    const auto reg = df_regression(y, spec.deterministic, 0, 1);
    const auto& fit = reg.fit;
    const double t_rho = fit.t_stats(reg.rho_index);
    const double se_rho = fit.std_errors(reg.rho_index);
    const double nobs = static_cast<double>(fit.n);
    const auto lr = long_run_variance(
        std::span<const double>(fit.residuals.data(), static_cast<std::size_t>(fit.residuals.size())),
        spec.bandwidth);
    const double gamma0 = fit.rss / nobs;
    const double omega = lr.omega;
    if (!(omega > 0.0)) throw NumericalError("non-positive long-run variance in PP test");
    const double s = std::sqrt(fit.sigma2);
    const double z_t = std::sqrt(gamma0 / omega) * t_rho -
                       0.5 * (omega - gamma0) / std::sqrt(omega) * (nobs * se_rho / s);
    const auto n_eff = static_cast<int>(fit.n);
    auto r = finish(UnitRootTest::pp, spec.deterministic, z_t,
                    mackinnon_tau(spec.deterministic, n_eff), n_eff);
    r.bandwidth_used = lr.bandwidth;
    return r;
}

std::vector<double> gls_detrend(std::span<const double> y, Deterministic det) {
    if (det == Deterministic::none) {
        throw ValidationError("GLS detrending requires a constant or constant+trend deterministics");
    }
    const std::size_t n = y.size();
    if (n < 3) throw DataError("series too short for GLS detrending");
    const double cbar = det == Deterministic::constant ? -7.0 : -13.5;
    const double alpha = 1.0 + cbar / static_cast<double>(n);
    const auto rows = static_cast<Eigen::Index>(n);
    Eigen::VectorXd yq(rows);
    Eigen::VectorXd c(rows);
    Eigen::VectorXd tr(rows);
    yq(0) = y[0];
    c(0) = 1.0;
    tr(0) = 1.0;
    for (std::size_t t = 1; t < n; ++t) {
        const auto r = static_cast<Eigen::Index>(t);
        yq(r) = y[t] - alpha * y[t - 1];
        c(r) = 1.0 - alpha;
        tr(r) = static_cast<double>(t + 1) - alpha * static_cast<double>(t);
    }
    DesignBuilder b(rows);
    b.add("Z_C", c);
    if (det == Deterministic::constant_trend) b.add("Z_TREND", tr);
    const auto fit = ols_fit(yq, b.build());
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        double d = fit.coefficients(0);
        if (det == Deterministic::constant_trend) d += fit.coefficients(1) * static_cast<double>(t + 1);
        out[t] = y[t] - d;
    }
    return out;
}

UnitRootResult dfgls_test(std::span<const double> y, const UnitRootSpec& spec) {
    require_variation(y);
    const auto detrended = gls_detrend(y, spec.deterministic);
    int lags = 0;
    const auto reg = augmented_regression(detrended, Deterministic::none, spec.lags, lags);
    const auto n_eff = static_cast<int>(reg.fit.n);
    auto r = finish(UnitRootTest::dfgls, spec.deterministic, reg.fit.t_stats(reg.rho_index),
                    ers_dfgls(spec.deterministic, n_eff), n_eff);
    r.lags_used = lags;
    return r;
}

UnitRootResult unit_root_test(std::span<const double> y, const UnitRootSpec& spec) {
    switch (spec.test) {
        case UnitRootTest::adf: return adf_test(y, spec);
        case UnitRootTest::pp: return pp_test(y, spec);
        case UnitRootTest::dfgls: return dfgls_test(y, spec);
    }
    throw ValidationError("unknown unit-root test");
}

UnitRootResult unit_root_test(const TimeSeries& s, const UnitRootSpec& spec) {
    return unit_root_test(s.values(), spec);
}

IntegrationDecision classify_integration(const UnitRootResult& level, const UnitRootResult& diff) {
    IntegrationDecision d;
    d.level = level;
    d.diff = diff;
    if (level.rejects_at(0.05)) {
        d.order = IntegrationOrder::I0;
    } else if (diff.rejects_at(0.05)) {
        d.order = IntegrationOrder::I1;
    } else {
        d.order = IntegrationOrder::higher;
    }
    return d;
}

IntegrationDecision integration_order(const TimeSeries& s, const UnitRootSpec& spec) {
    const auto level = unit_root_test(s, spec);
    const auto diff = unit_root_test(difference(s, 1), spec);
    return classify_integration(level, diff);
}

}  // namespace tsecon
