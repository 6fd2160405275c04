#include "tsecon/ardl.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tsecon/error.hpp"
#include "tsecon/probability.hpp"

namespace tsecon {

std::string to_string(BoundsCase c) {
    switch (c) {
        case BoundsCase::restricted_constant: return "restricted_constant";
        case BoundsCase::unrestricted_constant: return "unrestricted_constant";
        case BoundsCase::unrestricted_constant_trend: return "unrestricted_constant_trend";
    }
    return "?";
}

std::string to_string(BoundsDecision d) {
    switch (d) {
        case BoundsDecision::cointegrated: return "cointegrated";
        case BoundsDecision::inconclusive: return "inconclusive";
        case BoundsDecision::not_cointegrated: return "not_cointegrated";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// ArdlSpec

int ArdlSpec::max_lag() const {
    int m = std::max(p, 1);
    for (int qi : q) m = std::max(m, qi);
    return m;
}

int ArdlSpec::total_lags() const { return p + std::accumulate(q.begin(), q.end(), 0); }

int ArdlSpec::n_params() const {
    const int det = deterministic_case == BoundsCase::unrestricted_constant_trend ? 2 : 1;
    const int levels = 1 + static_cast<int>(regressors.size());
    return det + levels + (p - 1) + std::accumulate(q.begin(), q.end(), 0);
}

void ArdlSpec::validate(std::size_t n) const {
    if (dependent.empty()) throw ValidationError("ARDL dependent variable not set");
    if (regressors.empty()) throw ValidationError("ARDL needs at least one regressor");
    if (std::find(regressors.begin(), regressors.end(), dependent) != regressors.end()) {
        throw ValidationError("dependent variable '" + dependent + "' listed as a regressor");
    }
    if (p < 1) throw ValidationError("ARDL lag p must be at least 1");
    if (q.size() != regressors.size()) {
        throw ValidationError("ARDL spec needs one q per regressor");
    }
    for (int qi : q) {
        if (qi < 0) throw ValidationError("ARDL lag q must be non-negative");
    }
    const long n_eff = static_cast<long>(n) - max_lag();
    if (n_eff <= n_params() + 3) {
        throw DataError(label() + " infeasible: " + std::to_string(n_eff) +
                        " usable observations for " + std::to_string(n_params()) + " parameters");
    }
}

std::string ArdlSpec::label() const {
    std::string s = "ARDL(" + std::to_string(p);
    for (int qi : q) s += "," + std::to_string(qi);
    return s + ")";
}

// ---------------------------------------------------------------------------
// Estimation

namespace {

struct Built {
    DesignMatrix design;
    Eigen::VectorXd response;
    std::vector<Eigen::Index> theta_index;
    Eigen::Index trend_index = -1;
};

Built build_design(const Dataset& data, const ArdlSpec& spec, int start) {
    const auto n = static_cast<int>(data.n_obs());
    const auto rows = static_cast<Eigen::Index>(n - start);
    const auto& y = data.at(spec.dependent).values();

    auto column = [&](auto&& value_at) {
        Eigen::VectorXd c(rows);
        for (int t = start; t < n; ++t) c(t - start) = value_at(t);
        return c;
    };

    DesignBuilder b(rows);
    b.intercept();
    Eigen::Index trend_index = -1;
    if (spec.deterministic_case == BoundsCase::unrestricted_constant_trend) {
        trend_index = b.cols();
        b.add("TREND", column([](int t) { return static_cast<double>(t + 1); }));
    }
    std::vector<Eigen::Index> theta_index;
    theta_index.push_back(b.cols());
    b.add(spec.dependent + "(-1)", column([&](int t) { return y[t - 1]; }));
    for (std::size_t j = 0; j < spec.regressors.size(); ++j) {
        const auto& name = spec.regressors[j];
        const auto& x = data.at(name).values();
        theta_index.push_back(b.cols());
        if (spec.q[j] >= 1) {
            b.add(name + "(-1)", column([&](int t) { return x[t - 1]; }));
        } else {
            b.add(name, column([&](int t) { return x[t]; }));
        }
    }
    for (int i = 1; i <= spec.p - 1; ++i) {
        b.add("D(" + spec.dependent + "(-" + std::to_string(i) + "))",
              column([&](int t) { return y[t - i] - y[t - i - 1]; }));
    }
    for (std::size_t j = 0; j < spec.regressors.size(); ++j) {
        const auto& name = spec.regressors[j];
        const auto& x = data.at(name).values();
        for (int i = 0; i <= spec.q[j] - 1; ++i) {
            const std::string label =
                i == 0 ? "D(" + name + ")" : "D(" + name + "(-" + std::to_string(i) + "))";
            b.add(label, column([&](int t) { return x[t - i] - x[t - i - 1]; }));
        }
    }
    Eigen::VectorXd dy = column([&](int t) { return y[t] - y[t - 1]; });
    return Built{b.build(), std::move(dy), std::move(theta_index), trend_index};
}

// RSS of a regression with no columns.
OlsFit empty_fit(const Eigen::VectorXd& y) {
    OlsFit f;
    f.n = y.size();
    f.k = 0;
    f.df_resid = f.n;
    f.residuals = y;
    f.rss = y.squaredNorm();
    return f;
}

}  // namespace

ArdlFit fit_ardl(const Dataset& data, const ArdlSpec& spec, std::optional<int> sample_lag) {
    if (!data.contains(spec.dependent)) {
        throw ValidationError("dependent variable '" + spec.dependent + "' not in dataset");
    }
    for (const auto& r : spec.regressors) {
        if (!data.contains(r)) throw ValidationError("regressor '" + r + "' not in dataset");
    }
    const int start = sample_lag.value_or(spec.max_lag());
    if (start < spec.max_lag()) {
        throw ValidationError("sample lag smaller than the model's largest lag");
    }
    spec.validate(data.n_obs() - static_cast<std::size_t>(start - spec.max_lag()));
    auto built = build_design(data, spec, start);
    auto fit = ols_fit(built.response, built.design);
    Eigen::VectorXd theta(static_cast<Eigen::Index>(built.theta_index.size()));
    for (std::size_t i = 0; i < built.theta_index.size(); ++i) {
        theta(static_cast<Eigen::Index>(i)) = fit.coefficients(built.theta_index[i]);
    }
    const double ic = fit.sic;
    return ArdlFit{spec,
                   std::move(fit),
                   std::move(built.design),
                   std::move(built.response),
                   std::move(built.theta_index),
                   std::move(theta),
                   data.first_year() + start,
                   ic};
}

LagSelection select_lags(const Dataset& data, const std::string& dependent,
                         const std::vector<std::string>& regressors, int max_p, int max_q,
                         InfoCriterion criterion, BoundsCase deterministic_case) {
    if (max_p < 1) throw ValidationError("max_p must be at least 1");
    if (max_q < 0) throw ValidationError("max_q must be non-negative");
    const int common = std::max(max_p, max_q);
    const std::size_t k = regressors.size();

    ArdlSpec candidate{dependent, regressors, 1, std::vector<int>(k, 0), deterministic_case};
    std::optional<LagSelection> best;
    int evaluated = 0;

    auto better = [](const LagSelection& a, const LagSelection& b) {
        if (a.criterion_value < b.criterion_value - 1e-12) return true;
        if (a.criterion_value > b.criterion_value + 1e-12) return false;
        if (a.spec.total_lags() != b.spec.total_lags()) {
            return a.spec.total_lags() < b.spec.total_lags();
        }
        if (a.spec.p != b.spec.p) return a.spec.p < b.spec.p;
        return a.spec.q < b.spec.q;
    };

    std::size_t grid = 1;
    for (std::size_t j = 0; j < k; ++j) grid *= static_cast<std::size_t>(max_q + 1);
    const long n_eff = static_cast<long>(data.n_obs()) - common;

    for (int p = 1; p <= max_p; ++p) {
        candidate.p = p;
        for (std::size_t cell = 0; cell < grid; ++cell) {
            // Decode cell as base-(max_q+1) digits, first regressor most significant.
            std::size_t rest = cell;
            for (std::size_t j = k; j-- > 0;) {
                candidate.q[j] = static_cast<int>(rest % static_cast<std::size_t>(max_q + 1));
                rest /= static_cast<std::size_t>(max_q + 1);
            }
            if (n_eff <= candidate.n_params() + 3) continue;
            const auto fit = fit_ardl(data, candidate, common);
            ++evaluated;
            const double ic =
                criterion == InfoCriterion::aic ? fit.levels_fit.aic : fit.levels_fit.sic;
            LagSelection sel{candidate, ic, 0};
            if (!best || better(sel, *best)) best = sel;
        }
    }
    if (!best) {
        throw DataError("no feasible ARDL candidate: sample of " + std::to_string(data.n_obs()) +
                        " observations too short");
    }
    best->candidates_evaluated = evaluated;
    return *best;
}

// ---------------------------------------------------------------------------
// Bounds test

bool BoundsTestResult::cointegrated_at(double significance) const {
    return f_statistic > bound_at(significance).i1;
}

const BoundPair& BoundsTestResult::bound_at(double significance) const {
    for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
        if (std::fabs(kBoundsLevels[i] - significance) < 1e-12) return bounds[i];
    }
    throw ValidationError("bounds are tabulated at 10%, 5%, 2.5% and 1% only");
}

BoundsTestResult bounds_decision(double f_statistic, int k, BoundsCase c) {
    BoundsTestResult r;
    r.f_statistic = f_statistic;
    r.k = k;
    r.deterministic_case = c;
    r.bounds = pss_f_bounds(c, k);
    r.restrictions = k + 1 + (c == BoundsCase::restricted_constant ? 1 : 0);
    // Tightest level first.
    for (std::size_t i = kBoundsLevels.size(); i-- > 0;) {
        if (f_statistic > r.bounds[i].i1) {
            r.decision = BoundsDecision::cointegrated;
            r.level = kBoundsLevels[i];
            return r;
        }
    }
    r.decision = f_statistic < r.bounds[0].i0 ? BoundsDecision::not_cointegrated
                                             : BoundsDecision::inconclusive;
    return r;
}

BoundsTestResult bounds_test(const ArdlFit& fit) {
    const int k = static_cast<int>(fit.spec.regressors.size());
    if (k < 1 || k > 10) {
        throw ValidationError("bounds test supports 1..10 regressors, got " + std::to_string(k));
    }
    std::vector<Eigen::Index> drop = fit.theta_index;
    if (fit.spec.deterministic_case == BoundsCase::restricted_constant) {
        drop.push_back(fit.levels_fit.index_of(kIntercept));
    }
    const auto& names = fit.design.names();
    std::vector<std::string> kept_names;
    std::vector<Eigen::Index> kept;
    for (Eigen::Index j = 0; j < fit.design.k(); ++j) {
        if (std::find(drop.begin(), drop.end(), j) == drop.end()) {
            kept.push_back(j);
            kept_names.push_back(names[static_cast<std::size_t>(j)]);
        }
    }
    OlsFit restricted;
    if (kept.empty()) {
        restricted = empty_fit(fit.response);
    } else {
        Eigen::MatrixXd xr(fit.design.n(), static_cast<Eigen::Index>(kept.size()));
        for (std::size_t i = 0; i < kept.size(); ++i) {
            xr.col(static_cast<Eigen::Index>(i)) = fit.design.matrix().col(kept[i]);
        }
        restricted = ols_fit(fit.response, DesignMatrix(kept_names, std::move(xr)));
    }
    const int q = static_cast<int>(drop.size());
    const auto f = wald_f_test(fit.levels_fit, restricted, q);
    auto r = bounds_decision(f.f, k, fit.spec.deterministic_case);
    r.restrictions = q;
    return r;
}

// ---------------------------------------------------------------------------
// Long run and error correction

namespace {

void check_theta_dependent(const ArdlFit& fit) {
    if (std::fabs(fit.theta(0)) < 1e-12) {
        throw NumericalError("coefficient on lagged dependent level is zero: long run undefined");
    }
}

Estimate make_estimate(std::string name, double coef, double se, double df) {
    Estimate e{std::move(name), coef, se, 0.0, 0.0};
    e.t_stat = se > 0.0 ? coef / se : std::numeric_limits<double>::quiet_NaN();
    e.p_value = se > 0.0 ? t_pvalue_two_sided(e.t_stat, df) : 0.0;
    return e;
}

// -theta_num/theta_den and its delta-method standard error.
std::pair<double, double> ratio_with_se(const OlsFit& f, Eigen::Index num, Eigen::Index den) {
    const double a = f.coefficients(num);
    const double b = f.coefficients(den);
    const double value = -a / b;
    const double ga = -1.0 / b;
    const double gb = a / (b * b);
    const auto& v = f.coef_covariance;
    const double var = ga * ga * v(num, num) + 2.0 * ga * gb * v(num, den) + gb * gb * v(den, den);
    return {value, std::sqrt(std::max(var, 0.0))};
}

}  // namespace

std::vector<Estimate> long_run(const ArdlFit& fit) {
    check_theta_dependent(fit);
    const auto& f = fit.levels_fit;
    const double df = static_cast<double>(f.df_resid);
    const Eigen::Index den = fit.theta_index.front();
    std::vector<Estimate> out;
    for (std::size_t j = 0; j < fit.spec.regressors.size(); ++j) {
        const auto [value, se] = ratio_with_se(f, fit.theta_index[j + 1], den);
        out.push_back(make_estimate(fit.spec.regressors[j], value, se, df));
    }
    const auto [c, c_se] = ratio_with_se(f, f.index_of(kIntercept), den);
    out.push_back(make_estimate(kIntercept, c, c_se, df));
    return out;
}

std::vector<double> long_run_se(const ArdlFit& fit) {
    std::vector<double> out;
    for (const auto& e : long_run(fit)) out.push_back(e.std_error);
    return out;
}

bool ecm_coefficient_valid(double omega) { return omega > -1.0 && omega < 0.0; }

EcmFit ecm_fit(const ArdlFit& fit) {
    check_theta_dependent(fit);
    EcmFit out;
    out.long_run = long_run(fit);
    out.intercept = out.long_run.back().coefficient;

    const auto& x = fit.design.matrix();
    const Eigen::Index rows = x.rows();
    Eigen::VectorXd ect = x.col(fit.theta_index.front());
    for (std::size_t j = 0; j < fit.spec.regressors.size(); ++j) {
        ect -= out.long_run[j].coefficient * x.col(fit.theta_index[j + 1]);
    }
    ect.array() -= out.intercept;
    out.ect_series = ect;

    // Short-run regressors: every design column that is neither a level term nor the intercept.
    DesignBuilder b(rows);
    const auto& names = fit.design.names();
    const Eigen::Index intercept_index = fit.levels_fit.index_of(kIntercept);
    for (Eigen::Index j = 0; j < fit.design.k(); ++j) {
        const bool level = std::find(fit.theta_index.begin(), fit.theta_index.end(), j) !=
                           fit.theta_index.end();
        if (level || j == intercept_index) continue;
        b.add(names[static_cast<std::size_t>(j)], x.col(j));
    }
    const Eigen::Index ect_index = b.cols();
    b.add("CointEq(-1)", ect);
    out.short_run_fit = ols_fit(fit.response, b.build());

    const auto& sr = out.short_run_fit;
    for (Eigen::Index j = 0; j < sr.k; ++j) {
        Estimate e{sr.names[static_cast<std::size_t>(j)], sr.coefficients(j), sr.std_errors(j),
                   sr.t_stats(j), sr.p_values(j)};
        if (j == ect_index) {
            out.ect = e;
        } else {
            out.short_run.push_back(e);
        }
    }
    out.valid = ecm_coefficient_valid(out.ect.coefficient);
    return out;
}

}  // namespace tsecon
