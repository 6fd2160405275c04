#include "tsecon/diagnostics.hpp"

#include <cmath>

#include "tsecon/error.hpp"
#include "tsecon/probability.hpp"

namespace tsecon {

namespace {

TestResult verdict(std::string name, double statistic, double p, std::vector<double> df,
                   double significance, const char* accept_text, const char* reject_text) {
    if (!(significance > 0.0 && significance < 1.0)) {
        throw ValidationError("significance level must lie in (0, 1)");
    }
    TestResult r;
    r.name = std::move(name);
    r.statistic = statistic;
    r.p_value = p;
    r.df = std::move(df);
    r.decision_at = significance;
    r.rejected = p < significance;
    r.decision = r.rejected ? reject_text : accept_text;
    return r;
}

}  // namespace

TestResult jarque_bera(double skewness, double kurtosis, std::size_t n, double significance) {
    const double jb = jarque_bera_statistic(skewness, kurtosis, n);
    return verdict("Jarque-Bera", jb, survival(Distribution::chi_square(2.0), jb), {2.0},
                   significance, "Residuals are normally distributed",
                   "Residuals are not normally distributed");
}

TestResult jarque_bera(std::span<const double> residuals, double significance) {
    if (residuals.size() < 4) throw DataError("Jarque-Bera needs at least 4 observations");
    const auto st = summary_stats(residuals);
    return jarque_bera(st.skewness, st.kurtosis, st.n, significance);
}

TestResult breusch_godfrey(const OlsFit& fit, int order, double significance) {
    if (order < 1) throw ValidationError("Breusch-Godfrey order must be positive");
    if (order >= fit.df_resid) {
        throw ValidationError("Breusch-Godfrey order " + std::to_string(order) +
                              " too large for " + std::to_string(fit.df_resid) +
                              " residual degrees of freedom");
    }
    const Eigen::Index n = fit.n;
    const Eigen::Index k = fit.k;
    Eigen::MatrixXd x(n, k + order);
    x.leftCols(k) = fit.regressors;
    std::vector<std::string> names = fit.names;
    for (int i = 1; i <= order; ++i) {
        auto col = x.col(k + i - 1);
        col.setZero();
        col.tail(n - i) = fit.residuals.head(n - i);
        names.push_back("RESID(-" + std::to_string(i) + ")");
    }
    const auto aux = ols_fit(fit.residuals, DesignMatrix(names, std::move(x)));
    const double lm = static_cast<double>(n) * std::max(aux.r_squared, 0.0);
    return verdict("Breusch-Godfrey LM", lm,
                   survival(Distribution::chi_square(order), lm), {static_cast<double>(order)},
                   significance, "No serial correlation exists", "Serial correlation exists");
}

TestResult breusch_pagan_godfrey(const OlsFit& fit, double significance) {
    if (!fit.has_intercept) {
        throw ValidationError("Breusch-Pagan-Godfrey needs a design with an intercept");
    }
    if (fit.k < 2) throw ValidationError("Breusch-Pagan-Godfrey needs at least one slope regressor");
    const Eigen::VectorXd e2 = fit.residuals.array().square();
    const auto aux = ols_fit(e2, DesignMatrix(fit.names, fit.regressors));
    const double lm = static_cast<double>(fit.n) * std::max(aux.r_squared, 0.0);
    const double df = static_cast<double>(fit.k - 1);
    return verdict("Breusch-Pagan-Godfrey", lm, survival(Distribution::chi_square(df), lm), {df},
                   significance, "No heteroscedasticity exists", "Heteroscedasticity exists");
}

GrangerResult granger_test(const Dataset& data, const std::string& cause, const std::string& effect,
                           int lag, double significance) {
    if (lag < 1) throw ValidationError("Granger lag must be at least 1");
    if (cause == effect) throw ValidationError("Granger cause and effect must differ");
    const auto n = static_cast<int>(data.n_obs());
    const int obs = n - lag;
    if (obs <= 2 * lag + 1 + 3) {
        throw DataError("insufficient observations for Granger test with lag " +
                        std::to_string(lag) + ": n = " + std::to_string(n));
    }
    const auto& y = data.at(effect).values();
    const auto& x = data.at(cause).values();

    Eigen::VectorXd response(obs);
    for (int t = lag; t < n; ++t) response(t - lag) = y[t];
    auto lagged = [&](std::span<const double> s, int i) {
        Eigen::VectorXd c(obs);
        for (int t = lag; t < n; ++t) c(t - lag) = s[t - i];
        return c;
    };

    DesignBuilder restricted(obs);
    restricted.intercept();
    for (int i = 1; i <= lag; ++i) restricted.add(effect + "(-" + std::to_string(i) + ")", lagged(y, i));
    DesignBuilder unrestricted = restricted;
    for (int i = 1; i <= lag; ++i) unrestricted.add(cause + "(-" + std::to_string(i) + ")", lagged(x, i));

    const auto fu = ols_fit(response, unrestricted.build());
    const auto fr = ols_fit(response, restricted.build());
    const auto f = wald_f_test(fu, fr, lag);
    return GrangerResult{cause, effect, lag, obs, f.f, f.p_value, f.p_value < significance};
}

std::vector<GrangerResult> granger_pairwise(const Dataset& data, const std::vector<std::string>& variables,
                                            int lag, double significance) {
    if (variables.size() < 2) throw ValidationError("Granger pairs need at least two variables");
    const auto& effect = variables.front();
    std::vector<GrangerResult> out;
    for (std::size_t i = 1; i < variables.size(); ++i) {
        out.push_back(granger_test(data, variables[i], effect, lag, significance));
        out.push_back(granger_test(data, effect, variables[i], lag, significance));
    }
    return out;
}

}  // namespace tsecon
