#pragma once

#include <span>
#include <string>
#include <vector>

#include "tsecon/dataset.hpp"
#include "tsecon/regression.hpp"

namespace tsecon {

/// Outcome of a hypothesis test with its verdict at `decision_at`.
struct TestResult {
    std::string name;
    double statistic = 0.0;
    double p_value = 1.0;
    std::vector<double> df;  ///< reference distribution parameters
    double decision_at = 0.05;
    bool rejected = false;   ///< p_value < decision_at
    std::string decision;
};

/// JB = (n/6)(S^2 + (K-3)^2/4), p from chi-square(2).
[[nodiscard]] TestResult jarque_bera(std::span<const double> residuals, double significance = 0.05);
/// Same test from already computed moments.
[[nodiscard]] TestResult jarque_bera(double skewness, double kurtosis, std::size_t n,
                                     double significance = 0.05);

/**
 * Breusch-Godfrey LM test: residuals on the original regressors plus `order`
 * lagged residuals (pre-sample lags set to zero); statistic n R^2, chi-square(order).
 */
[[nodiscard]] TestResult breusch_godfrey(const OlsFit& fit, int order, double significance = 0.05);

/// Breusch-Pagan-Godfrey: squared residuals on the original regressors; n R^2, chi-square(k-1).
[[nodiscard]] TestResult breusch_pagan_godfrey(const OlsFit& fit, double significance = 0.05);

struct GrangerResult {
    std::string cause;
    std::string effect;
    int lag = 0;
    int obs = 0;        ///< n - lag
    double f_statistic = 0.0;
    double p_value = 1.0;  ///< upper tail of F(lag, obs - 2 lag - 1)
    bool rejected = false;
};

/// Does `cause` Granger-cause `effect`? Levels regression with a common lag on both series.
[[nodiscard]] GrangerResult granger_test(const Dataset& data, const std::string& cause,
                                         const std::string& effect, int lag,
                                         double significance = 0.05);

/**
 * For variables = {effect, x1, x2, ...}: the pairs x1 -> effect, effect -> x1,
 * x2 -> effect, effect -> x2, ... in that order.
 */
[[nodiscard]] std::vector<GrangerResult> granger_pairwise(const Dataset& data,
                                                          const std::vector<std::string>& variables,
                                                          int lag, double significance = 0.05);

}  // namespace tsecon
