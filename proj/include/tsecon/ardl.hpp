#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tsecon/critical_values.hpp"
#include "tsecon/dataset.hpp"
#include "tsecon/regression.hpp"
#include "tsecon/unit_root.hpp"

namespace tsecon {

[[nodiscard]] std::string to_string(BoundsCase c);

/**
 * @brief Lag structure of an ARDL(p, q_1, ..., q_k) model.
 *
 * Levels form: y_t = c + sum_{i=1..p} a_i y_{t-i} + sum_j sum_{i=0..q_j} b_ji x_{j,t-i} + e_t.
 * It is estimated in conditional error-correction form
 *
 *   dy_t = c + theta_y y_{t-1} + sum_j theta_j x*_j + sum_{i=1..p-1} phi_i dy_{t-i}
 *          + sum_j sum_{i=0..q_j-1} psi_ji dx_{j,t-i} + e_t
 *
 * where x*_j = x_{j,t-1} when q_j >= 1 and x_{j,t} when q_j = 0. This is an exact
 * reparameterisation: theta_y = sum a_i - 1, theta_j = sum_i b_ji, same residuals.
 */
struct ArdlSpec {
    std::string dependent;
    std::vector<std::string> regressors;
    int p = 1;
    std::vector<int> q;
    BoundsCase deterministic_case = BoundsCase::restricted_constant;

    [[nodiscard]] int max_lag() const;
    [[nodiscard]] int total_lags() const;
    /// Number of columns of the error-correction design.
    [[nodiscard]] int n_params() const;
    /// Throws ValidationError for malformed orders, DataError when n observations cannot support the model.
    void validate(std::size_t n) const;
    [[nodiscard]] std::string label() const;  ///< e.g. "ARDL(1,2,0)"

    friend bool operator==(const ArdlSpec&, const ArdlSpec&) = default;
};

struct ArdlFit {
    ArdlSpec spec;
    OlsFit levels_fit;
    DesignMatrix design;
    Eigen::VectorXd response;          ///< dy over the estimation sample
    std::vector<Eigen::Index> theta_index;  ///< dependent first, then regressors
    Eigen::VectorXd theta;              ///< level-term coefficients, same order
    int first_year = 0;                 ///< calendar year of the first estimation row
    double ic_value = 0.0;              ///< SIC of levels_fit

    [[nodiscard]] Eigen::Index n_effective() const { return levels_fit.n; }
};

/// Fits the model on the sample that starts after `sample_lag` initial years
/// (default: the model's own largest lag).
[[nodiscard]] ArdlFit fit_ardl(const Dataset& data, const ArdlSpec& spec,
                               std::optional<int> sample_lag = std::nullopt);

struct LagSelection {
    ArdlSpec spec;
    double criterion_value = 0.0;
    int candidates_evaluated = 0;
};

/**
 * Exhaustive grid p = 1..max_p, q_j = 0..max_q on the common sample that drops
 * max(max_p, max_q) initial years. Ties within 1e-12 go to the smaller total
 * lag count, then to the lexicographically smaller (p, q_1, ..., q_k).
 */
[[nodiscard]] LagSelection select_lags(const Dataset& data, const std::string& dependent,
                                       const std::vector<std::string>& regressors, int max_p,
                                       int max_q, InfoCriterion criterion = InfoCriterion::sic,
                                       BoundsCase deterministic_case = BoundsCase::restricted_constant);

enum class BoundsDecision { cointegrated, inconclusive, not_cointegrated };
[[nodiscard]] std::string to_string(BoundsDecision d);

struct BoundsTestResult {
    double f_statistic = 0.0;
    int k = 0;
    int restrictions = 0;
    BoundsCase deterministic_case = BoundsCase::restricted_constant;
    std::array<BoundPair, 4> bounds{};  ///< ordered like kBoundsLevels
    BoundsDecision decision = BoundsDecision::inconclusive;
    /// Tightest level at which F exceeds the I(1) bound (set iff cointegrated).
    std::optional<double> level;

    [[nodiscard]] bool cointegrated_at(double significance) const;
    [[nodiscard]] const BoundPair& bound_at(double significance) const;
};

/// Classifies an F statistic against the embedded bounds for (k, case).
[[nodiscard]] BoundsTestResult bounds_decision(double f_statistic, int k, BoundsCase c);

/// Joint test that all level terms (and the intercept under the restricted-constant case) are zero.
[[nodiscard]] BoundsTestResult bounds_test(const ArdlFit& fit);

/// Long-run coefficients -theta_j/theta_y with delta-method standard errors;
/// the intercept (named kIntercept) is appended as -c/theta_y.
[[nodiscard]] std::vector<Estimate> long_run(const ArdlFit& fit);
/// Delta-method standard errors of long_run(fit), same order.
[[nodiscard]] std::vector<double> long_run_se(const ArdlFit& fit);

struct EcmFit {
    std::vector<Estimate> short_run;  ///< dynamic terms of the second-step regression
    Estimate ect;                     ///< coefficient on CointEq(-1)
    std::vector<Estimate> long_run;   ///< regressors, then intercept
    double intercept = 0.0;           ///< long-run intercept
    bool valid = false;               ///< -1 < ect < 0
    OlsFit short_run_fit;
    Eigen::VectorXd ect_series;       ///< CointEq(-1) over the estimation sample
};

[[nodiscard]] bool ecm_coefficient_valid(double omega);

/**
 * Two-step error-correction fit: builds
 * ECT_{t-1} = y_{t-1} - sum_j LR_j x*_j - C_LR from the long-run solution, then
 * regresses dy_t on the short-run terms and ECT_{t-1} (plus trend under Case V).
 */
[[nodiscard]] EcmFit ecm_fit(const ArdlFit& fit);

}  // namespace tsecon
