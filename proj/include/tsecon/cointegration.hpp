#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tsecon/dataset.hpp"
#include "tsecon/regression.hpp"

namespace tsecon {

enum class CointegrationMethod { fmols, dols, ccr };
[[nodiscard]] std::string to_string(CointegrationMethod m);

struct CointegrationOptions {
    Bandwidth bandwidth = Bandwidth::automatic();
    bool trend = false;
    /// DOLS window; unset means max(1, floor((n/100)^(1/4))).
    std::optional<int> leads;
    std::optional<int> lags;
};

struct CointegrationFit {
    CointegrationMethod method = CointegrationMethod::fmols;
    std::vector<Estimate> coefficients;  ///< one per regressor
    Estimate intercept;
    std::optional<Estimate> trend;
    double bandwidth = 0.0;   ///< long-run covariance bandwidth actually used
    int leads = 0;            ///< dols only
    int lags = 0;             ///< dols only
    int n_effective = 0;
    double long_run_variance = 0.0;  ///< conditional long-run variance scaling the covariance
    Eigen::MatrixXd covariance;       ///< intercept, [trend], regressors
    std::vector<std::string> warnings;

    [[nodiscard]] const Estimate& coefficient(const std::string& name) const;
};

[[nodiscard]] int dols_default_window(std::size_t n);

/**
 * Fully modified OLS. The first observation is dropped so dx_t exists; with
 * u = (u1, dx) the OLS residual and demeaned regressor differences:
 *   y+ = y - dx Omega22^{-1} omega21,
 *   beta = (Z'Z)^{-1} (Z'y+ - T [0; lambda21 - Lambda22 Omega22^{-1} omega21]).
 * Throws NumericalError when Omega22 is singular.
 */
[[nodiscard]] CointegrationFit fmols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                         const std::vector<std::string>& names,
                                         const CointegrationOptions& options = {});

/// Dynamic OLS with dx_{t+i}, i = -lags..leads; errors scaled by the residual long-run variance.
[[nodiscard]] CointegrationFit dols_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                        const std::vector<std::string>& names,
                                        const CointegrationOptions& options = {});

/// Canonical cointegrating regression using the same long-run covariances as FMOLS.
[[nodiscard]] CointegrationFit ccr_fit(const Eigen::VectorXd& y, const Eigen::MatrixXd& x,
                                       const std::vector<std::string>& names,
                                       const CointegrationOptions& options = {});

[[nodiscard]] CointegrationFit cointegration_fit(CointegrationMethod method, const Dataset& data,
                                                 const std::string& dependent,
                                                 const std::vector<std::string>& regressors,
                                                 const CointegrationOptions& options = {});

}  // namespace tsecon
