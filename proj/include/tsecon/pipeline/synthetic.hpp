#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsecon/dataset.hpp"

namespace tsecon::pipeline {

/**
 * Parameters of a synthetic annual system
 *   x_jt = x_j,t-1 + drift_j + regressor_sd * v_jt          (random walks)
 *   y_t  = intercept + sum_j beta_j x_jt + u_t
 *   u_t  = error_ar * u_t-1 + error_sd * e_t                (cointegrated)
 *   u_t  = u_t-1 + error_sd * e_t                           (not cointegrated)
 * With exponentiate set, every column is emitted as exp(level) so a log
 * transform recovers the linear system.
 */
struct SyntheticSpec {
    int n = 32;
    int start_year = 1990;
    std::string dependent = "Y";
    std::vector<std::string> regressors = {"X1"};
    std::vector<double> beta = {2.0};
    double intercept = 1.0;
    bool cointegrated = true;
    double error_ar = 0.5;
    double error_sd = 1.0;
    std::vector<double> drift;  ///< per regressor; empty means zero
    double regressor_sd = 1.0;
    std::vector<double> x0;     ///< starting levels; empty means zero
    bool exponentiate = false;
    int burn_in = 50;           ///< discarded start-up draws of the error process

    void validate() const;
};

struct SyntheticDataset {
    Dataset data;
    SyntheticSpec truth;
    std::uint64_t seed = 0;
};

[[nodiscard]] SyntheticDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed);

}  // namespace tsecon::pipeline
