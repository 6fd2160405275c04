#include "tsecon/pipeline/synthetic.hpp"

#include <cmath>
#include <set>

#include "tsecon/error.hpp"
#include "tsecon/random.hpp"

namespace tsecon::pipeline {

void SyntheticSpec::validate() const {
    if (n < 3) throw ValidationError("synthetic series need at least 3 observations");
    if (dependent.empty()) throw ValidationError("synthetic dependent name is empty");
    if (beta.size() != regressors.size()) {
        throw ValidationError("synthetic spec needs one beta per regressor");
    }
    if (!drift.empty() && drift.size() != regressors.size()) {
        throw ValidationError("synthetic drift needs one value per regressor");
    }
    if (!x0.empty() && x0.size() != regressors.size()) {
        throw ValidationError("synthetic x0 needs one value per regressor");
    }
    std::set<std::string> names(regressors.begin(), regressors.end());
    names.insert(dependent);
    if (names.size() != regressors.size() + 1) {
        throw ValidationError("synthetic variable names must be unique");
    }
    if (cointegrated && !(std::fabs(error_ar) < 1.0)) {
        throw ValidationError("stationary error needs |error_ar| < 1");
    }
    if (!(error_sd > 0.0) || !(regressor_sd >= 0.0)) {
        throw ValidationError("synthetic standard deviations must be positive");
    }
    if (burn_in < 0) throw ValidationError("burn_in must be non-negative");
}

SyntheticDataset generate_synthetic(const SyntheticSpec& spec, std::uint64_t seed) {
    spec.validate();
    Rng rng(seed);
    const std::size_t k = spec.regressors.size();
    const auto n = static_cast<std::size_t>(spec.n);

    std::vector<std::vector<double>> x(k, std::vector<double>(n));
    std::vector<double> y(n);
    std::vector<double> level(k);
    for (std::size_t j = 0; j < k; ++j) level[j] = spec.x0.empty() ? 0.0 : spec.x0[j];

    double u = 0.0;
    const double rho = spec.cointegrated ? spec.error_ar : 1.0;
    if (spec.cointegrated) {
        for (int b = 0; b < spec.burn_in; ++b) u = rho * u + spec.error_sd * rng.normal();
    }
    for (std::size_t t = 0; t < n; ++t) {
        double fitted = spec.intercept;
        for (std::size_t j = 0; j < k; ++j) {
            const double drift = spec.drift.empty() ? 0.0 : spec.drift[j];
            if (t > 0) level[j] += drift + spec.regressor_sd * rng.normal();
            x[j][t] = level[j];
            fitted += spec.beta[j] * level[j];
        }
        u = rho * u + spec.error_sd * rng.normal();
        y[t] = fitted + u;
    }

    auto emit = [&](std::vector<double> v) {
        if (spec.exponentiate) {
            for (auto& e : v) e = std::exp(e);
        }
        return v;
    };
    std::vector<TimeSeries> series;
    series.emplace_back(spec.dependent, spec.start_year, emit(std::move(y)));
    for (std::size_t j = 0; j < k; ++j) {
        series.emplace_back(spec.regressors[j], spec.start_year, emit(std::move(x[j])));
    }
    return SyntheticDataset{Dataset(std::move(series)), spec, seed};
}

}  // namespace tsecon::pipeline
