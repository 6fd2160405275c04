#pragma once

#include <array>

namespace tsecon {

enum class Deterministic { none, constant, constant_trend };

/// Left-tail critical values at the 1%, 5% and 10% levels.
struct CriticalValues {
    double pct1 = 0.0;
    double pct5 = 0.0;
    double pct10 = 0.0;
};

/**
 * @brief MacKinnon (2010) response-surface critical values for the
 * Dickey-Fuller tau statistic (single series), evaluated at sample size nobs:
 *   cv(T) = b_inf + b1/T + b2/T^2 + b3/T^3.
 * Used for ADF and Phillips-Perron Z_t.
 */
[[nodiscard]] CriticalValues mackinnon_tau(Deterministic det, int nobs);

/**
 * @brief Elliott-Rothenberg-Stock DF-GLS critical values, linear in 1/T
 * between the tabulated sample sizes (50, 100, 200, infinity) and
 * extrapolated along the 50-100 segment below T = 50.
 */
[[nodiscard]] CriticalValues ers_dfgls(Deterministic det, int nobs);

/// Deterministic cases of the bounds test (Pesaran-Shin-Smith numbering).
enum class BoundsCase {
    restricted_constant = 2,           ///< Case II
    unrestricted_constant = 3,         ///< Case III
    unrestricted_constant_trend = 5    ///< Case V
};

struct BoundPair {
    double i0 = 0.0;  ///< lower bound, all regressors I(0)
    double i1 = 0.0;  ///< upper bound, all regressors I(1)
};

/// Significance levels of the bounds table, in table order.
inline constexpr std::array<double, 4> kBoundsLevels = {0.10, 0.05, 0.025, 0.01};

/// Asymptotic F-statistic bounds for k = 1..10 regressors, indexed like kBoundsLevels.
[[nodiscard]] std::array<BoundPair, 4> pss_f_bounds(BoundsCase c, int k);

}  // namespace tsecon
