#include "tsecon/critical_values.hpp"

#include <string>

#include "tsecon/error.hpp"

namespace tsecon {

namespace {

// {b_inf, b1, b2, b3} for the 1%, 5%, 10% levels.
using Surface = std::array<std::array<double, 4>, 3>;

constexpr Surface kTauNone = {{
    {-2.56574, -2.2358, -3.627, 0.0},
    {-1.94100, -0.2686, -3.365, 31.223},
    {-1.61682, 0.2656, -2.714, 25.364},
}};

constexpr Surface kTauConstant = {{
    {-3.43035, -6.5393, -16.786, -79.433},
    {-2.86154, -2.8903, -4.234, -40.040},
    {-2.56677, -1.5384, -2.809, 0.0},
}};

constexpr Surface kTauTrend = {{
    {-3.95877, -9.0531, -28.428, -134.155},
    {-3.41049, -4.3904, -9.036, -45.374},
    {-3.12705, -2.5856, -3.925, -22.380},
}};

double evaluate(const std::array<double, 4>& b, double t) {
    return b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t);
}

// ERS rows for T = 50, 100, 200, infinity; columns 1%, 5%, 10%.
constexpr std::array<std::array<double, 3>, 4> kErsConstant = {{
    {-2.62, -1.95, -1.61},
    {-2.60, -1.95, -1.61},
    {-2.58, -1.95, -1.62},
    {-2.58, -1.95, -1.62},
}};

constexpr std::array<std::array<double, 3>, 4> kErsTrend = {{
    {-3.77, -3.19, -2.89},
    {-3.58, -3.03, -2.74},
    {-3.46, -2.93, -2.64},
    {-3.48, -2.89, -2.57},
}};

constexpr std::array<double, 4> kErsInvT = {1.0 / 50.0, 1.0 / 100.0, 1.0 / 200.0, 0.0};

// Pesaran, Shin & Smith (2001) asymptotic F bounds, k = 1..10:
// {I0, I1} at 10%, 5%, 2.5%, 1%.
using BoundsRow = std::array<BoundPair, 4>;

constexpr std::array<BoundsRow, 10> kCaseII = {{
    {{{3.02, 3.51}, {3.62, 4.16}, {4.18, 4.79}, {4.94, 5.58}}},
    {{{2.63, 3.35}, {3.10, 3.87}, {3.55, 4.38}, {4.13, 5.00}}},
    {{{2.37, 3.20}, {2.79, 3.67}, {3.15, 4.08}, {3.65, 4.66}}},
    {{{2.20, 3.09}, {2.56, 3.49}, {2.88, 3.87}, {3.29, 4.37}}},
    {{{2.08, 3.00}, {2.39, 3.38}, {2.70, 3.73}, {3.06, 4.15}}},
    {{{1.99, 2.94}, {2.27, 3.28}, {2.55, 3.61}, {2.88, 3.99}}},
    {{{1.92, 2.89}, {2.17, 3.21}, {2.43, 3.51}, {2.73, 3.90}}},
    {{{1.85, 2.85}, {2.11, 3.15}, {2.33, 3.42}, {2.62, 3.77}}},
    {{{1.80, 2.80}, {2.04, 3.08}, {2.24, 3.35}, {2.50, 3.68}}},
    {{{1.76, 2.77}, {1.98, 3.04}, {2.18, 3.28}, {2.41, 3.61}}},
}};

constexpr std::array<BoundsRow, 10> kCaseIII = {{
    {{{4.04, 4.78}, {4.94, 5.73}, {5.77, 6.68}, {6.84, 7.84}}},
    {{{3.17, 4.14}, {3.79, 4.85}, {4.41, 5.52}, {5.15, 6.36}}},
    {{{2.72, 3.77}, {3.23, 4.35}, {3.69, 4.89}, {4.29, 5.61}}},
    {{{2.45, 3.52}, {2.86, 4.01}, {3.25, 4.49}, {3.74, 5.06}}},
    {{{2.26, 3.35}, {2.62, 3.79}, {2.96, 4.18}, {3.41, 4.68}}},
    {{{2.12, 3.23}, {2.45, 3.61}, {2.75, 3.99}, {3.15, 4.43}}},
    {{{2.03, 3.13}, {2.32, 3.50}, {2.60, 3.84}, {2.96, 4.26}}},
    {{{1.95, 3.06}, {2.22, 3.39}, {2.48, 3.70}, {2.79, 4.10}}},
    {{{1.88, 2.99}, {2.14, 3.30}, {2.37, 3.60}, {2.65, 3.97}}},
    {{{1.83, 2.94}, {2.06, 3.24}, {2.28, 3.50}, {2.54, 3.86}}},
}};

constexpr std::array<BoundsRow, 10> kCaseV = {{
    {{{5.59, 6.26}, {6.56, 7.30}, {7.46, 8.27}, {8.74, 9.63}}},
    {{{4.19, 5.06}, {4.87, 5.85}, {5.49, 6.59}, {6.34, 7.52}}},
    {{{3.47, 4.45}, {4.01, 5.07}, {4.52, 5.62}, {5.17, 6.36}}},
    {{{3.03, 4.06}, {3.47, 4.57}, {3.89, 5.07}, {4.40, 5.72}}},
    {{{2.75, 3.79}, {3.12, 4.25}, {3.47, 4.67}, {3.93, 5.23}}},
    {{{2.53, 3.59}, {2.87, 4.00}, {3.19, 4.38}, {3.60, 4.90}}},
    {{{2.38, 3.45}, {2.69, 3.83}, {2.98, 4.16}, {3.34, 4.63}}},
    {{{2.26, 3.34}, {2.55, 3.68}, {2.82, 4.02}, {3.15, 4.43}}},
    {{{2.16, 3.24}, {2.43, 3.56}, {2.67, 3.87}, {2.97, 4.24}}},
    {{{2.07, 3.16}, {2.33, 3.46}, {2.56, 3.76}, {2.84, 4.10}}},
}};

}  // namespace

CriticalValues mackinnon_tau(Deterministic det, int nobs) {
    if (nobs < 1) throw ValidationError("critical values need a positive sample size");
    const Surface& s = det == Deterministic::none       ? kTauNone
                       : det == Deterministic::constant ? kTauConstant
                                                        : kTauTrend;
    const double t = static_cast<double>(nobs);
    return CriticalValues{evaluate(s[0], t), evaluate(s[1], t), evaluate(s[2], t)};
}

CriticalValues ers_dfgls(Deterministic det, int nobs) {
    if (nobs < 1) throw ValidationError("critical values need a positive sample size");
    if (det == Deterministic::none) {
        throw ValidationError("DF-GLS requires a constant or constant+trend deterministics");
    }
    const auto& table = det == Deterministic::constant ? kErsConstant : kErsTrend;
    const double x = 1.0 / static_cast<double>(nobs);
    std::size_t seg = 0;  // interpolate between rows seg and seg+1
    if (x <= kErsInvT[1]) seg = x <= kErsInvT[2] ? 2 : 1;
    const double x0 = kErsInvT[seg];
    const double x1 = kErsInvT[seg + 1];
    const double w = (x - x0) / (x1 - x0);
    std::array<double, 3> cv{};
    for (std::size_t j = 0; j < 3; ++j) {
        cv[j] = table[seg][j] + w * (table[seg + 1][j] - table[seg][j]);
    }
    return CriticalValues{cv[0], cv[1], cv[2]};
}

std::array<BoundPair, 4> pss_f_bounds(BoundsCase c, int k) {
    if (k < 1 || k > 10) {
        throw ValidationError("bounds table covers k = 1..10 regressors, got k = " +
                              std::to_string(k));
    }
    const auto idx = static_cast<std::size_t>(k - 1);
    switch (c) {
        case BoundsCase::restricted_constant:
            return kCaseII[idx];
        case BoundsCase::unrestricted_constant:
            return kCaseIII[idx];
        case BoundsCase::unrestricted_constant_trend:
            return kCaseV[idx];
    }
    throw ValidationError("unknown bounds case");
}

}  // namespace tsecon
