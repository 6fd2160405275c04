#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsecon/critical_values.hpp"
#include "tsecon/dataset.hpp"
#include "tsecon/regression.hpp"

namespace tsecon {

enum class InfoCriterion { aic, sic };
enum class UnitRootTest { adf, pp, dfgls };

[[nodiscard]] std::string to_string(UnitRootTest t);
[[nodiscard]] std::string to_string(InfoCriterion c);

/// Lag augmentation for ADF / DF-GLS: fixed order, or the IC minimiser over 0..max_p.
class LagPolicy {
public:
    static LagPolicy fixed(int p);
    /// max_p unset means the Schwert bound floor(12 (n/100)^(1/4)).
    static LagPolicy auto_ic(std::optional<int> max_p = std::nullopt,
                             InfoCriterion criterion = InfoCriterion::sic);

    [[nodiscard]] bool is_fixed() const noexcept { return fixed_; }
    [[nodiscard]] int order() const noexcept { return order_; }
    [[nodiscard]] std::optional<int> max_p() const noexcept { return max_p_; }
    [[nodiscard]] InfoCriterion criterion() const noexcept { return criterion_; }

private:
    bool fixed_ = false;
    int order_ = 0;
    std::optional<int> max_p_;
    InfoCriterion criterion_ = InfoCriterion::sic;
};

[[nodiscard]] int schwert_max_lag(std::size_t n);

struct UnitRootSpec {
    UnitRootTest test = UnitRootTest::adf;
    Deterministic deterministic = Deterministic::constant;
    LagPolicy lags = LagPolicy::auto_ic();        ///< adf, dfgls
    Bandwidth bandwidth = Bandwidth::automatic();  ///< pp
};

struct UnitRootResult {
    UnitRootTest test = UnitRootTest::adf;
    Deterministic deterministic = Deterministic::constant;
    double statistic = 0.0;
    CriticalValues critical_values;
    std::string marker;       ///< "***", "**", "*" or empty
    int lags_used = 0;        ///< adf, dfgls
    double bandwidth_used = 0.0;  ///< pp
    int n_effective = 0;

    /// Rejects the unit-root null at `level` (one of 0.01, 0.05, 0.10).
    [[nodiscard]] bool rejects_at(double level) const;
};

/// Star marker for a left-tailed statistic against its critical values.
[[nodiscard]] std::string significance_marker(double statistic, const CriticalValues& cv);

[[nodiscard]] UnitRootResult adf_test(std::span<const double> y, const UnitRootSpec& spec = {});
[[nodiscard]] UnitRootResult pp_test(std::span<const double> y, const UnitRootSpec& spec = {});
[[nodiscard]] UnitRootResult dfgls_test(std::span<const double> y, const UnitRootSpec& spec = {});
/// Dispatches on spec.test.
[[nodiscard]] UnitRootResult unit_root_test(std::span<const double> y, const UnitRootSpec& spec);
[[nodiscard]] UnitRootResult unit_root_test(const TimeSeries& s, const UnitRootSpec& spec);

/**
 * @brief GLS detrending at the local alternative c = -7 (constant) or -13.5
 * (constant + trend). Returns y minus the GLS-estimated deterministic part.
 */
[[nodiscard]] std::vector<double> gls_detrend(std::span<const double> y, Deterministic det);

enum class IntegrationOrder { I0, I1, higher };
[[nodiscard]] std::string to_string(IntegrationOrder o);

struct IntegrationDecision {
    IntegrationOrder order = IntegrationOrder::higher;
    UnitRootResult level;
    UnitRootResult diff;
};

/// I0 iff the level rejects at 5%; I1 iff only the first difference does; higher otherwise.
[[nodiscard]] IntegrationDecision classify_integration(const UnitRootResult& level,
                                                       const UnitRootResult& diff);

/// Runs the test on the series and its first difference and classifies.
[[nodiscard]] IntegrationDecision integration_order(const TimeSeries& s, const UnitRootSpec& spec);

}  // namespace tsecon
