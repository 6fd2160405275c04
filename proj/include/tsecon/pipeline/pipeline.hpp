#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tsecon/ardl.hpp"
#include "tsecon/cointegration.hpp"
#include "tsecon/dataset.hpp"
#include "tsecon/diagnostics.hpp"
#include "tsecon/pipeline/config.hpp"
#include "tsecon/pipeline/report.hpp"
#include "tsecon/unit_root.hpp"

namespace tsecon::pipeline {

inline constexpr const char* kVersion = "0.1.0";

/// Level and first-difference outcomes of the three unit-root tests for one variable.
struct UnitRootRow {
    std::string variable;
    IntegrationDecision adf;
    IntegrationDecision pp;
    IntegrationDecision dfgls;
    IntegrationOrder order = IntegrationOrder::higher;  ///< majority of the three, ADF on a three-way split
};

/// Typed results of every stage that ran; the report is a view of this.
struct Analysis {
    PipelineConfig config;
    Dataset data;  ///< transformed, analysis names
    std::string dependent;
    std::vector<std::string> regressors;

    std::vector<std::pair<std::string, SummaryStats>> summary;
    std::vector<UnitRootRow> unit_roots;

    bool halted = false;
    std::string verdict;

    std::optional<LagSelection> selection;
    std::optional<ArdlFit> ardl;
    std::optional<BoundsTestResult> bounds;
    std::optional<EcmFit> ecm;
    std::vector<CointegrationFit> robustness;  ///< FMOLS, DOLS, CCR
    std::vector<TestResult> diagnostics;       ///< JB, BG, BPG on the ARDL residuals
    std::vector<GrangerResult> granger;
};

struct RunOptions {
    /// Written to metadata when set; left out otherwise so reruns are byte-identical.
    std::optional<std::string> timestamp;
};

/// Applies the configured transforms and renames to analysis names.
[[nodiscard]] Dataset prepare_data(const PipelineConfig& config, const Dataset& raw);

/// "LCO2 = C + b1*LGDP[A] + ... + e" from the configured roles.
[[nodiscard]] std::string model_equation(const PipelineConfig& config);

[[nodiscard]] Analysis run_analysis(const PipelineConfig& config, const Dataset& raw);
[[nodiscard]] Report build_report(const Analysis& analysis, const RunOptions& options = {});

/// Loads config.data_path and runs every enabled stage.
[[nodiscard]] Report run_pipeline(const PipelineConfig& config, const RunOptions& options = {});
[[nodiscard]] Report run_pipeline(const PipelineConfig& config, const Dataset& raw,
                                  const RunOptions& options = {});

}  // namespace tsecon::pipeline
