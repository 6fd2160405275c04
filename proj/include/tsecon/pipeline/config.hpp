#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsecon/ardl.hpp"
#include "tsecon/critical_values.hpp"
#include "tsecon/dataset.hpp"
#include "tsecon/unit_root.hpp"

namespace tsecon::pipeline {

enum class StirpatRole { P, A, T };
enum class Transform { log, none };
enum class OutputFormat { text, markdown, csv, json };

[[nodiscard]] std::string to_string(StirpatRole r);
[[nodiscard]] std::string to_string(Transform t);
[[nodiscard]] std::string to_string(OutputFormat f);
[[nodiscard]] OutputFormat parse_output_format(const std::string& s);

/// Report sections in pipeline order.
inline const std::vector<std::string> kStages = {"summary",    "unit_root",   "bounds", "ardl",
                                                 "robustness", "diagnostics", "granger"};

struct PipelineConfig {
    std::filesystem::path data_path = "data/us_1990_2021.csv";
    std::string dependent = "CO2";
    std::vector<std::string> regressors = {"GDP", "AI", "SMC", "ICT", "POP"};
    std::map<std::string, StirpatRole> stirpat_roles = {{"GDP", StirpatRole::A},
                                                        {"AI", StirpatRole::T},
                                                        {"SMC", StirpatRole::A},
                                                        {"ICT", StirpatRole::T},
                                                        {"POP", StirpatRole::P}};
    /// Variables without an entry use `default_transform`.
    std::map<std::string, Transform> transforms;
    Transform default_transform = Transform::log;

    int max_p = 2;
    int max_q = 2;
    InfoCriterion criterion = InfoCriterion::sic;
    BoundsCase bounds_case = BoundsCase::restricted_constant;

    Deterministic unit_root_deterministic = Deterministic::constant;
    std::optional<int> unit_root_max_lag;

    std::optional<double> bandwidth;  ///< unset: Newey-West rule
    std::optional<int> dols_leads;
    std::optional<int> dols_lags;

    int bg_order = 2;
    int granger_lag = 2;
    double significance = 0.05;
    OutputFormat output_format = OutputFormat::text;
    std::uint64_t seed = 0;
    std::map<std::string, bool> stages;  ///< missing entries are enabled

    [[nodiscard]] bool stage_enabled(const std::string& stage) const;
    [[nodiscard]] Transform transform_of(const std::string& variable) const;
    /// Name of the variable after its transform ("CO2" -> "LCO2" under log).
    [[nodiscard]] std::string analysis_name(const std::string& variable) const;
};

/// Field-level checks that need no data. Throws ValidationError listing every failing field.
void validate(const PipelineConfig& config);
/// Additionally checks that every configured variable exists in the data.
void validate(const PipelineConfig& config, const Dataset& raw);

[[nodiscard]] PipelineConfig parse_config(const std::string& json_text);
[[nodiscard]] PipelineConfig load_config(const std::filesystem::path& path);
[[nodiscard]] std::string config_to_json(const PipelineConfig& config);

/// Environment variable consulted for the default config path.
inline constexpr const char* kConfigEnv = "TSECON_CONFIG";

}  // namespace tsecon::pipeline
