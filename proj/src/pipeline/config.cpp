#include "tsecon/pipeline/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "tsecon/error.hpp"

namespace tsecon::pipeline {

using nlohmann::json;

std::string to_string(StirpatRole r) {
    switch (r) {
        case StirpatRole::P: return "P";
        case StirpatRole::A: return "A";
        case StirpatRole::T: return "T";
    }
    return "?";
}

std::string to_string(Transform t) { return t == Transform::log ? "log" : "none"; }

std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::text: return "text";
        case OutputFormat::markdown: return "markdown";
        case OutputFormat::csv: return "csv";
        case OutputFormat::json: return "json";
    }
    return "?";
}

OutputFormat parse_output_format(const std::string& s) {
    if (s == "text") return OutputFormat::text;
    if (s == "markdown" || s == "md") return OutputFormat::markdown;
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ValidationError("unsupported output format '" + s + "'");
}

bool PipelineConfig::stage_enabled(const std::string& stage) const {
    auto it = stages.find(stage);
    return it == stages.end() || it->second;
}

Transform PipelineConfig::transform_of(const std::string& variable) const {
    auto it = transforms.find(variable);
    return it == transforms.end() ? default_transform : it->second;
}

std::string PipelineConfig::analysis_name(const std::string& variable) const {
    return transform_of(variable) == Transform::log ? "L" + variable : variable;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void throw_if_any(const std::vector<std::string>& errors) {
    if (errors.empty()) return;
    std::string msg = "invalid configuration:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ValidationError(msg);
}

std::vector<std::string> field_errors(const PipelineConfig& c) {
    std::vector<std::string> errors;
    if (c.dependent.empty()) errors.emplace_back("dependent: must be set");
    if (c.regressors.empty()) errors.emplace_back("regressors: at least one regressor required");
    std::set<std::string> seen;
    for (const auto& r : c.regressors) {
        if (r == c.dependent) {
            errors.push_back("regressors: dependent variable '" + r + "' must not be a regressor");
        }
        if (!seen.insert(r).second) errors.push_back("regressors: duplicate '" + r + "'");
        if (!c.stirpat_roles.contains(r)) {
            errors.push_back("stirpat_roles: no P/A/T role for regressor '" + r + "'");
        }
    }
    for (const auto& [name, role] : c.stirpat_roles) {
        if (!seen.contains(name)) {
            errors.push_back("stirpat_roles: '" + name + "' is not a regressor");
        }
    }
    if (c.regressors.size() > 10) errors.emplace_back("regressors: bounds tables cover at most 10");
    if (c.max_p < 1) errors.emplace_back("ardl.max_p: must be at least 1");
    if (c.max_q < 0) errors.emplace_back("ardl.max_q: must be non-negative");
    if (c.unit_root_max_lag && *c.unit_root_max_lag < 0) {
        errors.emplace_back("unit_root.max_lag: must be non-negative");
    }
    if (c.bandwidth && !(*c.bandwidth >= 0.0)) {
        errors.emplace_back("robustness.bandwidth: must be non-negative");
    }
    if (c.dols_leads && *c.dols_leads < 0) errors.emplace_back("robustness.dols_leads: must be non-negative");
    if (c.dols_lags && *c.dols_lags < 0) errors.emplace_back("robustness.dols_lags: must be non-negative");
    if (c.bg_order < 1) errors.emplace_back("diagnostics.bg_order: must be at least 1");
    if (c.granger_lag < 1) errors.emplace_back("granger.lag: must be at least 1");
    if (c.significance != 0.01 && c.significance != 0.05 && c.significance != 0.10) {
        errors.emplace_back("significance: must be one of 0.01, 0.05, 0.10");
    }
    if (c.unit_root_deterministic == Deterministic::none) {
        errors.emplace_back("unit_root.deterministic: must be constant or constant_trend");
    }
    for (const auto& [stage, on] : c.stages) {
        if (std::find(kStages.begin(), kStages.end(), stage) == kStages.end()) {
            errors.push_back("stages: unknown stage '" + stage + "'");
        }
    }
    return errors;
}

}  // namespace

void validate(const PipelineConfig& config) { throw_if_any(field_errors(config)); }

void validate(const PipelineConfig& config, const Dataset& raw) {
    auto errors = field_errors(config);
    if (!raw.contains(config.dependent)) {
        errors.push_back("dependent: '" + config.dependent + "' not found in data");
    }
    for (const auto& r : config.regressors) {
        if (!raw.contains(r)) errors.push_back("regressors: '" + r + "' not found in data");
    }
    for (const auto& [name, t] : config.transforms) {
        if (!raw.contains(name)) errors.push_back("transforms: '" + name + "' not found in data");
    }
    throw_if_any(errors);
}

// ---------------------------------------------------------------------------
// JSON

namespace {

class Reader {
public:
    explicit Reader(std::vector<std::string>& errors) : errors_(errors) {}

    template <typename T>
    void get(const json& obj, const char* key, const std::string& path, T& out) {
        if (!obj.contains(key)) return;
        try {
            out = obj.at(key).get<T>();
        } catch (const json::exception&) {
            errors_.push_back(path + ": wrong type");
        }
    }

    void unknown_keys(const json& obj, const std::string& path, std::initializer_list<const char*> known) {
        for (const auto& [key, value] : obj.items()) {
            bool ok = false;
            for (const char* k : known) ok = ok || key == k;
            if (!ok) errors_.push_back((path.empty() ? key : path + "." + key) + ": unknown key");
        }
    }

    std::vector<std::string>& errors() { return errors_; }

private:
    std::vector<std::string>& errors_;
};

StirpatRole parse_role(const std::string& s, std::vector<std::string>& errors, const std::string& path) {
    if (s == "P") return StirpatRole::P;
    if (s == "A") return StirpatRole::A;
    if (s == "T") return StirpatRole::T;
    errors.push_back(path + ": role must be P, A or T");
    return StirpatRole::A;
}

Transform parse_transform(const std::string& s, std::vector<std::string>& errors, const std::string& path) {
    if (s == "log") return Transform::log;
    if (s == "none") return Transform::none;
    errors.push_back(path + ": transform must be log or none");
    return Transform::none;
}

BoundsCase parse_case(const std::string& s, std::vector<std::string>& errors) {
    if (s == "restricted_constant") return BoundsCase::restricted_constant;
    if (s == "unrestricted_constant") return BoundsCase::unrestricted_constant;
    if (s == "unrestricted_constant_trend") return BoundsCase::unrestricted_constant_trend;
    errors.emplace_back("ardl.bounds_case: unknown case '" + s + "'");
    return BoundsCase::restricted_constant;
}

// "auto" (or null) -> unset, number -> value.
template <typename T>
void get_auto(const json& obj, const char* key, const std::string& path, std::optional<T>& out,
              std::vector<std::string>& errors) {
    if (!obj.contains(key)) return;
    const auto& v = obj.at(key);
    if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto")) {
        out.reset();
    } else if (v.is_number()) {
        out = v.get<T>();
    } else {
        errors.push_back(path + ": expected a number or \"auto\"");
    }
}

}  // namespace

PipelineConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("config must be a JSON object");

    PipelineConfig c;
    std::vector<std::string> errors;
    Reader r(errors);
    r.unknown_keys(doc, "", {"data_path", "dependent", "regressors", "stirpat_roles", "transforms",
                             "ardl", "unit_root", "robustness", "diagnostics", "granger",
                             "significance", "output_format", "seed", "stages"});

    std::string data_path = c.data_path.string();
    r.get(doc, "data_path", "data_path", data_path);
    c.data_path = data_path;
    r.get(doc, "dependent", "dependent", c.dependent);
    r.get(doc, "regressors", "regressors", c.regressors);
    r.get(doc, "significance", "significance", c.significance);
    r.get(doc, "seed", "seed", c.seed);

    if (doc.contains("stirpat_roles")) {
        std::map<std::string, std::string> roles;
        r.get(doc, "stirpat_roles", "stirpat_roles", roles);
        c.stirpat_roles.clear();
        for (const auto& [name, role] : roles) {
            c.stirpat_roles[name] = parse_role(role, errors, "stirpat_roles." + name);
        }
    }
    if (doc.contains("transforms")) {
        std::map<std::string, std::string> transforms;
        r.get(doc, "transforms", "transforms", transforms);
        for (const auto& [name, t] : transforms) {
            const auto parsed = parse_transform(t, errors, "transforms." + name);
            if (name == "default") {
                c.default_transform = parsed;
            } else {
                c.transforms[name] = parsed;
            }
        }
    }
    if (doc.contains("ardl")) {
        const auto& a = doc.at("ardl");
        r.unknown_keys(a, "ardl", {"max_p", "max_q", "criterion", "bounds_case"});
        r.get(a, "max_p", "ardl.max_p", c.max_p);
        r.get(a, "max_q", "ardl.max_q", c.max_q);
        std::string crit = to_string(c.criterion);
        r.get(a, "criterion", "ardl.criterion", crit);
        if (crit == "aic") {
            c.criterion = InfoCriterion::aic;
        } else if (crit == "sic") {
            c.criterion = InfoCriterion::sic;
        } else {
            errors.emplace_back("ardl.criterion: must be aic or sic");
        }
        std::string bc = to_string(c.bounds_case);
        r.get(a, "bounds_case", "ardl.bounds_case", bc);
        c.bounds_case = parse_case(bc, errors);
    }
    if (doc.contains("unit_root")) {
        const auto& u = doc.at("unit_root");
        r.unknown_keys(u, "unit_root", {"deterministic", "max_lag"});
        std::string det = "constant";
        r.get(u, "deterministic", "unit_root.deterministic", det);
        if (det == "constant") {
            c.unit_root_deterministic = Deterministic::constant;
        } else if (det == "constant_trend") {
            c.unit_root_deterministic = Deterministic::constant_trend;
        } else {
            errors.emplace_back("unit_root.deterministic: must be constant or constant_trend");
        }
        get_auto(u, "max_lag", "unit_root.max_lag", c.unit_root_max_lag, errors);
    }
    if (doc.contains("robustness")) {
        const auto& rb = doc.at("robustness");
        r.unknown_keys(rb, "robustness", {"bandwidth", "dols_leads", "dols_lags"});
        get_auto(rb, "bandwidth", "robustness.bandwidth", c.bandwidth, errors);
        get_auto(rb, "dols_leads", "robustness.dols_leads", c.dols_leads, errors);
        get_auto(rb, "dols_lags", "robustness.dols_lags", c.dols_lags, errors);
    }
    if (doc.contains("diagnostics")) {
        const auto& d = doc.at("diagnostics");
        r.unknown_keys(d, "diagnostics", {"bg_order"});
        r.get(d, "bg_order", "diagnostics.bg_order", c.bg_order);
    }
    if (doc.contains("granger")) {
        const auto& g = doc.at("granger");
        r.unknown_keys(g, "granger", {"lag"});
        r.get(g, "lag", "granger.lag", c.granger_lag);
    }
    if (doc.contains("output_format")) {
        std::string f;
        r.get(doc, "output_format", "output_format", f);
        try {
            c.output_format = parse_output_format(f);
        } catch (const ValidationError&) {
            errors.push_back("output_format: unsupported format '" + f + "'");
        }
    }
    r.get(doc, "stages", "stages", c.stages);

    auto semantic = field_errors(c);
    errors.insert(errors.end(), semantic.begin(), semantic.end());
    throw_if_any(errors);
    return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    auto c = parse_config(buf.str());
    if (c.data_path.is_relative()) c.data_path = path.parent_path() / c.data_path;
    return c;
}

std::string config_to_json(const PipelineConfig& c) {
    json doc;
    doc["data_path"] = c.data_path.generic_string();
    doc["dependent"] = c.dependent;
    doc["regressors"] = c.regressors;
    json roles = json::object();
    for (const auto& [name, role] : c.stirpat_roles) roles[name] = to_string(role);
    doc["stirpat_roles"] = roles;
    json transforms = json::object();
    transforms["default"] = to_string(c.default_transform);
    for (const auto& [name, t] : c.transforms) transforms[name] = to_string(t);
    doc["transforms"] = transforms;
    doc["ardl"] = {{"max_p", c.max_p},
                   {"max_q", c.max_q},
                   {"criterion", to_string(c.criterion)},
                   {"bounds_case", to_string(c.bounds_case)}};
    doc["unit_root"] = {
        {"deterministic", c.unit_root_deterministic == Deterministic::constant ? "constant" : "constant_trend"},
        {"max_lag", c.unit_root_max_lag ? json(*c.unit_root_max_lag) : json("auto")}};
    doc["robustness"] = {{"bandwidth", c.bandwidth ? json(*c.bandwidth) : json("auto")},
                         {"dols_leads", c.dols_leads ? json(*c.dols_leads) : json("auto")},
                         {"dols_lags", c.dols_lags ? json(*c.dols_lags) : json("auto")}};
    doc["diagnostics"] = {{"bg_order", c.bg_order}};
    doc["granger"] = {{"lag", c.granger_lag}};
    doc["significance"] = c.significance;
    doc["output_format"] = to_string(c.output_format);
    doc["seed"] = c.seed;
    json stages = json::object();
    for (const auto& s : kStages) stages[s] = c.stage_enabled(s);
    doc["stages"] = stages;
    return doc.dump(2);
}

}  // namespace tsecon::pipeline
