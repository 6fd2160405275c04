#include "tsecon/pipeline/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "tsecon/error.hpp"

namespace tsecon::pipeline {

namespace {

/// Re-throws library errors with the failing stage prefixed, keeping the error category.
template <typename F>
auto in_stage(const std::string& stage, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ValidationError& e) {
        throw ValidationError("stage '" + stage + "': " + e.what());
    } catch (const DataError& e) {
        throw DataError("stage '" + stage + "': " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError("stage '" + stage + "': " + e.what());
    }
}

std::string fmt(double v, int decimals) { return Cell::number(v, decimals).formatted(); }

std::string level_label(double level) {
    if (level == 0.025) return "2.5%";
    char buf[16];
    std::snprintf(buf, sizeof buf, "%g%%", level * 100.0);
    return buf;
}

IntegrationOrder majority(IntegrationOrder a, IntegrationOrder b, IntegrationOrder c) {
    if (a == b || a == c) return a;
    if (b == c) return b;
    return a;
}

UnitRootSpec unit_root_spec(const PipelineConfig& c, UnitRootTest test) {
    UnitRootSpec s;
    s.test = test;
    s.deterministic = c.unit_root_deterministic;
    s.lags = LagPolicy::auto_ic(c.unit_root_max_lag, InfoCriterion::sic);
    s.bandwidth = c.bandwidth ? Bandwidth::fixed(*c.bandwidth) : Bandwidth::automatic();
    return s;
}

CointegrationOptions cointegration_options(const PipelineConfig& c) {
    CointegrationOptions o;
    o.bandwidth = c.bandwidth ? Bandwidth::fixed(*c.bandwidth) : Bandwidth::automatic();
    o.leads = c.dols_leads;
    o.lags = c.dols_lags;
    return o;
}

bool any_enabled(const PipelineConfig& c, std::initializer_list<const char*> stages) {
    for (const char* s : stages) {
        if (c.stage_enabled(s)) return true;
    }
    return false;
}

}  // namespace

Dataset prepare_data(const PipelineConfig& config, const Dataset& raw) {
    std::vector<std::string> wanted = {config.dependent};
    wanted.insert(wanted.end(), config.regressors.begin(), config.regressors.end());
    std::vector<TimeSeries> out;
    for (const auto& name : wanted) {
        const TimeSeries& s = raw.at(name);
        out.push_back(config.transform_of(name) == Transform::log ? log_transform(s) : s);
    }
    return Dataset(std::move(out));
}

std::string model_equation(const PipelineConfig& config) {
    std::string eq = config.analysis_name(config.dependent) + " = C";
    for (std::size_t j = 0; j < config.regressors.size(); ++j) {
        const auto& r = config.regressors[j];
        eq += " + b" + std::to_string(j + 1) + "*" + config.analysis_name(r);
        auto it = config.stirpat_roles.find(r);
        if (it != config.stirpat_roles.end()) eq += "[" + to_string(it->second) + "]";
    }
    return eq + " + e";
}

Analysis run_analysis(const PipelineConfig& config, const Dataset& raw) {
    validate(config, raw);
    Analysis a;
    a.config = config;
    a.data = in_stage("data", [&] { return prepare_data(config, raw); });
    a.dependent = config.analysis_name(config.dependent);
    for (const auto& r : config.regressors) a.regressors.push_back(config.analysis_name(r));
    std::vector<std::string> variables = {a.dependent};
    variables.insert(variables.end(), a.regressors.begin(), a.regressors.end());

    if (config.stage_enabled("summary")) {
        in_stage("summary", [&] {
            for (const auto& v : variables) a.summary.emplace_back(v, summary_stats(a.data.at(v)));
        });
    }

    const bool needs_ardl = any_enabled(config, {"bounds", "ardl", "diagnostics"});
    const bool downstream = needs_ardl || any_enabled(config, {"robustness", "granger"});

    // Unit roots also feed the integration-order guard, so they run whenever anything later does.
    if (config.stage_enabled("unit_root") || downstream) {
        in_stage("unit_root", [&] {
            for (const auto& v : variables) {
                const TimeSeries& s = a.data.at(v);
                UnitRootRow row;
                row.variable = v;
                row.adf = integration_order(s, unit_root_spec(config, UnitRootTest::adf));
                row.pp = integration_order(s, unit_root_spec(config, UnitRootTest::pp));
                row.dfgls = integration_order(s, unit_root_spec(config, UnitRootTest::dfgls));
                row.order = majority(row.adf.order, row.pp.order, row.dfgls.order);
                a.unit_roots.push_back(std::move(row));
            }
        });
        std::vector<std::string> offenders;
        for (const auto& row : a.unit_roots) {
            if (row.order == IntegrationOrder::higher) offenders.push_back(row.variable);
        }
        if (!offenders.empty()) {
            a.halted = true;
            std::string names;
            for (const auto& o : offenders) names += (names.empty() ? "" : ", ") + o;
            a.verdict = "bounds testing requires regressors integrated of order at most one; " + names +
                        " classified as I(2)+";
            return a;
        }
    }

    if (needs_ardl) {
        in_stage("ardl", [&] {
            a.selection = select_lags(a.data, a.dependent, a.regressors, config.max_p, config.max_q,
                                      config.criterion, config.bounds_case);
            a.ardl = fit_ardl(a.data, a.selection->spec, std::max(config.max_p, config.max_q));
        });
    }
    if (config.stage_enabled("bounds")) {
        a.bounds = in_stage("bounds", [&] { return bounds_test(*a.ardl); });
    }
    if (config.stage_enabled("ardl")) {
        a.ecm = in_stage("ardl", [&] { return ecm_fit(*a.ardl); });
    }
    if (config.stage_enabled("robustness")) {
        in_stage("robustness", [&] {
            const auto opts = cointegration_options(config);
            for (auto m : {CointegrationMethod::fmols, CointegrationMethod::dols, CointegrationMethod::ccr}) {
                a.robustness.push_back(cointegration_fit(m, a.data, a.dependent, a.regressors, opts));
            }
        });
    }
    if (config.stage_enabled("diagnostics")) {
        in_stage("diagnostics", [&] {
            const OlsFit& fit = a.ardl->levels_fit;
            const std::vector<double> resid(fit.residuals.data(), fit.residuals.data() + fit.residuals.size());
            a.diagnostics.push_back(jarque_bera(resid, config.significance));
            a.diagnostics.push_back(breusch_godfrey(fit, config.bg_order, config.significance));
            a.diagnostics.push_back(breusch_pagan_godfrey(fit, config.significance));
        });
    }
    if (config.stage_enabled("granger")) {
        a.granger = in_stage("granger", [&] {
            return granger_pairwise(a.data, variables, config.granger_lag, config.significance);
        });
    }

    if (a.bounds) {
        const auto& b = *a.bounds;
        switch (b.decision) {
            case BoundsDecision::cointegrated:
                a.verdict = "cointegrated at " + level_label(*b.level) + " (F = " + fmt(b.f_statistic, 4) +
                            " > I(1) bound " + fmt(b.bound_at(*b.level).i1, 3) + ")";
                break;
            case BoundsDecision::inconclusive:
                a.verdict = "inconclusive (F = " + fmt(b.f_statistic, 4) + " lies between the 10% bounds)";
                break;
            case BoundsDecision::not_cointegrated:
                a.verdict = "not cointegrated (F = " + fmt(b.f_statistic, 4) + " < I(0) bound " +
                            fmt(b.bound_at(0.10).i0, 3) + " at 10%)";
                break;
        }
    } else {
        a.verdict = "completed";
    }
    return a;
}

// ---------------------------------------------------------------------------
// Report assembly

namespace {

Section summary_section(const Analysis& a) {
    Section s{"summary", "Descriptive statistics", {}, {}};
    Table t{"descriptive", "Summary statistics", {}, {}, {}};
    for (const auto& [v, st] : a.summary) t.columns.push_back(v);
    auto add = [&](const std::string& label, auto get, int decimals) {
        Row r{label, {}};
        for (const auto& [v, st] : a.summary) r.cells.push_back(Cell::number(get(st), decimals));
        t.rows.push_back(std::move(r));
    };
    add("Mean", [](const SummaryStats& x) { return x.mean; }, 4);
    add("Median", [](const SummaryStats& x) { return x.median; }, 4);
    add("Maximum", [](const SummaryStats& x) { return x.maximum; }, 4);
    add("Minimum", [](const SummaryStats& x) { return x.minimum; }, 4);
    add("Std. Dev.", [](const SummaryStats& x) { return x.std_dev; }, 4);
    add("Skewness", [](const SummaryStats& x) { return x.skewness; }, 4);
    add("Kurtosis", [](const SummaryStats& x) { return x.kurtosis; }, 4);
    add("Jarque-Bera", [](const SummaryStats& x) { return x.jarque_bera; }, 4);
    add("Probability", [](const SummaryStats& x) { return x.jb_probability; }, 4);
    add("Observations", [](const SummaryStats& x) { return static_cast<double>(x.n); }, 0);
    s.tables.push_back(std::move(t));
    return s;
}

Cell ur_cell(const UnitRootResult& r) { return Cell::number(r.statistic, 4, r.marker); }

Section unit_root_section(const Analysis& a) {
    Section s{"unit_root", "Unit root tests", {}, {}};
    Table t{"tests",
            "Unit root statistics (level and first difference)",
            {"ADF I(0)", "ADF I(1)", "PP I(0)", "PP I(1)", "DF-GLS I(0)", "DF-GLS I(1)", "Order"},
            {},
            {}};
    Table cv{"critical_values", "Critical values at 1%, 5% and 10%", {"1%", "5%", "10%"}, {}, {}};
    for (const auto& row : a.unit_roots) {
        t.rows.push_back({row.variable,
                          {ur_cell(row.adf.level), ur_cell(row.adf.diff), ur_cell(row.pp.level),
                           ur_cell(row.pp.diff), ur_cell(row.dfgls.level), ur_cell(row.dfgls.diff),
                           Cell::str(to_string(row.order))}});
        auto add_cv = [&](const std::string& label, const UnitRootResult& r) {
            cv.rows.push_back({row.variable + " " + label,
                               {Cell::number(r.critical_values.pct1), Cell::number(r.critical_values.pct5),
                                Cell::number(r.critical_values.pct10)}});
        };
        add_cv("ADF I(0)", row.adf.level);
        add_cv("ADF I(1)", row.adf.diff);
        add_cv("PP I(0)", row.pp.level);
        add_cv("PP I(1)", row.pp.diff);
        add_cv("DF-GLS I(0)", row.dfgls.level);
        add_cv("DF-GLS I(1)", row.dfgls.diff);
    }
    t.notes.push_back("*** / ** / * reject the unit-root null at 1% / 5% / 10%.");
    s.tables.push_back(std::move(t));
    s.tables.push_back(std::move(cv));
    return s;
}

Section bounds_section(const Analysis& a) {
    const auto& b = *a.bounds;
    Section s{"bounds", "ARDL bounds test", {}, {}};
    Table f{"f_statistic", "F-bounds test", {"Value"}, {}, {}};
    f.rows.push_back({"F-statistic", {Cell::number(b.f_statistic)}});
    f.rows.push_back({"k", {Cell::integer(b.k)}});
    f.rows.push_back({"Model", {Cell::str(a.ardl->spec.label())}});
    f.rows.push_back({"Decision", {Cell::str(to_string(b.decision))}});
    Table bounds{"critical_bounds", "Critical value bounds", {"I(0)", "I(1)"}, {}, {}};
    for (std::size_t i = 0; i < kBoundsLevels.size(); ++i) {
        bounds.rows.push_back(
            {level_label(kBoundsLevels[i]), {Cell::number(b.bounds[i].i0, 3), Cell::number(b.bounds[i].i1, 3)}});
    }
    bounds.notes.push_back("Case: " + to_string(b.deterministic_case) + ".");
    s.tables.push_back(std::move(f));
    s.tables.push_back(std::move(bounds));
    return s;
}

Row estimate_row(const Estimate& e) {
    return {e.name,
            {Cell::number(e.coefficient, 4, stars_for(e.p_value)), Cell::number(e.std_error),
             Cell::number(e.t_stat), Cell::number(e.p_value)}};
}

const std::vector<std::string> kEstimateColumns = {"Coefficient", "Std. Error", "t-Statistic", "Prob."};

Section ardl_section(const Analysis& a) {
    const auto& e = *a.ecm;
    Section s{"ardl", "ARDL long-run and error-correction estimates", {}, {}};
    Table lr{"long_run", "Long-run coefficients", kEstimateColumns, {}, {}};
    for (const auto& est : e.long_run) lr.rows.push_back(estimate_row(est));
    Table sr{"short_run", "Error-correction regression", kEstimateColumns, {}, {}};
    for (const auto& est : e.short_run) sr.rows.push_back(estimate_row(est));
    sr.rows.push_back(estimate_row(e.ect));
    sr.notes.push_back(std::string("CointEq(-1) ") +
                       (e.valid ? "lies in (-1, 0): adjustment toward equilibrium."
                                : "lies outside (-1, 0): no stable adjustment."));
    const OlsFit& fit = a.ardl->levels_fit;
    Table stats{"fit", "Fit statistics", {"Value"}, {}, {}};
    stats.rows.push_back({"R-squared", {Cell::number(fit.r_squared)}});
    stats.rows.push_back({"Adjusted R-squared", {Cell::number(fit.adj_r_squared)}});
    stats.rows.push_back({"S.E. of regression", {Cell::number(std::sqrt(fit.sigma2))}});
    stats.rows.push_back({"Log likelihood", {Cell::number(fit.log_likelihood)}});
    stats.rows.push_back({"Akaike info criterion", {Cell::number(fit.aic)}});
    stats.rows.push_back({"Schwarz criterion", {Cell::number(fit.sic)}});
    stats.rows.push_back({"Observations", {Cell::integer(fit.n)}});
    s.tables.push_back(std::move(lr));
    s.tables.push_back(std::move(sr));
    s.tables.push_back(std::move(stats));
    return s;
}

Section robustness_section(const Analysis& a) {
    Section s{"robustness", "Cointegrating regressions", {}, {}};
    for (const auto& fit : a.robustness) {
        std::string m = to_string(fit.method);
        std::string upper = m;
        std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
        Table t{m, upper, kEstimateColumns, {}, {}};
        for (const auto& est : fit.coefficients) t.rows.push_back(estimate_row(est));
        t.rows.push_back(estimate_row(fit.intercept));
        if (fit.trend) t.rows.push_back(estimate_row(*fit.trend));
        for (const auto& w : fit.warnings) t.notes.push_back(w);
        s.tables.push_back(std::move(t));
    }
    return s;
}

Section diagnostics_section(const Analysis& a) {
    Section s{"diagnostics", "Residual diagnostics", {}, {}};
    Table t{"tests", "Diagnostic tests on the ARDL residuals", {"Statistic", "Prob.", "Decision"}, {}, {}};
    for (const auto& d : a.diagnostics) {
        t.rows.push_back({d.name, {Cell::number(d.statistic), Cell::number(d.p_value), Cell::str(d.decision)}});
    }
    s.tables.push_back(std::move(t));
    return s;
}

Section granger_section(const Analysis& a) {
    Section s{"granger", "Pairwise Granger causality", {}, {}};
    Table t{"pairwise", "Pairwise Granger causality tests", {"Obs", "F-Statistic", "Prob.", "Decision"}, {}, {}};
    for (const auto& g : a.granger) {
        t.rows.push_back({g.cause + " does not Granger cause " + g.effect,
                          {Cell::integer(g.obs), Cell::number(g.f_statistic), Cell::number(g.p_value),
                           Cell::str(g.rejected ? "Reject" : "Do not reject")}});
    }
    t.notes.push_back("Lags: " + std::to_string(a.config.granger_lag) + ".");
    s.tables.push_back(std::move(t));
    return s;
}

std::string compact_config(const PipelineConfig& c) { return nlohmann::json::parse(config_to_json(c)).dump(); }

}  // namespace

Report build_report(const Analysis& a, const RunOptions& options) {
    const PipelineConfig& c = a.config;
    Report r;
    auto meta = [&](std::string k, std::string v) { r.metadata.emplace_back(std::move(k), std::move(v)); };
    meta("version", kVersion);
    meta("seed", std::to_string(c.seed));
    if (options.timestamp) meta("generated_at", *options.timestamp);
    meta("data_path", c.data_path.generic_string());
    meta("sample", std::to_string(a.data.first_year()) + "-" + std::to_string(a.data.last_year()));
    meta("observations", std::to_string(a.data.n_obs()));
    meta("model", model_equation(c));
    meta("criterion", to_string(c.criterion));
    meta("bounds_case", to_string(c.bounds_case));
    meta("significance", fmt(c.significance, 2));

    for (const auto& row : a.unit_roots) {
        std::ostringstream d;
        d << "ADF lags " << row.adf.level.lags_used << "/" << row.adf.diff.lags_used << ", PP bandwidth "
          << fmt(row.pp.level.bandwidth_used, 2) << "/" << fmt(row.pp.diff.bandwidth_used, 2) << ", DF-GLS lags "
          << row.dfgls.level.lags_used << "/" << row.dfgls.diff.lags_used << ", order " << to_string(row.order);
        meta("unit_root." + row.variable, d.str());
    }
    if (a.selection) {
        meta("ardl.selected", a.selection->spec.label());
        meta("ardl.candidates", std::to_string(a.selection->candidates_evaluated));
        meta("ardl.criterion_value", fmt(a.selection->criterion_value, 6));
        meta("ardl.observations", std::to_string(a.ardl->n_effective()));
        meta("ardl.first_year", std::to_string(a.ardl->first_year));
    }
    for (const auto& fit : a.robustness) {
        std::string v = "bandwidth " + fmt(fit.bandwidth, 2) + ", n " + std::to_string(fit.n_effective);
        if (fit.method == CointegrationMethod::dols) {
            v += ", leads " + std::to_string(fit.leads) + ", lags " + std::to_string(fit.lags);
        }
        meta("robustness." + to_string(fit.method), v);
    }
    if (c.stage_enabled("diagnostics") && !a.diagnostics.empty()) meta("bg_order", std::to_string(c.bg_order));
    if (c.stage_enabled("granger") && !a.granger.empty()) meta("granger_lag", std::to_string(c.granger_lag));
    meta("config", compact_config(c));

    if (c.stage_enabled("summary") && !a.summary.empty()) r.sections.push_back(summary_section(a));
    if (c.stage_enabled("unit_root") && !a.unit_roots.empty()) r.sections.push_back(unit_root_section(a));
    if (a.bounds) r.sections.push_back(bounds_section(a));
    if (a.ecm) r.sections.push_back(ardl_section(a));
    if (!a.robustness.empty()) r.sections.push_back(robustness_section(a));
    if (!a.diagnostics.empty()) r.sections.push_back(diagnostics_section(a));
    if (!a.granger.empty()) r.sections.push_back(granger_section(a));
    r.halted = a.halted;
    r.verdict = a.verdict;
    return r;
}

Report run_pipeline(const PipelineConfig& config, const Dataset& raw, const RunOptions& options) {
    return build_report(run_analysis(config, raw), options);
}

Report run_pipeline(const PipelineConfig& config, const RunOptions& options) {
    validate(config);
    std::vector<std::string> schema = {config.dependent};
    schema.insert(schema.end(), config.regressors.begin(), config.regressors.end());
    const Dataset raw = load_csv(config.data_path, schema);
    return run_pipeline(config, raw, options);
}

}  // namespace tsecon::pipeline
