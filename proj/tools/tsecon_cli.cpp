// Command-line front end: one verb per pipeline stage, `report` for the full run.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tsecon/error.hpp"
#include "tsecon/pipeline/pipeline.hpp"
#include "tsecon/pipeline/synthetic.hpp"

namespace tp = tsecon::pipeline;

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kData = 2, kNumerical = 3 };

struct Options {
    std::string config_path;
    std::string data_path;
    std::string format;
    std::optional<std::uint64_t> seed;
    std::string out_path;
};

/// SOURCE_DATE_EPOCH pins the report timestamp; without it none is written.
std::optional<std::string> report_timestamp() {
    const char* env = std::getenv("SOURCE_DATE_EPOCH");
    if (!env || !*env) return std::nullopt;
    const std::time_t t = static_cast<std::time_t>(std::stoll(env));
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

tp::PipelineConfig resolve_config(const Options& o) {
    tp::PipelineConfig c;
    std::string path = o.config_path;
    if (path.empty()) {
        if (const char* env = std::getenv(tp::kConfigEnv)) path = env;
    }
    if (!path.empty()) c = tp::load_config(path);
    if (!o.data_path.empty()) c.data_path = o.data_path;
    if (!o.format.empty()) c.output_format = tp::parse_output_format(o.format);
    if (o.seed) c.seed = *o.seed;
    return c;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw tsecon::DataError("cannot write '" + out_path + "'");
    out << text;
}

int run_stage(const Options& o, const std::string& stage) {
    tp::PipelineConfig c = resolve_config(o);
    if (stage != "report") {
        for (const auto& s : tp::kStages) c.stages[s] = (s == stage);
    }
    tp::RunOptions run;
    run.timestamp = report_timestamp();
    const tp::Report r = tp::run_pipeline(c, run);
    emit(tp::render_report(r, c.output_format), o.out_path);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-series econometrics pipeline: unit roots, ARDL bounds, cointegrating regressions"};
    app.require_subcommand(0, 1);

    Options o;
    app.add_option("--config", o.config_path, "JSON config file (default: $TSECON_CONFIG)");
    app.add_option("--data", o.data_path, "CSV data file, overrides the config");
    app.add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember({"text", "markdown", "md", "csv", "json"}));
    app.add_option("--seed", o.seed, "Seed recorded in the report and used by simulate");
    app.add_option("--out", o.out_path, "Output file (default: stdout)");

    const std::vector<std::pair<std::string, std::string>> verbs = {
        {"summary", "summary"},         {"unitroot", "unit_root"}, {"bounds", "bounds"},
        {"fit", "ardl"},                {"robust", "robustness"},  {"diagnose", "diagnostics"},
        {"granger", "granger"},         {"report", "report"}};
    const std::map<std::string, std::string> help = {
        {"summary", "Descriptive statistics with Jarque-Bera"},
        {"unitroot", "ADF, PP and DF-GLS tests in levels and first differences"},
        {"bounds", "ARDL lag selection and bounds F-test"},
        {"fit", "ARDL long-run coefficients and error-correction model"},
        {"robust", "FMOLS, DOLS and CCR cointegrating regressions"},
        {"diagnose", "Normality, serial correlation and heteroscedasticity tests"},
        {"granger", "Pairwise Granger causality"},
        {"report", "Full pipeline"}};
    std::string chosen = "report";  // no verb runs the full pipeline
    for (const auto& [verb, stage] : verbs) {
        auto* sub = app.add_subcommand(verb, help.at(verb));
        sub->fallthrough();
        sub->callback([&chosen, stage = stage] { chosen = stage; });
    }

    tp::SyntheticSpec sim;
    auto* simulate = app.add_subcommand("simulate", "Write a seeded synthetic dataset as CSV");
    simulate->fallthrough();
    simulate->add_option("--n", sim.n, "Observations")->check(CLI::PositiveNumber);
    simulate->add_option("--start-year", sim.start_year);
    simulate->add_option("--beta", sim.beta, "Slope per regressor");
    bool no_coint = false;
    simulate->add_flag("--no-cointegration", no_coint, "Random-walk errors");
    simulate->add_flag("--exponentiate", sim.exponentiate, "Emit exp(level) columns");
    simulate->callback([&chosen] { chosen = "simulate"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    try {
        if (chosen == "simulate") {
            sim.cointegrated = !no_coint;
            if (sim.regressors.size() != sim.beta.size()) {
                sim.regressors.clear();
                for (std::size_t j = 0; j < sim.beta.size(); ++j) sim.regressors.push_back("X" + std::to_string(j + 1));
            }
            const auto ds = tp::generate_synthetic(sim, o.seed.value_or(0));
            emit(tsecon::to_csv(ds.data), o.out_path);
            return kOk;
        }
        return run_stage(o, chosen);
    } catch (const tsecon::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const tsecon::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kData;
    } catch (const tsecon::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
