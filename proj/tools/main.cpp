// dynamap CLI: batch runs of dynamical-map scenarios, parameter sweeps and
// SVG plots. Exit codes: 0 no violations, 2 configuration error,
// 3 witness violations found, 4 numerical failure.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dynamap/scenario.hpp"
#include "dynamap/svg.hpp"

namespace {

int parallel_jobs() {
    if (const char* env = std::getenv("DYNAMAP_JOBS")) {
        const int jobs = std::atoi(env);
        if (jobs >= 1) return jobs;
    }
    return 1;
}

int run_command(const std::string& config_path) {
    const dynamap::ScenarioConfig cfg = dynamap::ScenarioConfig::load(config_path);
    const dynamap::ScenarioResult result = dynamap::run_scenario(cfg);
    dynamap::write_outputs(result, cfg, std::filesystem::current_path());
    const auto& summary = result.report.summary;
    std::cout << cfg.family << ": " << summary.classification << "\n";
    for (const auto& rec : result.report.records) {
        std::cout << "  " << rec.name << ": ";
        if (!rec.applicable)
            std::cout << "inapplicable (" << rec.reason << ")";
        else if (rec.primary.violated)
            std::cout << "violated (first at t = " << rec.primary.first_violation_time << ")";
        else
            std::cout << "no violation";
        std::cout << "\n";
    }
    return result.report.any_violation() ? 3 : 0;
}

int sweep_command(const std::string& config_path, const std::string& param,
                  const std::vector<std::string>& values, const std::string& out_path) {
    std::ifstream in(config_path);
    if (!in) throw dynamap::ConfigError("cannot open config file: " + config_path);
    nlohmann::json base;
    try {
        in >> base;
    } catch (const nlohmann::json::exception& e) {
        throw dynamap::ConfigError("config parse error: " + std::string(e.what()));
    }
    const auto rows = dynamap::run_sweep(base, param, values, parallel_jobs());
    const std::vector<std::string> selected =
        base.contains("witnesses") && base["witnesses"].is_array() &&
                !(base["witnesses"].size() == 1 && base["witnesses"][0] == "all")
            ? base["witnesses"].get<std::vector<std::string>>()
            : dynamap::witness_names();
    if (out_path.empty() || out_path == "-") {
        dynamap::write_sweep_csv(rows, selected, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw dynamap::ConfigError("cannot write sweep CSV: " + out_path);
        dynamap::write_sweep_csv(rows, selected, out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dynamap: spectra and non-Markovianity witnesses of dynamical maps"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run one scenario config, write CSV + JSON report");
    run->add_option("config", config_path, "scenario config (JSON)")->required();

    std::string sweep_config, sweep_param, sweep_out;
    std::vector<std::string> sweep_values;
    auto* sweep = app.add_subcommand("sweep", "run one scenario per parameter value");
    sweep->add_option("config", sweep_config, "base scenario config (JSON)")->required();
    sweep->add_option("--param", sweep_param, "dot-separated config path, e.g. rates.g3")
        ->required();
    sweep->add_option("--values", sweep_values, "comma-separated parameter values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--out", sweep_out, "summary CSV path (default: stdout)");

    std::string plot_csv_path, plot_out;
    std::vector<std::string> plot_cols;
    auto* plot = app.add_subcommand("plot", "render trajectory CSV columns as an SVG line chart");
    plot->add_option("csv", plot_csv_path, "trajectory CSV path")->required();
    plot->add_option("--cols", plot_cols, "comma-separated column names")
        ->required()
        ->delimiter(',');
    plot->add_option("--out", plot_out, "output SVG path")->required();

    bool models_json = false;
    auto* models = app.add_subcommand("list-models", "describe the built-in channel families");
    models->add_flag("--json", models_json, "machine-readable listing with sample configs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(run)) return run_command(config_path);
        if (app.got_subcommand(sweep))
            return sweep_command(sweep_config, sweep_param, sweep_values, sweep_out);
        if (app.got_subcommand(plot)) {
            dynamap::plot_csv(plot_csv_path, plot_cols, plot_out);
            return 0;
        }
        if (app.got_subcommand(models)) {
            if (models_json)
                std::cout << dynamap::list_models_json().dump(2) << "\n";
            else
                std::cout << dynamap::list_models_text();
            return 0;
        }
    } catch (const dynamap::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dynamap::StepSizeUnderflow& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const dynamap::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
