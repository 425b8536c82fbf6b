// scenario.hpp — batch front-end: scenario configuration, trajectory and
// witness runs, parameter sweeps and the model catalog.
#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynamap/witness.hpp"

namespace dynamap {

// Canonical witness names in evaluation order.
const std::vector<std::string>& witness_names();

struct ScenarioConfig {
    std::string family;
    int dim = 2;

    std::map<std::string, std::string> rates;  // family-specific rate specs

    // amplitude_damping
    std::optional<double> bath_gamma_m, bath_width, bath_omega_c, bath_detuning;

    // perfect_decoherence (two-level environment model)
    std::vector<double> model_eps;
    double model_field = 0.0;
    double model_coupling = 0.0;
    std::string model_env_state = "mixed";  // "mixed" or "ground"

    double t_max = 5.0;
    int points = 501;

    std::vector<std::string> witnesses;  // subset of witness_names(), or "all"
    int blp_k = 1;
    int blp_samples = 200;
    int hs_samples = 100;
    std::uint64_t seed = 0;
    bool seed_set = false;

    std::string csv_path;
    std::string json_path;
    std::string propagator = "auto";  // auto | commutative | ode

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig load(const std::filesystem::path& path);
    nlohmann::ordered_json to_json() const;
};

struct ScenarioResult {
    Trajectory trajectory;
    WitnessReport report;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Writes the trajectory CSV and report JSON to the configured paths
// (resolved relative to `base_dir` when relative).
void write_outputs(const ScenarioResult& result, const ScenarioConfig& cfg,
                   const std::filesystem::path& base_dir);

struct ModelInfo {
    std::string name;
    std::string example;  // catalog label
    std::string summary;
    std::vector<std::string> parameters;
    nlohmann::ordered_json sample_config;
};

const std::vector<ModelInfo>& list_models();
nlohmann::ordered_json list_models_json();
std::string list_models_text();

struct SweepRow {
    std::string value;
    WitnessReport report;
};

// One scenario run per value, assigning `param_path` (dot-separated JSON
// path, which must already exist in the base config). Deterministic order.
std::vector<SweepRow> run_sweep(const nlohmann::json& base_config,
                                const std::string& param_path,
                                const std::vector<std::string>& values, int jobs);

// Summary CSV: value, then verdict and first violation time per witness.
void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::vector<std::string>& selected, std::ostream& out);

}  // namespace dynamap
