#include "dynamap/scenario.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace dynamap {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double require_number(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

std::string require_string(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    if (!obj[key].is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

std::string rate_spec_string(const json& v, const std::string& where) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return os.str();
    }
    throw ConfigError(where + ": rate must be a number or a specification string");
}

const std::set<std::string> kFamilies = {
    "dephasing_qubit",  "dephasing_weyl",    "dephasing_gellmann", "pauli_channel",
    "weyl_channel",     "generalized_pauli", "amplitude_damping",  "perfect_decoherence"};

std::vector<std::string> required_rate_keys(const std::string& family, int d) {
    std::vector<std::string> keys;
    if (family == "dephasing_qubit") {
        keys.push_back("g");
    } else if (family == "dephasing_weyl" || family == "dephasing_gellmann") {
        for (int k = 1; k < d; ++k) keys.push_back("g" + std::to_string(k));
    } else if (family == "pauli_channel") {
        keys = {"g1", "g2", "g3"};
    } else if (family == "weyl_channel") {
        for (int k = 0; k < d; ++k)
            for (int l = 0; l < d; ++l) {
                if (k == 0 && l == 0) continue;
                keys.push_back("g" + std::to_string(k) + std::to_string(l));
            }
    } else if (family == "generalized_pauli") {
        for (int a = 1; a <= d + 1; ++a) keys.push_back("g" + std::to_string(a));
    }
    return keys;
}

}  // namespace

const std::vector<std::string>& witness_names() {
    static const std::vector<std::string> names = {
        "volume", "eigen_moduli",     "f_monotone",      "ew_functional",
        "blp",    "hs_norm",          "body_containment", "cp_divisibility"};
    return names;
}

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    reject_unknown(j, {"family", "dim", "rates", "bath", "model", "grid", "witnesses", "blp",
                       "hs", "seed", "output", "propagator"},
                   "config");

    ScenarioConfig cfg;
    cfg.family = require_string(j, "family", "config");
    if (!kFamilies.count(cfg.family))
        throw ConfigError("config.family: unknown family '" + cfg.family + "'");

    const bool fixed_dim = cfg.family == "dephasing_qubit" || cfg.family == "pauli_channel" ||
                           cfg.family == "amplitude_damping";
    if (j.contains("dim")) {
        if (!j["dim"].is_number_integer()) throw ConfigError("config.dim: expected an integer");
        cfg.dim = j["dim"].get<int>();
    }
    if (fixed_dim && cfg.dim != 2)
        throw ConfigError("config.dim: family '" + cfg.family + "' is qubit-only");
    if (cfg.dim < 2) throw ConfigError("config.dim: need dim >= 2");
    if (cfg.dim > 9 && cfg.family == "weyl_channel")
        throw ConfigError("config.dim: weyl_channel rate keys support dim <= 9");

    const auto rate_keys = required_rate_keys(cfg.family, cfg.dim);
    if (!rate_keys.empty()) {
        if (!j.contains("rates")) throw ConfigError("config: missing 'rates'");
        reject_unknown(j["rates"], {rate_keys.begin(), rate_keys.end()}, "config.rates");
        for (const auto& key : rate_keys) {
            if (!j["rates"].contains(key))
                throw ConfigError("config.rates: missing rate '" + key + "'");
            cfg.rates[key] = rate_spec_string(j["rates"][key], "config.rates." + key);
        }
    } else if (j.contains("rates")) {
        throw ConfigError("config: family '" + cfg.family + "' takes no 'rates'");
    }

    if (cfg.family == "amplitude_damping") {
        if (!j.contains("bath")) throw ConfigError("config: missing 'bath'");
        reject_unknown(j["bath"], {"gamma_m", "width", "omega_c", "detuning"}, "config.bath");
        cfg.bath_gamma_m = require_number(j["bath"], "gamma_m", "config.bath");
        cfg.bath_width = require_number(j["bath"], "width", "config.bath");
        cfg.bath_omega_c = j["bath"].contains("omega_c")
                               ? require_number(j["bath"], "omega_c", "config.bath")
                               : 0.0;
        cfg.bath_detuning = j["bath"].contains("detuning")
                                ? require_number(j["bath"], "detuning", "config.bath")
                                : 0.0;
    } else if (j.contains("bath")) {
        throw ConfigError("config: 'bath' is only valid for amplitude_damping");
    }

    if (cfg.family == "perfect_decoherence") {
        if (!j.contains("model")) throw ConfigError("config: missing 'model'");
        reject_unknown(j["model"], {"eps", "field", "coupling", "env_state"}, "config.model");
        if (!j["model"].contains("eps") || !j["model"]["eps"].is_array())
            throw ConfigError("config.model.eps: expected an array of system eigenvalues");
        for (const auto& e : j["model"]["eps"]) {
            if (!e.is_number()) throw ConfigError("config.model.eps: expected numbers");
            cfg.model_eps.push_back(e.get<double>());
        }
        if (cfg.model_eps.size() != 2)
            throw ConfigError("config.model.eps: the built-in model is qubit + qubit (two values)");
        cfg.dim = 2;
        cfg.model_field = require_number(j["model"], "field", "config.model");
        cfg.model_coupling = require_number(j["model"], "coupling", "config.model");
        if (j["model"].contains("env_state")) {
            cfg.model_env_state = require_string(j["model"], "env_state", "config.model");
            if (cfg.model_env_state != "mixed" && cfg.model_env_state != "ground")
                throw ConfigError("config.model.env_state: expected 'mixed' or 'ground'");
        }
    } else if (j.contains("model")) {
        throw ConfigError("config: 'model' is only valid for perfect_decoherence");
    }

    if (j.contains("grid")) {
        reject_unknown(j["grid"], {"t_max", "points"}, "config.grid");
        cfg.t_max = require_number(j["grid"], "t_max", "config.grid");
        const double pts = require_number(j["grid"], "points", "config.grid");
        cfg.points = int(pts);
        if (double(cfg.points) != pts) throw ConfigError("config.grid.points: expected an integer");
    }
    if (!(cfg.t_max > 0)) throw ConfigError("config.grid.t_max: must be positive");
    if (cfg.points < 2) throw ConfigError("config.grid.points: need at least two points");

    if (j.contains("witnesses")) {
        if (!j["witnesses"].is_array()) throw ConfigError("config.witnesses: expected an array");
        for (const auto& w : j["witnesses"]) {
            if (!w.is_string()) throw ConfigError("config.witnesses: expected names");
            cfg.witnesses.push_back(w.get<std::string>());
        }
        if (cfg.witnesses.size() == 1 && cfg.witnesses[0] == "all") cfg.witnesses.clear();
        for (const auto& w : cfg.witnesses)
            if (std::find(witness_names().begin(), witness_names().end(), w) ==
                witness_names().end())
                throw ConfigError("config.witnesses: unknown witness '" + w + "'");
    }
    if (cfg.witnesses.empty()) cfg.witnesses = witness_names();

    if (j.contains("blp")) {
        reject_unknown(j["blp"], {"k", "samples"}, "config.blp");
        if (j["blp"].contains("k")) cfg.blp_k = int(require_number(j["blp"], "k", "config.blp"));
        if (j["blp"].contains("samples"))
            cfg.blp_samples = int(require_number(j["blp"], "samples", "config.blp"));
    }
    if (cfg.blp_k < 1 || cfg.blp_k > cfg.dim) throw ConfigError("config.blp.k: need 1 <= k <= dim");
    if (cfg.blp_samples < 1) throw ConfigError("config.blp.samples: need at least one sample");
    if (j.contains("hs")) {
        reject_unknown(j["hs"], {"samples"}, "config.hs");
        cfg.hs_samples = int(require_number(j["hs"], "samples", "config.hs"));
        if (cfg.hs_samples < 1) throw ConfigError("config.hs.samples: need at least one sample");
    }

    const bool sampled =
        std::find(cfg.witnesses.begin(), cfg.witnesses.end(), "blp") != cfg.witnesses.end() ||
        std::find(cfg.witnesses.begin(), cfg.witnesses.end(), "hs_norm") != cfg.witnesses.end();
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            throw ConfigError("config.seed: expected an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
        cfg.seed_set = true;
    }
    if (sampled && !cfg.seed_set)
        throw ConfigError(
            "config.seed: required when sampled witnesses (blp, hs_norm) are selected");

    if (!j.contains("output")) throw ConfigError("config: missing 'output'");
    reject_unknown(j["output"], {"csv", "json"}, "config.output");
    cfg.csv_path = require_string(j["output"], "csv", "config.output");
    cfg.json_path = require_string(j["output"], "json", "config.output");

    if (j.contains("propagator")) {
        cfg.propagator = require_string(j, "propagator", "config");
        if (cfg.propagator != "auto" && cfg.propagator != "commutative" && cfg.propagator != "ode")
            throw ConfigError("config.propagator: expected auto, commutative or ode");
    }
    return cfg;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ConfigError("config parse error: " + std::string(e.what()));
    }
    return from_json(j);
}

nlohmann::ordered_json ScenarioConfig::to_json() const {
    ordered_json j;
    j["family"] = family;
    j["dim"] = dim;
    if (!rates.empty()) {
        ordered_json r;
        for (const auto& [k, v] : rates) r[k] = v;
        j["rates"] = std::move(r);
    }
    if (bath_gamma_m) {
        j["bath"] = {{"gamma_m", *bath_gamma_m},
                     {"width", *bath_width},
                     {"omega_c", *bath_omega_c},
                     {"detuning", *bath_detuning}};
    }
    if (!model_eps.empty()) {
        j["model"] = {{"eps", model_eps},
                      {"field", model_field},
                      {"coupling", model_coupling},
                      {"env_state", model_env_state}};
    }
    j["grid"] = {{"t_max", t_max}, {"points", points}};
    j["witnesses"] = witnesses;
    j["blp"] = {{"k", blp_k}, {"samples", blp_samples}};
    j["hs"] = {{"samples", hs_samples}};
    if (seed_set) j["seed"] = seed;
    j["output"] = {{"csv", csv_path}, {"json", json_path}};
    j["propagator"] = propagator;
    return j;
}

namespace {

struct BuiltFamily {
    std::optional<TimeLocalGenerator> gen;
    std::optional<MapFamily> map;
};

BuiltFamily build_family(const ScenarioConfig& cfg) {
    BuiltFamily out;
    auto rate = [&cfg](const std::string& key) { return RateFunction::parse(cfg.rates.at(key)); };

    if (cfg.family == "dephasing_qubit") {
        out.gen = dephasing_qubit(rate("g"));
    } else if (cfg.family == "dephasing_weyl" || cfg.family == "dephasing_gellmann") {
        std::vector<RateFunction> rs;
        for (int k = 1; k < cfg.dim; ++k) rs.push_back(rate("g" + std::to_string(k)));
        out.gen = cfg.family == "dephasing_weyl" ? dephasing_weyl(cfg.dim, std::move(rs))
                                                 : dephasing_gellmann(cfg.dim, std::move(rs));
    } else if (cfg.family == "pauli_channel") {
        out.gen = pauli_channel(rate("g1"), rate("g2"), rate("g3"));
    } else if (cfg.family == "weyl_channel") {
        std::vector<RateFunction> rs;
        for (int k = 0; k < cfg.dim; ++k)
            for (int l = 0; l < cfg.dim; ++l) {
                if (k == 0 && l == 0) continue;
                rs.push_back(rate("g" + std::to_string(k) + std::to_string(l)));
            }
        out.gen = weyl_channel(cfg.dim, std::move(rs));
    } else if (cfg.family == "generalized_pauli") {
        std::vector<RateFunction> rs;
        for (int a = 1; a <= cfg.dim + 1; ++a) rs.push_back(rate("g" + std::to_string(a)));
        out.gen = generalized_pauli(cfg.dim, std::move(rs));
    } else if (cfg.family == "amplitude_damping") {
        LorentzianBath bath;
        bath.gamma_m = *cfg.bath_gamma_m;
        bath.width = *cfg.bath_width;
        bath.omega_c = *cfg.bath_omega_c;
        bath.detuning = *cfg.bath_detuning;
        AmplitudeDamping ad = amplitude_damping(lorentzian_G(bath, cfg.t_max + 1e-6));
        out.gen = std::move(ad.generator);
        out.map = std::move(ad.map);
    } else if (cfg.family == "perfect_decoherence") {
        DecoherenceModel model;
        model.dim_a = 2;
        model.dim_b = 2;
        model.eps = Eigen::Map<const RealVector>(cfg.model_eps.data(), 2);
        Matrix sz(2, 2), sx(2, 2);
        sz << 1, 0, 0, -1;
        sx << 0, 1, 1, 0;
        model.h_b = cfg.model_field * sz;
        model.b_k = {cfg.model_coupling * sx, Matrix(-cfg.model_coupling * sx)};
        if (cfg.model_env_state == "mixed") {
            model.rho_b = 0.5 * Matrix::Identity(2, 2);
        } else {
            model.rho_b = Matrix::Zero(2, 2);
            model.rho_b(0, 0) = 1.0;
        }
        out.map = perfect_decoherence(model).map;
    }
    return out;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
    const BuiltFamily fam = build_family(cfg);
    const TimeGrid grid = TimeGrid::uniform(cfg.t_max, cfg.points);

    PropagateOptions opts;
    Trajectory traj;
    if (cfg.propagator == "ode") {
        if (!fam.gen) throw ConfigError("propagator 'ode' needs a generator-backed family");
        traj = propagate_ode(*fam.gen, grid, opts);
    } else if (cfg.propagator == "commutative") {
        if (!fam.gen) throw ConfigError("propagator 'commutative' needs a generator-backed family");
        traj = propagate_commutative(*fam.gen, grid, opts);
    } else if (fam.map) {
        traj = sample_family(*fam.map, grid, opts);
    } else {
        traj = propagate_commutative(*fam.gen, grid, opts);
    }

    std::vector<WitnessRecord> records;
    for (const auto& name : cfg.witnesses) {
        if (name == "volume") {
            records.push_back(w_volume(traj));
        } else if (name == "eigen_moduli") {
            records.push_back(w_eigen_moduli(traj));
        } else if (name == "f_monotone") {
            records.push_back(w_f_monotone(traj));
        } else if (name == "ew_functional") {
            records.push_back(fam.gen
                                  ? w_ew_functional(*fam.gen, grid)
                                  : witness_inapplicable(
                                        "ew_functional", "no time-local generator for this family"));
        } else if (name == "blp") {
            records.push_back(w_blp(traj, cfg.blp_k, cfg.blp_samples, cfg.seed));
        } else if (name == "hs_norm") {
            records.push_back(w_hs_norm(traj, cfg.hs_samples, cfg.seed));
        } else if (name == "body_containment") {
            records.push_back(w_body_containment(traj));
        } else if (name == "cp_divisibility") {
            records.push_back(fam.gen
                                  ? w_cp_divisibility(*fam.gen, grid)
                                  : witness_inapplicable(
                                        "cp_divisibility", "no time-local generator for this family"));
        }
    }

    ScenarioResult result;
    result.report = aggregate(std::move(records), traj, cfg.seed);
    result.trajectory = std::move(traj);
    return result;
}

namespace {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write output file: " + path.string());
        out << content;
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace

void write_outputs(const ScenarioResult& result, const ScenarioConfig& cfg,
                   const std::filesystem::path& base_dir) {
    auto resolve = [&base_dir](const std::string& p) {
        std::filesystem::path path(p);
        return path.is_absolute() ? path : base_dir / path;
    };
    std::ostringstream csv;
    write_trajectory_csv(result.trajectory, csv);
    write_file_atomic(resolve(cfg.csv_path), csv.str());
    write_file_atomic(resolve(cfg.json_path), report_to_json(result.report).dump(2) + "\n");
}

const std::vector<ModelInfo>& list_models() {
    static const std::vector<ModelInfo> models = [] {
        std::vector<ModelInfo> m;
        auto sample = [](const char* text) { return ordered_json::parse(text); };
        m.push_back(
            {"dephasing_qubit", "Example 1: qubit dephasing",
             "single dephasing rate along sigma_z; Hermitian commutative",
             {"rates.g"},
             sample(
                 R"({"family":"dephasing_qubit","rates":{"g":"1"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"dephasing_qubit.csv","json":"dephasing_qubit.json"}})")});
        m.push_back(
            {"dephasing_weyl", "Example 2: qudit dephasing (normal)",
             "diagonal Weyl dephasing with d-1 rates; normal commutative",
             {"dim", "rates.g1..g<d-1>"},
             sample(
                 R"({"family":"dephasing_weyl","dim":3,"rates":{"g1":"1","g2":"0.5"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"dephasing_weyl.csv","json":"dephasing_weyl.json"}})")});
        m.push_back(
            {"dephasing_gellmann", "Example 3: qudit dephasing (Hermitian)",
             "double-commutator dephasing in the diagonal Gell-Mann elements",
             {"dim", "rates.g1..g<d-1>"},
             sample(
                 R"({"family":"dephasing_gellmann","dim":3,"rates":{"g1":"1","g2":"0.5"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"dephasing_gellmann.csv","json":"dephasing_gellmann.json"}})")});
        m.push_back(
            {"perfect_decoherence", "Example 4: perfect decoherence (normal)",
             "qubit dephased by a qubit environment through H = sum_k P_k (x) Z_k",
             {"model.eps", "model.field", "model.coupling", "model.env_state"},
             sample(
                 R"({"family":"perfect_decoherence","model":{"eps":[1.0,-1.0],"field":0.5,"coupling":1.0,"env_state":"mixed"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"perfect_decoherence.csv","json":"perfect_decoherence.json"}})")});
        m.push_back(
            {"pauli_channel", "Example 5: Pauli channel (Hermitian)",
             "three Pauli rates; eternally non-Markovian at (1, 1, -tanh)",
             {"rates.g1", "rates.g2", "rates.g3"},
             sample(
                 R"({"family":"pauli_channel","rates":{"g1":"1","g2":"1","g3":"-tanh"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"pauli_channel.csv","json":"pauli_channel.json"}})")});
        m.push_back(
            {"weyl_channel", "Example 6: Weyl channel (normal)",
             "random-unitary channel over all nontrivial Weyl displacements",
             {"dim", "rates.g<k><l> for (k,l) != (0,0)"},
             sample(
                 R"({"family":"weyl_channel","dim":3,"rates":{"g01":"0.4","g02":"0.4","g10":"0.4","g11":"0.4","g12":"0.4","g20":"0.4","g21":"0.4","g22":"0.4"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"weyl_channel.csv","json":"weyl_channel.json"}})")});
        m.push_back(
            {"generalized_pauli", "Example 7: generalized Pauli channel (Hermitian)",
             "mutually-unbiased-basis projector channels, d+1 rates, prime d",
             {"dim (prime)", "rates.g1..g<d+1>"},
             sample(
                 R"({"family":"generalized_pauli","dim":3,"rates":{"g1":"1","g2":"0.5","g3":"0.5","g4":"0.25"},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"generalized_pauli.csv","json":"generalized_pauli.json"}})")});
        m.push_back(
            {"amplitude_damping", "Example 8: amplitude damping",
             "single-function G(t) family driven by a Lorentzian reservoir",
             {"bath.gamma_m", "bath.width", "bath.omega_c", "bath.detuning"},
             sample(
                 R"({"family":"amplitude_damping","bath":{"gamma_m":0.25,"width":1.0,"omega_c":0.0,"detuning":0.0},"grid":{"t_max":5.0,"points":501},"seed":1,"output":{"csv":"amplitude_damping.csv","json":"amplitude_damping.json"}})")});
        return m;
    }();
    return models;
}

ordered_json list_models_json() {
    ordered_json j = ordered_json::array();
    for (const auto& m : list_models()) {
        ordered_json e;
        e["name"] = m.name;
        e["example"] = m.example;
        e["summary"] = m.summary;
        e["parameters"] = m.parameters;
        e["sample_config"] = m.sample_config;
        j.push_back(std::move(e));
    }
    return j;
}

std::string list_models_text() {
    std::ostringstream os;
    for (const auto& m : list_models()) {
        os << m.name << "  [" << m.example << "]\n  " << m.summary << "\n  parameters:";
        for (const auto& p : m.parameters) os << " " << p;
        os << "\n";
    }
    return os.str();
}

std::vector<SweepRow> run_sweep(const json& base_config, const std::string& param_path,
                                const std::vector<std::string>& values, int jobs) {
    std::vector<std::string> parts;
    std::string seg;
    std::istringstream ps(param_path);
    while (std::getline(ps, seg, '.')) {
        if (seg.empty()) throw ConfigError("sweep: malformed parameter path '" + param_path + "'");
        parts.push_back(seg);
    }
    if (parts.empty()) throw ConfigError("sweep: empty parameter path");
    {
        const json* node = &base_config;
        for (const auto& p : parts) {
            if (!node->is_object() || !node->contains(p))
                throw ConfigError("sweep: parameter path not found: " + param_path);
            node = &(*node)[p];
        }
    }

    std::vector<SweepRow> rows(values.size());
    std::vector<std::string> errors(values.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            try {
                json cfg_json = base_config;
                json* node = &cfg_json;
                for (std::size_t p = 0; p + 1 < parts.size(); ++p) node = &(*node)[parts[p]];
                json parsed;
                try {
                    parsed = json::parse(values[i]);
                } catch (const json::exception&) {
                    parsed = values[i];
                }
                if (parsed.is_object() || parsed.is_array()) parsed = values[i];
                (*node)[parts.back()] = parsed;
                const ScenarioConfig cfg = ScenarioConfig::from_json(cfg_json);
                rows[i].value = values[i];
                rows[i].report = run_scenario(cfg).report;
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    const int n_jobs = std::max(1, std::min<int>(jobs, int(values.size())));
    if (n_jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (std::size_t i = 0; i < values.size(); ++i)
        if (!errors[i].empty()) throw ConfigError("sweep value '" + values[i] + "': " + errors[i]);
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::vector<std::string>& selected,
                     std::ostream& out) {
    out << "value";
    for (const auto& name : witness_names()) {
        if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
        out << "," << name << "_verdict," << name << "_first_violation";
    }
    out << "\n";
    char buf[32];
    for (const auto& row : rows) {
        out << row.value;
        for (const auto& name : witness_names()) {
            if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
            const WitnessRecord* rec = nullptr;
            for (const auto& r : row.report.records)
                if (r.name == name) rec = &r;
            if (!rec) {
                out << ",,";
                continue;
            }
            if (!rec->applicable) {
                out << ",inapplicable,";
                continue;
            }
            out << "," << (rec->primary.violated ? "violated" : "monotone") << ",";
            if (std::isfinite(rec->primary.first_violation_time)) {
                std::snprintf(buf, sizeof(buf), "%.16e", rec->primary.first_violation_time);
                out << buf;
            }
        }
        out << "\n";
    }
}

}  // namespace dynamap
