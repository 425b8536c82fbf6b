// witness.hpp — non-Markovianity witnesses evaluated over a trajectory, and
// their aggregation into a report.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dynamap/dynamics.hpp"

namespace dynamap {

struct ViolationInterval {
    double t_start = 0.0;
    double t_end = 0.0;
};

// Outcome of one detection route. `worst_margin` is positive iff violated
// (largest excess above the declared tolerance).
struct RouteResult {
    bool violated = false;
    double first_violation_time = std::numeric_limits<double>::quiet_NaN();
    double worst_margin = 0.0;
    std::vector<ViolationInterval> intervals;
};

struct ConditionResult {
    std::string name;
    std::string kind;  // "cp" or "pdiv"
    RouteResult result;
};

struct WitnessRecord {
    std::string name;
    bool applicable = true;
    std::string reason;  // set when inapplicable

    RouteResult primary;
    std::string primary_route;
    std::optional<RouteResult> secondary;
    std::string secondary_route;

    std::vector<ConditionResult> conditions;  // closed-form rate conditions

    std::string series_name;
    std::vector<double> series;          // monitored scalar per grid point
    std::vector<double> undefined_times; // grid times where the witness is undefined

    int samples = 0;
    std::uint64_t seed = 0;
    std::string sampling_note;
    int order = 0;  // positivity order k for the trace-norm probe

    bool violated() const { return applicable && primary.violated; }
};

// Monotonicity of Vol(t) = |det Delta_t|; for commutative generators the
// trace condition tr L_t <= 0 is evaluated as a secondary route.
WitnessRecord w_volume(const Trajectory& traj);

// Per-branch monotonicity of |lambda_a(t)| (commutative trajectories only).
// Uses analytic Re mu_a when available; discrete differences otherwise.
WitnessRecord w_eigen_moduli(const Trajectory& traj);

// Monotonicity of f(t) = d^{-2} tr F(t); requires a commutative trajectory
// with real spectrum.
WitnessRecord w_f_monotone(const Trajectory& traj);

// Sign of <alpha| (1 (x) L_t)[P+] |alpha> at each grid time.
WitnessRecord w_ew_functional(const TimeLocalGenerator& gen, const TimeGrid& grid);

// Sampled trace-norm monotonicity of (1_k (x) Lambda_t)[X] for random
// Hermitian X (k = 1: differences of random density matrices).
WitnessRecord w_blp(const Trajectory& traj, int k, int samples, std::uint64_t seed);

// Hilbert-Schmidt-norm monotonicity for random normal operators and random
// Bloch vectors; unital trajectories only.
WitnessRecord w_hs_norm(const Trajectory& traj, int samples, std::uint64_t seed);

// Body-of-accessible-states containment: branchwise semi-axis dominance for
// Hermitian trajectories, sorted singular-value dominance for normal ones.
WitnessRecord w_body_containment(const Trajectory& traj);

// Conditional complete positivity of L_t at each grid time plus the
// closed-form rate conditions attached to the family.
WitnessRecord w_cp_divisibility(const TimeLocalGenerator& gen, const TimeGrid& grid);

// Record for a witness that cannot be evaluated on a given scenario.
WitnessRecord witness_inapplicable(std::string name, std::string reason);

struct WitnessSummary {
    bool cp_evaluated = false;
    bool cp_divisibility_violated = false;
    bool p_divisibility_violated = false;
    bool essentially_non_markovian_evidence = false;
    std::string classification;
    std::vector<std::string> violating;
};

struct WitnessReport {
    std::string family;
    int dim = 0;
    std::uint64_t seed = 0;
    double t_max = 0.0;
    std::size_t grid_points = 0;
    MapClass flags;
    bool commutative = false;
    bool real_spectrum = false;
    std::vector<WitnessRecord> records;
    WitnessSummary summary;

    bool any_violation() const;
};

// Deterministic merge; summary flags derive strictly from applicable
// witnesses.
WitnessReport aggregate(std::vector<WitnessRecord> records, const Trajectory& traj,
                        std::uint64_t seed);

// Stable JSON schema, fixed key order.
nlohmann::ordered_json report_to_json(const WitnessReport& report);

}  // namespace dynamap
