#include "dynamap/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dynamap/linalg.hpp"

namespace dynamap {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double scale_of(const std::vector<double>& v) {
    double s = 1.0;
    for (double x : v)
        if (std::isfinite(x)) s = std::max(s, std::abs(x));
    return s;
}

// Accumulates per-step violations (a step is the interval [t_i, t_{i+1}]).
struct StepAccum {
    explicit StepAccum(std::size_t steps) : flags(steps, 0) {}
    std::vector<char> flags;
    double worst = -std::numeric_limits<double>::infinity();
    bool any = false;

    void consider(std::size_t step, double margin) {
        worst = std::max(worst, margin);
        any = true;
        if (margin > 0.0) flags[step] = 1;
    }

    RouteResult done(const TimeGrid& grid) const {
        RouteResult r;
        r.worst_margin = any ? worst : 0.0;
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (!flags[i]) continue;
            if (!r.violated) {
                r.violated = true;
                r.first_violation_time = grid[i];
            }
            if (!r.intervals.empty() && r.intervals.back().t_end >= grid[i] - 1e-15)
                r.intervals.back().t_end = grid[i + 1];
            else
                r.intervals.push_back({grid[i], grid[i + 1]});
        }
        return r;
    }
};

// Accumulates per-grid-point violations.
struct PointAccum {
    explicit PointAccum(std::size_t points) : flags(points, 0) {}
    std::vector<char> flags;
    double worst = -std::numeric_limits<double>::infinity();
    bool any = false;

    void consider(std::size_t point, double margin) {
        worst = std::max(worst, margin);
        any = true;
        if (margin > 0.0) flags[point] = 1;
    }

    RouteResult done(const TimeGrid& grid) const {
        RouteResult r;
        r.worst_margin = any ? worst : 0.0;
        std::size_t prev = std::size_t(-2);
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (!flags[i]) continue;
            if (!r.violated) {
                r.violated = true;
                r.first_violation_time = grid[i];
            }
            if (i == prev + 1 && !r.intervals.empty())
                r.intervals.back().t_end = grid[i];
            else
                r.intervals.push_back({grid[i], grid[i]});
            prev = i;
        }
        return r;
    }
};

// Monotone non-increase of one series; tolerance 1e-9 x series scale.
RouteResult monotone_check(const TimeGrid& grid, const std::vector<double>& m) {
    const double tol = 1e-9 * scale_of(m);
    StepAccum acc(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!std::isfinite(m[i]) || !std::isfinite(m[i + 1])) continue;
        acc.consider(i, (m[i + 1] - m[i]) - tol);
    }
    return acc.done(grid);
}

WitnessRecord inapplicable(std::string name, std::string reason) {
    return witness_inapplicable(std::move(name), std::move(reason));
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view label) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (char c : label) {
        h ^= std::uint64_t(static_cast<unsigned char>(c));
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

WitnessRecord w_volume(const Trajectory& traj) {
    WitnessRecord rec;
    rec.name = "volume";
    rec.series_name = "vol";
    rec.series.assign(traj.volume.data(), traj.volume.data() + traj.volume.size());
    rec.primary = monotone_check(traj.grid, rec.series);
    rec.primary_route = "discrete";

    if (traj.commutative && traj.analytic && traj.analytic->has_mu) {
        std::vector<double> trace(traj.grid.size(), kNaN);
        for (std::size_t i = 0; i < traj.grid.size(); ++i) {
            try {
                trace[i] = traj.analytic->mu_at(traj.grid[i]).real().sum();
            } catch (const SingularGeneratorError&) {
                rec.undefined_times.push_back(traj.grid[i]);
            }
        }
        const double tol = 1e-9 * scale_of(trace);
        PointAccum acc(traj.grid.size());
        for (std::size_t i = 0; i < traj.grid.size(); ++i)
            if (std::isfinite(trace[i])) acc.consider(i, trace[i] - tol);
        rec.secondary = acc.done(traj.grid);
        rec.secondary_route = "trace_condition";
    }
    return rec;
}

WitnessRecord w_eigen_moduli(const Trajectory& traj) {
    if (!traj.commutative)
        return inapplicable("eigen_moduli", "trajectory is not commutative");

    WitnessRecord rec;
    rec.name = "eigen_moduli";
    const std::size_t nt = traj.grid.size();
    const Eigen::Index nb = traj.eigenpaths.cols();

    // Discrete route: per-branch forward differences of |lambda|.
    StepAccum discrete(nt - 1);
    for (Eigen::Index b = 0; b < nb; ++b) {
        double scale = 1.0;
        for (std::size_t i = 0; i < nt; ++i)
            scale = std::max(scale, std::abs(traj.eigenpaths(Eigen::Index(i), b)));
        const double tol = 1e-9 * scale;
        for (std::size_t i = 0; i + 1 < nt; ++i) {
            const double diff = std::abs(traj.eigenpaths(Eigen::Index(i) + 1, b)) -
                                std::abs(traj.eigenpaths(Eigen::Index(i), b));
            discrete.consider(i, diff - tol);
        }
    }
    const RouteResult discrete_result = discrete.done(traj.grid);

    const bool have_analytic = traj.analytic && traj.analytic->has_mu;
    if (have_analytic) {
        std::vector<double> max_growth(nt, kNaN);
        PointAccum analytic(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            try {
                const Vector mu = traj.analytic->mu_at(traj.grid[i]);
                max_growth[i] = mu.real().maxCoeff();
            } catch (const SingularGeneratorError&) {
                rec.undefined_times.push_back(traj.grid[i]);
            }
        }
        const double tol = 1e-9 * scale_of(max_growth);
        for (std::size_t i = 0; i < nt; ++i)
            if (std::isfinite(max_growth[i])) analytic.consider(i, max_growth[i] - tol);
        rec.primary = analytic.done(traj.grid);
        rec.primary_route = "analytic_mu";
        rec.secondary = discrete_result;
        rec.secondary_route = "discrete";
        rec.series_name = "max_re_mu";
        rec.series = std::move(max_growth);
    } else {
        rec.primary = discrete_result;
        rec.primary_route = "discrete";
        rec.series_name = "max_branch_modulus_step";
        rec.series.assign(nt, 0.0);
        for (std::size_t i = 1; i < nt; ++i) {
            double worst = -std::numeric_limits<double>::infinity();
            for (Eigen::Index b = 0; b < nb; ++b)
                worst = std::max(worst, std::abs(traj.eigenpaths(Eigen::Index(i), b)) -
                                            std::abs(traj.eigenpaths(Eigen::Index(i) - 1, b)));
            rec.series[i] = worst;
        }
    }
    return rec;
}

WitnessRecord w_f_monotone(const Trajectory& traj) {
    if (!traj.commutative)
        return inapplicable("f_monotone", "trajectory is not commutative");
    if (!traj.real_spectrum)
        return inapplicable("f_monotone", "eigenvalues are not real within tolerance");

    WitnessRecord rec;
    rec.name = "f_monotone";
    rec.series_name = "f";
    rec.series.assign(traj.f_series.data(), traj.f_series.data() + traj.f_series.size());
    rec.primary = monotone_check(traj.grid, rec.series);
    rec.primary_route = "discrete";
    return rec;
}

WitnessRecord w_ew_functional(const TimeLocalGenerator& gen, const TimeGrid& grid) {
    WitnessRecord rec;
    rec.name = "ew_functional";
    rec.series_name = "ew_functional";
    const MaxEntangled me = max_entangled(gen.dim());

    rec.series.assign(grid.size(), kNaN);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!gen.defined_at(grid[i])) {
            rec.undefined_times.push_back(grid[i]);
            continue;
        }
        const Matrix c = choi(gen.at(grid[i]));
        rec.series[i] = (me.vector.adjoint() * c * me.vector)(0).real();
    }
    const double tol = 1e-9 * scale_of(rec.series);
    PointAccum acc(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (std::isfinite(rec.series[i])) acc.consider(i, rec.series[i] - tol);
    rec.primary = acc.done(grid);
    rec.primary_route = "pointwise";
    return rec;
}

WitnessRecord w_blp(const Trajectory& traj, int k, int samples, std::uint64_t seed) {
    if (k < 1) throw std::invalid_argument("w_blp: k must be >= 1");
    if (k > traj.dim) throw std::invalid_argument("w_blp: k exceeds the system dimension");
    if (samples < 1) throw std::invalid_argument("w_blp: need at least one sample");

    WitnessRecord rec;
    rec.name = "blp";
    rec.samples = samples;
    rec.seed = seed;
    rec.order = k;

    const int d = traj.dim;
    const int kd = k * d;
    const std::size_t nt = traj.grid.size();

    Rng rng(mix_seed(seed, "blp"));
    std::vector<Matrix> xs;
    xs.reserve(std::size_t(samples));
    for (int s = 0; s < samples; ++s)
        xs.push_back(random_density(kd, rng) - random_density(kd, rng));

    const OperatorBasis basis = gell_mann_basis(d);
    const Matrix b = basis_vec_matrix(basis);

    std::vector<double> prev(std::size_t(samples), 0.0), tol(std::size_t(samples), 0.0);
    rec.series.assign(nt, 0.0);
    StepAccum acc(nt - 1);
    Matrix y(kd, kd);
    for (std::size_t i = 0; i < nt; ++i) {
        const Matrix m = b * traj.frames[i].matrix() * b.adjoint();
        double max_step = -std::numeric_limits<double>::infinity();
        for (int s = 0; s < samples; ++s) {
            const Matrix& x = xs[std::size_t(s)];
            for (int a = 0; a < k; ++a)
                for (int c = 0; c < k; ++c)
                    y.block(Eigen::Index(a) * d, Eigen::Index(c) * d, d, d) =
                        unvec(m * vec(x.block(Eigen::Index(a) * d, Eigen::Index(c) * d, d, d)));
            const Matrix yh = 0.5 * (y + Matrix(y.adjoint()));
            const double norm = trace_norm_hermitian(yh);
            if (i == 0) {
                tol[std::size_t(s)] = 1e-9 * std::max(1.0, norm);
            } else {
                const double diff = norm - prev[std::size_t(s)];
                max_step = std::max(max_step, diff);
                acc.consider(i - 1, diff - tol[std::size_t(s)]);
            }
            prev[std::size_t(s)] = norm;
        }
        if (i > 0) rec.series[i] = max_step;
    }
    rec.primary = acc.done(traj.grid);
    rec.primary_route = "sampled_trace_norm";
    rec.series_name = "max_sample_trace_norm_step";
    rec.sampling_note = rec.primary.violated
                            ? "violation found within " + std::to_string(samples) + " samples"
                            : "no violation found in " + std::to_string(samples) +
                                  " samples (one-sided evidence only)";
    return rec;
}

WitnessRecord w_hs_norm(const Trajectory& traj, int samples, std::uint64_t seed) {
    if (!traj.cls.unital) return inapplicable("hs_norm", "trajectory is not unital");
    if (samples < 1) throw std::invalid_argument("w_hs_norm: need at least one sample");

    WitnessRecord rec;
    rec.name = "hs_norm";
    rec.samples = samples;
    rec.seed = seed;

    const int d = traj.dim;
    const Eigen::Index n = Eigen::Index(d) * d;
    const std::size_t nt = traj.grid.size();
    const OperatorBasis basis = gell_mann_basis(d);
    const Matrix b = basis_vec_matrix(basis);

    Rng rng(mix_seed(seed, "hs_norm"));

    std::vector<Vector> coords;  // random normal operators, basis coordinates
    coords.reserve(std::size_t(samples));
    for (int s = 0; s < samples; ++s)
        coords.push_back(b.adjoint() * vec(random_normal_matrix(d, rng)));

    std::vector<RealVector> blochs;  // random unit Bloch vectors
    blochs.reserve(std::size_t(samples));
    for (int s = 0; s < samples; ++s) blochs.push_back(random_unit_vector(int(n) - 1, rng));

    const auto ns = static_cast<std::size_t>(samples);
    std::vector<double> prev_op(ns, 0.0), prev_bl(ns, 0.0), tol_op(ns, 0.0), tol_bl(ns, 0.0);
    rec.series.assign(nt, 0.0);
    StepAccum op_acc(nt - 1), bl_acc(nt - 1);
    for (std::size_t i = 0; i < nt; ++i) {
        const Matrix& f = traj.frames[i].matrix();
        const Matrix delta = traj.frames[i].linear_block_complex();
        double max_step = -std::numeric_limits<double>::infinity();
        for (int s = 0; s < samples; ++s) {
            const double norm_op = (f * coords[std::size_t(s)]).norm();
            const double norm_bl = (delta * blochs[std::size_t(s)].cast<Complex>()).norm();
            if (i == 0) {
                tol_op[std::size_t(s)] = 1e-9 * std::max(1.0, norm_op);
                tol_bl[std::size_t(s)] = 1e-9 * std::max(1.0, norm_bl);
            } else {
                const double d_op = norm_op - prev_op[std::size_t(s)];
                const double d_bl = norm_bl - prev_bl[std::size_t(s)];
                op_acc.consider(i - 1, d_op - tol_op[std::size_t(s)]);
                bl_acc.consider(i - 1, d_bl - tol_bl[std::size_t(s)]);
                max_step = std::max(max_step, d_op);
            }
            prev_op[std::size_t(s)] = norm_op;
            prev_bl[std::size_t(s)] = norm_bl;
        }
        if (i > 0) rec.series[i] = max_step;
    }
    rec.primary = op_acc.done(traj.grid);
    rec.primary_route = "operator_norm";
    rec.secondary = bl_acc.done(traj.grid);
    rec.secondary_route = "bloch_contraction";
    rec.series_name = "max_sample_hs_norm_step";
    rec.sampling_note = rec.primary.violated
                            ? "violation found within " + std::to_string(samples) + " samples"
                            : "no violation found in " + std::to_string(samples) +
                                  " samples (one-sided evidence only)";
    return rec;
}

WitnessRecord w_body_containment(const Trajectory& traj) {
    if (!traj.commutative)
        return inapplicable("body_containment", "trajectory is not commutative");
    if (!traj.cls.hermitian && !traj.cls.normal)
        return inapplicable("body_containment", "map is neither Hermitian nor normal");

    WitnessRecord rec;
    rec.name = "body_containment";
    const std::size_t nt = traj.grid.size();

    // Sorted singular values of Delta: containment up to rotation.
    RouteResult sorted_result;
    {
        StepAccum acc(nt - 1);
        const Eigen::Index nr = traj.body_semiaxes.cols();
        for (Eigen::Index r = 0; r < nr; ++r) {
            double scale = 1.0;
            for (std::size_t i = 0; i < nt; ++i)
                scale = std::max(scale, traj.body_semiaxes(Eigen::Index(i), r));
            const double tol = 1e-9 * scale;
            for (std::size_t i = 0; i + 1 < nt; ++i)
                acc.consider(i, traj.body_semiaxes(Eigen::Index(i) + 1, r) -
                                    traj.body_semiaxes(Eigen::Index(i), r) - tol);
        }
        sorted_result = acc.done(traj.grid);
    }

    if (traj.cls.hermitian) {
        // Shared eigen-axes: branchwise semi-axis dominance (unit root
        // excluded).
        StepAccum acc(nt - 1);
        for (Eigen::Index b = 1; b < traj.eigenpaths.cols(); ++b) {
            double scale = 1.0;
            for (std::size_t i = 0; i < nt; ++i)
                scale = std::max(scale, std::abs(traj.eigenpaths(Eigen::Index(i), b)));
            const double tol = 1e-9 * scale;
            for (std::size_t i = 0; i + 1 < nt; ++i)
                acc.consider(i, std::abs(traj.eigenpaths(Eigen::Index(i) + 1, b)) -
                                    std::abs(traj.eigenpaths(Eigen::Index(i), b)) - tol);
        }
        rec.primary = acc.done(traj.grid);
        rec.primary_route = "branch_axes";
        rec.secondary = sorted_result;
        rec.secondary_route = "sorted_singulars";
    } else {
        rec.primary = sorted_result;
        rec.primary_route = "sorted_singulars";
    }

    rec.series_name = "max_semiaxis_step";
    rec.series.assign(nt, 0.0);
    for (std::size_t i = 1; i < nt; ++i) {
        double worst = -std::numeric_limits<double>::infinity();
        for (Eigen::Index r = 0; r < traj.body_semiaxes.cols(); ++r)
            worst = std::max(worst, traj.body_semiaxes(Eigen::Index(i), r) -
                                        traj.body_semiaxes(Eigen::Index(i) - 1, r));
        rec.series[i] = worst;
    }
    return rec;
}

WitnessRecord w_cp_divisibility(const TimeLocalGenerator& gen, const TimeGrid& grid) {
    WitnessRecord rec;
    rec.name = "cp_divisibility";
    rec.series_name = "ccp_min_eig";
    rec.series.assign(grid.size(), kNaN);

    PointAccum acc(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!gen.defined_at(grid[i])) {
            rec.undefined_times.push_back(grid[i]);
            continue;
        }
        const CcpResult r = ccp_test(gen.at(grid[i]));
        rec.series[i] = r.min_eig;
        acc.consider(i, -r.min_eig - 1e-9);
    }
    rec.primary = acc.done(grid);
    rec.primary_route = "ccp";

    for (const auto& cond : gen.rate_conditions()) {
        std::vector<double> values(grid.size(), kNaN);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            try {
                values[i] = cond.value(grid[i]);
            } catch (const SingularGeneratorError&) {
                continue;
            }
        }
        const double tol = 1e-9 * scale_of(values);
        PointAccum cacc(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (std::isfinite(values[i])) cacc.consider(i, -values[i] - tol);
        ConditionResult cr;
        cr.name = cond.name;
        cr.kind = cond.kind == RateCondition::Kind::CompletePositivity ? "cp" : "pdiv";
        cr.result = cacc.done(grid);
        rec.conditions.push_back(std::move(cr));
    }
    return rec;
}

WitnessRecord witness_inapplicable(std::string name, std::string reason) {
    WitnessRecord rec;
    rec.name = std::move(name);
    rec.applicable = false;
    rec.reason = std::move(reason);
    return rec;
}

bool WitnessReport::any_violation() const {
    for (const auto& r : records)
        if (r.violated()) return true;
    return false;
}

WitnessReport aggregate(std::vector<WitnessRecord> records, const Trajectory& traj,
                        std::uint64_t seed) {
    WitnessReport rep;
    rep.family = traj.family;
    rep.dim = traj.dim;
    rep.seed = seed;
    rep.t_max = traj.grid.t_max();
    rep.grid_points = traj.grid.size();
    rep.flags = traj.cls;
    rep.commutative = traj.commutative;
    rep.real_spectrum = traj.real_spectrum;
    rep.records = std::move(records);

    WitnessSummary& s = rep.summary;
    for (const auto& r : rep.records) {
        if (!r.applicable) continue;
        if (r.violated()) s.violating.push_back(r.name);
        if (r.name == "cp_divisibility") {
            s.cp_evaluated = true;
            s.cp_divisibility_violated = r.primary.violated;
        } else if (r.violated()) {
            if (r.name == "blp" && r.order > 1) {
                // a k >= 2 trace-norm violation certifies k-indivisibility,
                // hence CP-indivisibility, but says nothing about P.
                s.cp_divisibility_violated = true;
            } else {
                s.p_divisibility_violated = true;
            }
        }
    }
    // a P-level failure disproves CP-divisibility by implication
    if (s.p_divisibility_violated) s.cp_divisibility_violated = true;
    s.essentially_non_markovian_evidence = s.p_divisibility_violated;

    if (s.violating.empty()) {
        s.classification = "no non-Markovianity detected by implemented witnesses";
    } else if (s.cp_divisibility_violated && !s.p_divisibility_violated) {
        s.classification = "CP-indivisible, P-divisibility evidence intact";
    } else {
        s.classification = "P-divisibility violated (witnesses:";
        bool first = true;
        for (const auto& name : s.violating) {
            if (name == "cp_divisibility") continue;
            s.classification += first ? " " : ", ";
            s.classification += name;
            first = false;
        }
        s.classification += ")";
    }
    return rep;
}

namespace {

nlohmann::ordered_json route_to_json(const RouteResult& r) {
    nlohmann::ordered_json j;
    j["violated"] = r.violated;
    if (std::isfinite(r.first_violation_time))
        j["first_violation_time"] = r.first_violation_time;
    else
        j["first_violation_time"] = nullptr;
    j["worst_margin"] = r.worst_margin;
    auto intervals = nlohmann::ordered_json::array();
    for (const auto& iv : r.intervals)
        intervals.push_back({{"t_start", iv.t_start}, {"t_end", iv.t_end}});
    j["violations"] = std::move(intervals);
    return j;
}

}  // namespace

nlohmann::ordered_json report_to_json(const WitnessReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = "dynamap-report-v1";
    j["family"] = report.family;
    j["dim"] = report.dim;
    j["seed"] = report.seed;
    j["grid"] = {{"t_max", report.t_max}, {"points", report.grid_points}};
    j["flags"] = {{"commutative", report.commutative},
                  {"hermitian", report.flags.hermitian},
                  {"normal", report.flags.normal},
                  {"unital", report.flags.unital},
                  {"trace_preserving", report.flags.trace_preserving},
                  {"real_spectrum", report.real_spectrum}};

    auto witnesses = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        nlohmann::ordered_json w;
        w["name"] = r.name;
        w["applicable"] = r.applicable;
        w["reason"] = r.reason;
        if (r.applicable) {
            w["violated"] = r.primary.violated;
            w["route"] = r.primary_route;
            w["result"] = route_to_json(r.primary);
            if (r.secondary) {
                w["secondary_route"] = r.secondary_route;
                w["secondary_result"] = route_to_json(*r.secondary);
            }
            if (!r.conditions.empty()) {
                auto conds = nlohmann::ordered_json::array();
                for (const auto& c : r.conditions) {
                    nlohmann::ordered_json cj;
                    cj["name"] = c.name;
                    cj["kind"] = c.kind;
                    cj["result"] = route_to_json(c.result);
                    conds.push_back(std::move(cj));
                }
                w["rate_conditions"] = std::move(conds);
            }
            if (r.samples > 0) {
                w["samples"] = r.samples;
                w["seed"] = r.seed;
                w["sampling_note"] = r.sampling_note;
                if (r.order > 0) w["order"] = r.order;
            }
            w["undefined_times"] = r.undefined_times;
            w["series_name"] = r.series_name;
            w["series"] = r.series;
        }
        witnesses.push_back(std::move(w));
    }
    j["witnesses"] = std::move(witnesses);

    j["summary"] = {{"cp_evaluated", report.summary.cp_evaluated},
                    {"cp_divisibility_violated", report.summary.cp_divisibility_violated},
                    {"p_divisibility_violated", report.summary.p_divisibility_violated},
                    {"essentially_non_markovian_evidence",
                     report.summary.essentially_non_markovian_evidence},
                    {"classification", report.summary.classification},
                    {"violating_witnesses", report.summary.violating}};
    return j;
}

}  // namespace dynamap
