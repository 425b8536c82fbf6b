// Acceptance suite: one pass/fail line per criterion.
//
// Usage: acceptance [path-to-cli] [path-to-presets-dir]
// The CLI path and preset directory are only needed by the determinism
// criterion; without them it is reported as FAIL (unverifiable).
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dynamap/scenario.hpp"
#include "dynamap/svg.hpp"
#include "support.hpp"

using namespace dynamap;
using namespace testsupport;

namespace {

struct Check {
    bool ok = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (failures.size() < 8) failures.push_back(what);
        }
    }
    void expect_near(double a, double b, double tol, const std::string& what) {
        if (!(std::abs(a - b) <= tol)) {
            std::ostringstream os;
            os << what << " (|" << a << " - " << b << "| = " << std::abs(a - b) << " > " << tol
               << ")";
            expect(false, os.str());
        }
    }
    void note(const std::string& text) { notes.push_back(text); }
};

std::string g_cli_path;
std::string g_presets_dir;

constexpr double kPi = std::numbers::pi;

std::vector<WitnessRecord> all_witness_records(const Trajectory& traj,
                                               const TimeLocalGenerator* gen, int blp_samples,
                                               int hs_samples, std::uint64_t seed) {
    std::vector<WitnessRecord> rs;
    rs.push_back(w_volume(traj));
    rs.push_back(w_eigen_moduli(traj));
    rs.push_back(w_f_monotone(traj));
    rs.push_back(gen ? w_ew_functional(*gen, traj.grid)
                     : witness_inapplicable("ew_functional", "no generator"));
    rs.push_back(w_blp(traj, 1, blp_samples, seed));
    if (traj.cls.unital)
        rs.push_back(w_hs_norm(traj, hs_samples, seed));
    else
        rs.push_back(witness_inapplicable("hs_norm", "not unital"));
    rs.push_back(w_body_containment(traj));
    rs.push_back(gen ? w_cp_divisibility(*gen, traj.grid)
                     : witness_inapplicable("cp_divisibility", "no generator"));
    return rs;
}

// --- criterion 1 -----------------------------------------------------------

void criterion_prop3_identity(Check& c) {
    Rng rng(0xf00d);
    for (int d : {2, 3, 4}) {
        const OperatorBasis basis = gell_mann_basis(d);
        for (int trial = 0; trial < 200; ++trial) {
            const SuperOperator phi = (trial % 2 == 0) ? random_cptp(d, 1 + trial % 4, rng)
                                                       : random_hp_tp(d, rng, basis);
            Eigen::ComplexEigenSolver<Matrix> es(phi.matrix(), false);
            const double via_spectrum = es.eigenvalues().sum().real() / double(d * d);
            const double via_overlap = witness_f(phi);
            if (std::abs(via_overlap - via_spectrum) > 1e-9) {
                c.expect(false, "identity broken at d=" + std::to_string(d) + " trial " +
                                    std::to_string(trial) + " (|diff| = " +
                                    std::to_string(std::abs(via_overlap - via_spectrum)) + ")");
                return;
            }
        }
    }
}

// --- criterion 2 -----------------------------------------------------------

void criterion_dephasing_closed_forms(Check& c) {
    const TimeLocalGenerator gen = dephasing_qubit(RateFunction::constant(1.0));
    const TimeGrid grid = TimeGrid::uniform(5.0, 501);
    const Trajectory traj = propagate_commutative(gen, grid);

    double worst_lam = 0.0, worst_vol = 0.0, worst_f = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const Eigen::Index row = Eigen::Index(i);
        // branches 1, 2 carry e^-t (sigma_x, sigma_y); 0 and 3 stay at 1
        worst_lam = std::max(worst_lam,
                             std::abs(traj.eigenpaths(row, 1) - std::exp(-t)));
        worst_lam = std::max(worst_lam,
                             std::abs(traj.eigenpaths(row, 2) - std::exp(-t)));
        worst_lam = std::max(worst_lam, std::abs(traj.eigenpaths(row, 3) - 1.0));
        worst_vol = std::max(worst_vol, std::abs(traj.volume(row) - std::exp(-2 * t)));
        worst_f = std::max(worst_f, std::abs(traj.f_series(row) - 0.5 * (1 + std::exp(-t))));
    }
    c.expect(worst_lam <= 1e-8, "lambda(t) deviates from e^-t by " + std::to_string(worst_lam));
    c.expect(worst_vol <= 1e-8, "Vol(t) deviates from e^-2t by " + std::to_string(worst_vol));
    c.expect(worst_f <= 1e-8, "f(t) deviates from (1+e^-t)/2 by " + std::to_string(worst_f));

    for (const auto& rec : all_witness_records(traj, &gen, 200, 100, 0xaaa1)) {
        c.expect(rec.applicable, rec.name + " unexpectedly inapplicable: " + rec.reason);
        c.expect(!rec.primary.violated, rec.name + " reported a violation");
    }
}

// --- criterion 3 -----------------------------------------------------------

void criterion_eternal_pauli(Check& c) {
    const TimeLocalGenerator gen = pauli_channel(
        RateFunction::constant(1.0), RateFunction::constant(1.0), RateFunction::parse("-tanh"));
    const TimeGrid grid = TimeGrid::uniform(5.0, 501);
    const Trajectory traj = propagate_commutative(gen, grid);

    // eigenpaths match e^-t cosh t and e^-2t
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const Eigen::Index row = Eigen::Index(i);
        const double lam12 = std::exp(-t) * std::cosh(t);
        worst = std::max(worst, std::abs(traj.eigenpaths(row, 1) - lam12));
        worst = std::max(worst, std::abs(traj.eigenpaths(row, 2) - lam12));
        worst = std::max(worst, std::abs(traj.eigenpaths(row, 3) - std::exp(-2 * t)));
    }
    c.expect(worst <= 1e-8, "eigenpaths deviate from closed forms by " + std::to_string(worst));

    const WitnessRecord cp = w_cp_divisibility(gen, grid);
    c.expect(cp.primary.violated, "ccp route found no violation");
    // ccp fails at every grid t > 0
    bool every_point = cp.primary.intervals.size() == 1 &&
                       cp.primary.intervals[0].t_start == grid[1] &&
                       cp.primary.intervals[0].t_end == grid[grid.size() - 1];
    c.expect(every_point, "ccp violation does not cover every t > 0");
    for (const auto& cond : cp.conditions) {
        if (cond.kind == "pdiv")
            c.expect(!cond.result.violated, "pairwise sum " + cond.name + " unexpectedly violated");
        if (cond.name == "g3") c.expect(cond.result.violated, "g3 >= 0 should be violated");
        if (cond.name == "g1" || cond.name == "g2")
            c.expect(!cond.result.violated, cond.name + " >= 0 unexpectedly violated");
    }

    c.expect(!w_eigen_moduli(traj).primary.violated, "eigen_moduli fired");
    c.expect(!w_volume(traj).primary.violated, "volume fired");
    c.expect(!w_hs_norm(traj, 100, 0xaaa3).primary.violated, "hs_norm fired");
    c.expect(!w_blp(traj, 1, 200, 0xaaa3).primary.violated, "blp k=1 fired");
}

// --- criterion 4 -----------------------------------------------------------

struct LorentzianOracle {
    double gamma_m, lambda;
    double g(double t) const { return lorentzian_g_closed_form(gamma_m, lambda, t); }
    double gdot(double t) const {
        const double disc = lambda * lambda - 2.0 * gamma_m * lambda;
        const double pref = gamma_m * lambda;
        if (std::abs(disc) < 1e-14)
            return -0.5 * pref * t * std::exp(-0.5 * lambda * t);
        if (disc > 0) {
            const double om = std::sqrt(disc);
            return -std::exp(-0.5 * lambda * t) * (pref / om) * std::sinh(0.5 * om * t);
        }
        const double om = std::sqrt(-disc);
        return -std::exp(-0.5 * lambda * t) * (pref / om) * std::sin(0.5 * om * t);
    }
};

void criterion_lorentzian_dual_route(Check& c) {
    const TimeGrid grid = TimeGrid::uniform(5.0, 501);
    const double h = grid.mean_step();

    auto pointwise_first_negative = [&](const std::vector<double>& vals) {
        double scale = 1.0;
        for (double v : vals)
            if (std::isfinite(v)) scale = std::max(scale, std::abs(v));
        const double tol = 1e-9 * scale;
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (std::isfinite(vals[i]) && vals[i] < -tol) return grid[i];
        return std::numeric_limits<double>::quiet_NaN();
    };

    for (const bool strong : {false, true}) {
        const double gamma_m = strong ? 4.0 : 0.25;
        const LorentzianOracle oracle{gamma_m, 1.0};
        const GFunction g = lorentzian_G({.gamma_m = gamma_m, .width = 1.0}, 5.0 + 1e-6);
        const char* label = strong ? "strong" : "weak";

        // dual route on G itself
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst, std::abs(g.value(grid[i]) - oracle.g(grid[i])));
        c.expect(worst <= 1e-7,
                 std::string(label) + ": IVP G deviates from the closed form by " +
                     std::to_string(worst));

        const AmplitudeDamping ad = amplitude_damping(g);
        const Trajectory traj = sample_family(ad.map, grid);
        const WitnessRecord f_rec = w_f_monotone(traj);
        c.expect(f_rec.applicable, std::string(label) + ": f witness inapplicable");

        const WitnessRecord cp = w_cp_divisibility(ad.generator, grid);
        const ConditionResult* gamma_cond = nullptr;
        for (const auto& cond : cp.conditions)
            if (cond.name == "gamma") gamma_cond = &cond;
        c.expect(gamma_cond != nullptr, "missing gamma rate condition");
        if (!gamma_cond) return;

        if (!strong) {
            c.expect(!gamma_cond->result.violated, "weak: gamma(t) >= 0 violated");
            c.expect(!f_rec.primary.violated, "weak: f not monotone");
        } else {
            c.expect(f_rec.primary.violated, "strong: f stayed monotone");
            c.expect(gamma_cond->result.violated, "strong: gamma(t) >= 0 not violated");

            // dual route on the f witness: detected first violation vs the
            // closed-form prediction, within one grid step
            std::vector<double> f_cf(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double gv = oracle.g(grid[i]);
                f_cf[i] = 0.25 * (1 + gv) * (1 + gv);
            }
            double t_f_oracle = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t i = 0; i + 1 < grid.size(); ++i)
                if (f_cf[i + 1] - f_cf[i] > 1e-9) {
                    t_f_oracle = grid[i];
                    break;
                }
            c.expect_near(f_rec.primary.first_violation_time, t_f_oracle, h + 1e-12,
                          "strong: f first violation disagrees with the closed-form route");

            // dual route on the gamma condition
            std::vector<double> gamma_cf(grid.size(), std::numeric_limits<double>::quiet_NaN());
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double gv = oracle.g(grid[i]);
                if (std::abs(gv) > 1e-12) gamma_cf[i] = -2.0 * oracle.gdot(grid[i]) / gv;
            }
            const double t_g_oracle = pointwise_first_negative(gamma_cf);
            c.expect_near(gamma_cond->result.first_violation_time, t_g_oracle, h + 1e-12,
                          "strong: gamma first violation disagrees with the closed-form route");

            std::ostringstream os;
            os << "strong coupling: gamma condition first fires at t = "
               << gamma_cond->result.first_violation_time << " (G zero crossing), f "
               << "monotonicity first fires at t = " << f_rec.primary.first_violation_time
               << " (first minimum of G); the two witnesses flag different intervals";
            c.note(os.str());
        }
    }
}

// --- criterion 5 -----------------------------------------------------------

void criterion_weyl_inequality(Check& c) {
    const WeylFamily w = weyl_operators(3);
    const TimeGrid grid = TimeGrid::uniform(2.0, 41);
    const double h = grid.mean_step();
    Rng rng(0x2024);
    std::uniform_real_distribution<double> uni(0.05, 0.55);

    // brute-force conjugation phases phi[(m,n), (k,l)]
    Eigen::MatrixXcd phases(9, 8);
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 3; ++n) {
            int col = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l) {
                    if (k == 0 && l == 0) continue;
                    const Matrix conj = w.op(k, l) * w.op(m, n) * w.op(k, l).adjoint();
                    phases(m * 3 + n, col++) = (w.op(m, n).adjoint() * conj).trace() / 3.0;
                }
        }

    PropagateOptions opts;
    opts.prefer_analytic = false;  // numeric transfer matrices + eigensolver
    opts.svd = false;

    int checked = 0, skipped = 0;
    for (int draw = 0; draw < 50; ++draw) {
        std::vector<double> rates(8);
        for (double& r : rates) r = uni(rng);
        if (draw % 2 == 1) rates[rng() % 8] *= -1.0;  // one negative rate

        std::vector<RateFunction> rfs;
        for (double r : rates) rfs.push_back(RateFunction::constant(r));
        const TimeLocalGenerator gen = weyl_channel(3, std::move(rfs));
        const Trajectory traj = propagate_commutative(gen, grid, opts);

        // oracle: Re mu_mn = -sum gamma_kl (1 - Re phase)
        RealVector re_mu(9);
        for (int b = 0; b < 9; ++b) {
            double v = 0.0;
            for (int j = 0; j < 8; ++j) v -= rates[std::size_t(j)] * (1.0 - phases(b, j).real());
            re_mu(b) = v;
        }

        // pair numeric branches to (m,n) through the average log slope
        const double t_end = grid[grid.size() - 1];
        std::vector<int> assigned(9, -1);
        std::vector<bool> used(9, false);
        std::vector<std::pair<double, std::pair<int, int>>> dist;
        for (int b = 0; b < 9; ++b) {
            const double slope =
                std::log(std::abs(traj.eigenpaths(Eigen::Index(grid.size()) - 1, b))) / t_end;
            for (int o = 0; o < 9; ++o) dist.push_back({std::abs(slope - re_mu(o)), {b, o}});
        }
        std::sort(dist.begin(), dist.end());
        for (const auto& [d, pair] : dist) {
            if (assigned[std::size_t(pair.first)] >= 0 || used[std::size_t(pair.second)]) continue;
            assigned[std::size_t(pair.first)] = pair.second;
            used[std::size_t(pair.second)] = true;
        }

        for (int b = 0; b < 9; ++b) {
            const double mu = re_mu(assigned[std::size_t(b)]);
            for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
                const double cur = std::abs(traj.eigenpaths(Eigen::Index(i), b));
                const double nxt = std::abs(traj.eigenpaths(Eigen::Index(i) + 1, b));
                const double deriv = (nxt - cur) / h;
                const double oracle_deriv = mu * cur;
                if (std::abs(deriv) <= 1e-8 || std::abs(oracle_deriv) <= 1e-8) {
                    ++skipped;
                    continue;
                }
                ++checked;
                if ((deriv > 0) != (oracle_deriv > 0)) {
                    std::ostringstream os;
                    os << "sign mismatch at draw " << draw << ", branch " << b << ", t = "
                       << grid[i] << " (discrete " << deriv << ", rate sum " << oracle_deriv
                       << ")";
                    c.expect(false, os.str());
                    return;
                }
            }
        }
    }
    c.note("sign comparisons checked: " + std::to_string(checked) + ", below derivative tolerance: " +
           std::to_string(skipped));
    c.expect(checked > 10000, "too few resolvable sign comparisons");
}

// --- criterion 6 -----------------------------------------------------------

void criterion_microscopic_oracle(Check& c) {
    const double field = 0.5, coupling = 0.8;
    DecoherenceModel model;
    model.dim_a = 2;
    model.dim_b = 2;
    model.eps = (RealVector(2) << 1.0, -1.0).finished();
    model.h_b = field * pauli_z();
    model.b_k = {coupling * pauli_x(), Matrix(-coupling * pauli_x())};
    model.rho_b = 0.5 * Matrix::Identity(2, 2);
    const PerfectDecoherence pd = perfect_decoherence(model);

    // independent oracle: e^{-iZt} for Z = eps I + a sigma_z + b sigma_x from
    // the Pauli rotation closed form
    auto expz = [&](double eps, double a, double b, double t) {
        const double om = std::sqrt(a * a + b * b);
        Matrix out = std::cos(om * t) * Matrix::Identity(2, 2);
        if (om > 0)
            out -= Complex(0, 1) * (std::sin(om * t) / om) * (a * pauli_z() + b * pauli_x());
        return Matrix(std::exp(Complex(0, -eps * t)) * out);
    };

    for (double t : {0.0, 0.3, 0.7, 1.1, 1.9, 2.6, 3.4, 4.2, 5.0}) {
        Matrix c_oracle(2, 2);
        const Matrix u0 = expz(model.eps(0), field, coupling, t);
        const Matrix u1 = expz(model.eps(1), field, -coupling, t);
        c_oracle(0, 0) = (u0 * model.rho_b * u0.adjoint()).trace();
        c_oracle(0, 1) = (u0 * model.rho_b * u1.adjoint()).trace();
        c_oracle(1, 0) = (u1 * model.rho_b * u0.adjoint()).trace();
        c_oracle(1, 1) = (u1 * model.rho_b * u1.adjoint()).trace();

        c.expect(std::abs(c_oracle(0, 0) - 1.0) < 1e-12, "c_00 != 1");
        c.expect(std::abs(c_oracle(1, 1) - 1.0) < 1e-12, "c_11 != 1");

        const DampingBasis db = damping_basis(pd.map.at(t));
        Vector expect(4);
        expect << c_oracle(0, 0), c_oracle(1, 0), c_oracle(0, 1), c_oracle(1, 1);
        // multiset comparison at 1e-10
        std::vector<Complex> remaining(expect.data(), expect.data() + 4);
        for (Eigen::Index i = 0; i < 4; ++i) {
            auto best = remaining.end();
            double bd = 1e-10;
            for (auto it = remaining.begin(); it != remaining.end(); ++it)
                if (std::abs(*it - db.eigenvalues(i)) <= bd) {
                    bd = std::abs(*it - db.eigenvalues(i));
                    best = it;
                }
            if (best == remaining.end()) {
                c.expect(false, "damping-basis eigenvalue does not match c_kl at t = " +
                                    std::to_string(t));
                return;
            }
            remaining.erase(best);
        }

        const MapClass cls = classify(pd.map.at(t));
        c.expect(cls.normal, "map not normal at t = " + std::to_string(t));
        c.expect(cls.trace_preserving, "map not trace preserving");
    }

    Rng rng(0xbeef);
    std::uniform_real_distribution<double> uni(0.0, 5.0);
    for (int pair = 0; pair < 20; ++pair) {
        const double t = uni(rng), s = uni(rng);
        c.expect(commute_check(pd.map.at(t), pd.map.at(s)) <= 1e-10,
                 "maps fail to commute at sampled pair");
    }
}

// --- criterion 7 -----------------------------------------------------------

void criterion_hs_contraction(Check& c) {
    struct Scenario {
        std::string name;
        TimeLocalGenerator gen;
    };
    std::vector<RateFunction> weyl_rates;
    for (int j = 1; j <= 8; ++j) weyl_rates.push_back(RateFunction::constant(0.06 * j));
    std::vector<Scenario> scenarios;
    scenarios.push_back({"dephasing", dephasing_qubit(RateFunction::constant(1.0))});
    scenarios.push_back({"pauli", pauli_channel(RateFunction::constant(1.0),
                                                RateFunction::constant(0.7),
                                                RateFunction::constant(0.4))});
    scenarios.push_back({"weyl_d3", weyl_channel(3, weyl_rates)});

    const TimeGrid grid = TimeGrid::uniform(5.0, 101);
    Rng rng(0x5eed7);
    for (const auto& scenario : scenarios) {
        const Trajectory traj = propagate_commutative(scenario.gen, grid);
        c.expect(traj.cls.unital, scenario.name + ": not unital");
        const int d = traj.dim;
        const Eigen::Index n = Eigen::Index(d) * d;
        const OperatorBasis basis = gell_mann_basis(d);
        const Matrix bmat = basis_vec_matrix(basis);

        for (int sample = 0; sample < 100; ++sample) {
            const Matrix x = random_normal_matrix(d, rng);
            const Vector coords = bmat.adjoint() * vec(x);
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const Vector out = traj.frames[i].matrix() * coords;
                const double norm = out.norm();
                if (norm > prev + 1e-10) {
                    c.expect(false, scenario.name + ": HS norm grew at t = " +
                                        std::to_string(grid[i]));
                    return;
                }
                prev = norm;
                // Bloch identity |Lambda[X]|^2 = |x0|^2 d + |Delta x|^2
                const Complex x0 = x.trace() / double(d);
                const Vector tail = coords.tail(n - 1);
                const Vector delta_x = traj.frames[i].linear_block_complex() * tail;
                const double lhs = norm * norm;
                const double rhs = std::norm(x0) * d + delta_x.squaredNorm();
                if (std::abs(lhs - rhs) > 1e-10) {
                    c.expect(false, scenario.name + ": Bloch norm identity off by " +
                                        std::to_string(std::abs(lhs - rhs)));
                    return;
                }
            }
        }
    }
}

// --- criterion 8 -----------------------------------------------------------

void criterion_containment(Check& c) {
    const TimeGrid grid = TimeGrid::uniform(5.0, 501);

    struct Scenario {
        std::string name;
        TimeLocalGenerator gen;
    };
    std::vector<Scenario> markovian;
    markovian.push_back({"dephasing", dephasing_qubit(RateFunction::constant(1.0))});
    markovian.push_back({"pauli", pauli_channel(RateFunction::constant(1.0),
                                                RateFunction::constant(0.7),
                                                RateFunction::constant(0.4))});

    for (const auto& scenario : markovian) {
        const Trajectory traj = propagate_commutative(scenario.gen, grid);
        // literal all-pairs branchwise check on the semi-axes |lambda_b|
        for (Eigen::Index b = 1; b < traj.eigenpaths.cols(); ++b) {
            double running_min = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double v = std::abs(traj.eigenpaths(Eigen::Index(i), b));
                // s_b(t) <= s_b(s) for every s < t <=> never above the
                // running minimum of earlier values
                if (v > running_min + 1e-9) {
                    c.expect(false, scenario.name + ": axis " + std::to_string(b) +
                                        " grows at t = " + std::to_string(grid[i]));
                    return;
                }
                running_min = std::min(running_min, v);
            }
        }
        c.expect(!w_body_containment(traj).primary.violated,
                 scenario.name + ": containment witness fired");
    }

    const Trajectory sin_traj =
        propagate_commutative(dephasing_qubit(RateFunction::parse("sin")), grid);
    const WitnessRecord rec = w_body_containment(sin_traj);
    c.expect(rec.primary.violated, "sin-rate dephasing: containment failure not detected");
    c.expect(rec.primary.first_violation_time > kPi - 2 * grid.mean_step() &&
                 rec.primary.first_violation_time < 2 * kPi,
             "containment failure detected outside (pi, 2 pi)");
}

// --- criterion 9 -----------------------------------------------------------

void criterion_route_agreement(Check& c) {
    const TimeGrid grid = TimeGrid::uniform(5.0, 51);

    struct Scenario {
        std::string name;
        TimeLocalGenerator gen;
    };
    std::vector<Scenario> scenarios;
    scenarios.push_back({"dephasing_qubit", dephasing_qubit(RateFunction::constant(1.0))});
    scenarios.push_back(
        {"dephasing_weyl_d3",
         dephasing_weyl(3, {RateFunction::constant(1.0), RateFunction::constant(0.5)})});
    scenarios.push_back(
        {"dephasing_gellmann_d3",
         dephasing_gellmann(3, {RateFunction::constant(1.0), RateFunction::constant(0.5)})});
    scenarios.push_back({"pauli_eternal",
                         pauli_channel(RateFunction::constant(1.0), RateFunction::constant(1.0),
                                       RateFunction::parse("-tanh"))});
    {
        std::vector<RateFunction> rates;
        for (int j = 1; j <= 8; ++j) rates.push_back(RateFunction::constant(0.05 * j));
        scenarios.push_back({"weyl_d3", weyl_channel(3, std::move(rates))});
    }
    scenarios.push_back(
        {"generalized_pauli_d3",
         generalized_pauli(3, {RateFunction::constant(0.4), RateFunction::constant(0.3),
                               RateFunction::constant(0.2), RateFunction::constant(0.1)})});
    {
        GFunction g;
        g.value = [](double t) { return Complex(std::exp(-0.25 * t), 0.0); };
        g.derivative = [](double t) { return Complex(-0.25 * std::exp(-0.25 * t), 0.0); };
        scenarios.push_back({"amplitude_damping", amplitude_damping(g).generator});
    }

    PropagateOptions light;
    light.svd = false;
    light.spectra = false;
    for (const auto& scenario : scenarios) {
        const Trajectory comm = propagate_commutative(scenario.gen, grid, light);
        const Trajectory ode = propagate_ode(scenario.gen, grid, light);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            worst = std::max(worst,
                             (comm.frames[i].matrix() - ode.frames[i].matrix()).cwiseAbs().maxCoeff());
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%s: max route deviation %.2e", scenario.name.c_str(),
                      worst);
        c.expect(worst <= 1e-7, buf);
        c.note(buf);
    }
}

// --- criterion 10 ----------------------------------------------------------

int run_in_dir(const std::string& dir, const std::string& command) {
    const std::string full = "cd '" + dir + "' && " + command + " > cli_stdout.txt 2> cli_stderr.txt";
    const int status = std::system(full.c_str());
    if (status < 0) return -1;
    return (status >> 8) & 0xff;
}

std::string read_bytes(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void criterion_determinism(Check& c) {
    if (g_cli_path.empty() || g_presets_dir.empty()) {
        c.expect(false, "cli path / presets directory not given on the command line");
        return;
    }
    namespace fs = std::filesystem;
    const fs::path presets(g_presets_dir);
    c.expect(fs::exists(presets), "presets directory missing: " + g_presets_dir);

    std::vector<fs::path> configs;
    for (const auto& entry : fs::directory_iterator(presets))
        if (entry.path().extension() == ".json") configs.push_back(entry.path());
    std::sort(configs.begin(), configs.end());
    c.expect(configs.size() == 10, "expected 10 shipped presets, found " +
                                       std::to_string(configs.size()));

    const fs::path base = fs::temp_directory_path() / "dynamap_acceptance";
    fs::remove_all(base);

    for (const auto& config : configs) {
        ScenarioConfig cfg = ScenarioConfig::load(config);
        std::vector<std::string> outputs;
        for (int run = 0; run < 2; ++run) {
            const fs::path dir = base / (config.stem().string() + "_" + std::to_string(run));
            fs::create_directories(dir);
            const int code =
                run_in_dir(dir.string(), "'" + g_cli_path + "' run '" + config.string() + "'");
            // the qubit-environment decoherence model recoheres periodically,
            // so it reports violations alongside the negative-rate scenarios
            const bool expect_violation = config.stem() == "dephasing_sin" ||
                                          config.stem() == "pauli_eternal" ||
                                          config.stem() == "lorentzian_strong" ||
                                          config.stem() == "perfect_decoherence";
            const int expected = expect_violation ? 3 : 0;
            if (code != expected)
                c.expect(false, config.stem().string() + " run " + std::to_string(run) +
                                    ": exit code " + std::to_string(code) + ", expected " +
                                    std::to_string(expected));

            // derived SVG from the produced CSV
            const int plot_code = run_in_dir(
                dir.string(), "'" + g_cli_path + "' plot '" + cfg.csv_path +
                                  "' --cols f,vol --out chart.svg");
            if (plot_code != 0)
                c.expect(false, config.stem().string() + ": plot exited with " +
                                    std::to_string(plot_code));

            outputs.push_back(read_bytes(dir / cfg.csv_path) + "\x1e" +
                              read_bytes(dir / cfg.json_path) + "\x1e" +
                              read_bytes(dir / "chart.svg"));
            c.expect(!outputs.back().empty(), config.stem().string() + ": no output bytes");
        }
        c.expect(outputs[0] == outputs[1],
                 config.stem().string() + ": outputs differ between identical runs");
    }

    // spot-check the run contract on the dephasing presets
    {
        const fs::path dir = base / "dephasing_const_0";
        const CsvTable table = read_csv((dir / "dephasing_const.csv").string());
        const std::size_t f_col = table.column_index("f");
        c.expect(std::abs(table.rows.front()[f_col] - 1.0) < 1e-12, "f(0) != 1");
        c.expect(std::abs(table.rows.back()[f_col] - 0.5033689734995427) < 1e-8,
                 "f(5) != (1+e^-5)/2");
    }
    {
        // violation interval starts within one step of pi
        std::ifstream in(base / "dephasing_sin_0" / "dephasing_sin.json.out");
        const nlohmann::json rep = nlohmann::json::parse(in);
        bool found = false;
        for (const auto& w : rep["witnesses"]) {
            if (w["name"] != "volume") continue;
            const double t0 = w["result"]["violations"][0]["t_start"].get<double>();
            found = std::abs(t0 - kPi) < 0.02;
        }
        c.expect(found, "sin-rate volume violation interval does not start near pi");
    }
    // config validation exit code
    {
        const fs::path dir = base / "badcfg";
        fs::create_directories(dir);
        std::ofstream bad(dir / "bad.json");
        bad << R"({"family":"dephasing_qubit","rates":{"g":"1"},"grid":{},)"
            << R"("output":{"csv":"a.csv","json":"a.json"}})";
        bad.close();
        const int code = run_in_dir(dir.string(), "'" + g_cli_path + "' run bad.json");
        c.expect(code == 2, "empty grid config should exit 2, got " + std::to_string(code));
    }
    fs::remove_all(base);
}

struct Criterion {
    int id;
    std::string name;
    std::function<void(Check&)> fn;
};

}  // namespace

int main(int argc, char** argv) {
    std::error_code ec;
    if (argc > 1) g_cli_path = std::filesystem::absolute(argv[1], ec).string();
    if (argc > 2) g_presets_dir = std::filesystem::absolute(argv[2], ec).string();

    const std::vector<Criterion> criteria = {
        {1, "proposition-3 spectral identity", criterion_prop3_identity},
        {2, "qubit dephasing closed forms", criterion_dephasing_closed_forms},
        {3, "eternal non-Markovian Pauli model", criterion_eternal_pauli},
        {4, "Lorentzian amplitude damping dual route", criterion_lorentzian_dual_route},
        {5, "Weyl channel modulus inequality", criterion_weyl_inequality},
        {6, "microscopic decoherence oracle", criterion_microscopic_oracle},
        {7, "Hilbert-Schmidt contraction and Bloch identity", criterion_hs_contraction},
        {8, "body-of-states containment", criterion_containment},
        {9, "exponential vs time-ordered route agreement", criterion_route_agreement},
        {10, "preset byte determinism", criterion_determinism},
    };

    int failures = 0;
    for (const auto& criterion : criteria) {
        Check check;
        try {
            criterion.fn(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %02d  %-48s %s\n", criterion.id, criterion.name.c_str(),
                    check.ok ? "PASS" : "FAIL");
        for (const auto& note : check.notes) std::printf("              note: %s\n", note.c_str());
        for (const auto& failure : check.failures)
            std::printf("              failure: %s\n", failure.c_str());
        if (!check.ok) ++failures;
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
