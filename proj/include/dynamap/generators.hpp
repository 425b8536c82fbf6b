// generators.hpp — the built-in channel families: time-local generators with
// analytic damping bases and eigenvalue paths where closed forms exist, plus
// the two families exposed directly as dynamical maps.
#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynamap/ode.hpp"
#include "dynamap/rates.hpp"
#include "dynamap/superop.hpp"
#include "dynamap/types.hpp"

namespace dynamap {

// Fixed eigen-operators shared by the whole family, with the eigenvalue
// paths lambda_a(t) of the map and (when defined) mu_a(t) of the generator.
struct AnalyticSpectrum {
    std::vector<Matrix> eigenops;  // d^2, a damping basis of the family
    int unit_branch = 0;           // branch with lambda == 1
    std::function<Vector(double)> lambda_at;
    std::function<Vector(double)> mu_at;  // empty when no generator exists
    bool has_mu = false;
};

// Closed-form scalar inequality value(t) >= 0 attached to a family; `cp`
// conditions characterize CP-divisibility (GKLS rate positivity), `pdiv`
// conditions characterize P-divisibility of the eigenvalue moduli.
struct RateCondition {
    enum class Kind { CompletePositivity, Positivity };
    std::string name;
    Kind kind;
    std::function<double(double)> value;
};

// Time-local generator L_t. Built-in families are linear combinations
// L(t) = sum_j c_j(t) K_j of constant superoperator structures.
class TimeLocalGenerator {
public:
    struct Term {
        std::function<double(double)> coefficient;
        Matrix structure;  // d^2 x d^2 superoperator matrix
    };

    TimeLocalGenerator(int dim, std::string family, std::vector<Term> terms, bool commutative);
    static TimeLocalGenerator custom(int dim, std::function<SuperOperator(double)> eval,
                                     bool commutative_declared);

    int dim() const { return dim_; }
    const std::string& family() const { return family_; }
    bool commutative() const { return commutative_; }

    SuperOperator at(double t) const;
    bool defined_at(double t) const;

    const std::optional<AnalyticSpectrum>& analytic_spectrum() const { return spectrum_; }
    const std::vector<RateCondition>& rate_conditions() const { return conditions_; }

    void set_analytic_spectrum(AnalyticSpectrum s) { spectrum_ = std::move(s); }
    void set_rate_conditions(std::vector<RateCondition> c) { conditions_ = std::move(c); }
    void set_domain_guard(std::function<bool(double)> guard) { defined_ = std::move(guard); }

private:
    int dim_;
    std::string family_;
    std::vector<Term> terms_;
    std::function<SuperOperator(double)> eval_;  // custom hook
    bool commutative_;
    std::optional<AnalyticSpectrum> spectrum_;
    std::vector<RateCondition> conditions_;
    std::function<bool(double)> defined_;
};

// A family of dynamical maps t -> Lambda_t given directly (used where the
// generator may not exist everywhere).
struct MapFamily {
    int dim = 0;
    std::string family;
    std::function<SuperOperator(double)> at;
    bool commutative = false;
    std::optional<AnalyticSpectrum> spectrum;
};

// --- dephasing-type generators -------------------------------------------

// L_t[rho] = gamma(t)/2 (sigma_z rho sigma_z - rho); Hermitian commutative.
TimeLocalGenerator dephasing_qubit(RateFunction gamma);

// L_t[rho] = 1/2 sum_{k=1}^{d-1} gamma_k(t) (U_k0 rho U_k0^dag - rho);
// normal commutative, reduces to dephasing_qubit at d = 2.
TimeLocalGenerator dephasing_weyl(int d, std::vector<RateFunction> gammas);

// L_t[rho] = -1/2 sum_{l=1}^{d-1} gamma_l(t) [V_l, [V_l, rho]]; Hermitian
// commutative, populations invariant.
TimeLocalGenerator dephasing_gellmann(int d, std::vector<RateFunction> gammas);

// --- random-unitary-type generators --------------------------------------

// L_t[rho] = 1/2 sum_k gamma_k(t) (sigma_k rho sigma_k - rho).
TimeLocalGenerator pauli_channel(RateFunction g1, RateFunction g2, RateFunction g3);

// L_t[rho] = sum_{(k,l) != (0,0)} gamma_kl(t) (U_kl rho U_kl^dag - rho).
// Rates ordered by flat index k*d + l with (0,0) skipped.
TimeLocalGenerator weyl_channel(int d, std::vector<RateFunction> gammas);

// L_t[rho] = sum_{a=1}^{d+1} gamma_a(t) (P_a[rho] - rho) with the MUB
// projector channels P_a; prime d only.
TimeLocalGenerator generalized_pauli(int d, std::vector<RateFunction> gammas);

// --- map-level families ---------------------------------------------------

// Complex-valued G(t) with derivative; drives the amplitude-damping family.
struct GFunction {
    std::function<Complex(double)> value;
    std::function<Complex(double)> derivative;
    std::string tag;
};

// The amplitude-damping family exposes both the map (defined for all t) and
// the generator (undefined where |G(t)| < 1e-12; evaluation there throws
// SingularGeneratorError).
struct AmplitudeDamping {
    MapFamily map;
    TimeLocalGenerator generator;
};

AmplitudeDamping amplitude_damping(GFunction g);

// Lorentzian reservoir spectral density
// J(w) = gamma_M lambda^2 / (2 pi [(w - w_c)^2 + lambda^2]).
struct LorentzianBath {
    double gamma_m = 0.0;   // coupling rate
    double width = 1.0;     // lambda > 0
    double omega_c = 0.0;   // center frequency
    double detuning = 0.0;  // omega_c - omega_0
};

// Solves Gdot(t) = -int_0^t k(t - tau) G(tau) dtau with the exponential
// kernel induced by the Lorentzian density, as the equivalent second-order
// IVP G'' + (lambda + i delta) G' + (gamma_M lambda / 2) G = 0 with
// G(0) = 1, G'(0) = 0. Valid on [0, t_max]; on resonance G is real.
GFunction lorentzian_G(const LorentzianBath& bath, double t_max,
                       const OdeOptions& opts = {.rtol = 1e-10, .atol = 1e-14});

// --- microscopic pure-decoherence model -----------------------------------

struct DecoherenceModel {
    int dim_a = 0;                // system dimension
    int dim_b = 0;                // environment dimension
    RealVector eps;               // system eigenvalues eps_k
    Matrix h_b;                   // environment Hamiltonian (Hermitian)
    std::vector<Matrix> b_k;      // coupling operators (Hermitian), one per k
    Matrix rho_b;                 // environment state (PSD, trace one)
};

// Lambda_t[rho] = sum_kl c_kl(t) P_k rho P_l with
// c_kl(t) = tr(e^{-i Z_k t} rho_B e^{i Z_l t}), Z_k = eps_k I + H_B + B_k.
// Returns the map family; `coherences` gives the c matrix at time t.
struct PerfectDecoherence {
    MapFamily map;
    std::function<Matrix(double)> coherences;
};

PerfectDecoherence perfect_decoherence(const DecoherenceModel& model);

}  // namespace dynamap
