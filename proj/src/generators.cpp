#include "dynamap/generators.hpp"

#include <cmath>
#include <numbers>

#include "dynamap/linalg.hpp"

namespace dynamap {

namespace {

constexpr double kSingularFloor = 1e-12;

Matrix left_mult(const Matrix& a) {
    return SuperOperator::sandwich(a, Matrix::Identity(a.rows(), a.cols())).matrix();
}

Matrix right_mult(const Matrix& b) {
    return SuperOperator::sandwich(Matrix::Identity(b.rows(), b.cols()), b).matrix();
}

Matrix id_superop(int d) {
    return Matrix::Identity(Eigen::Index(d) * d, Eigen::Index(d) * d);
}

std::function<double(double)> rate_fn(const RateFunction& r) {
    return [r](double t) { return r.rate(t); };
}

// Attaches the analytic spectrum of a rate-linear family:
// mu(t) = coeff * gamma(t), lambda(t) = exp(coeff * Gamma(t)).
void attach_linear_spectrum(TimeLocalGenerator& gen, std::vector<Matrix> eigenops,
                            Matrix coeff, const std::vector<RateFunction>& rates,
                            int unit_branch) {
    auto shared_rates = std::make_shared<std::vector<RateFunction>>(rates);
    AnalyticSpectrum as;
    as.eigenops = std::move(eigenops);
    as.unit_branch = unit_branch;
    as.lambda_at = [shared_rates, coeff](double t) {
        Vector g(Eigen::Index(shared_rates->size()));
        for (std::size_t j = 0; j < shared_rates->size(); ++j)
            g(Eigen::Index(j)) = (*shared_rates)[j].integral(t);
        return Vector((coeff * g).array().exp());
    };
    as.mu_at = [shared_rates, coeff](double t) {
        Vector g(Eigen::Index(shared_rates->size()));
        for (std::size_t j = 0; j < shared_rates->size(); ++j)
            g(Eigen::Index(j)) = (*shared_rates)[j].rate(t);
        return Vector(coeff * g);
    };
    as.has_mu = true;
    gen.set_analytic_spectrum(std::move(as));
}

}  // namespace

TimeLocalGenerator::TimeLocalGenerator(int dim, std::string family, std::vector<Term> terms,
                                       bool commutative)
    : dim_(dim), family_(std::move(family)), terms_(std::move(terms)), commutative_(commutative) {}

TimeLocalGenerator TimeLocalGenerator::custom(int dim, std::function<SuperOperator(double)> eval,
                                              bool commutative_declared) {
    TimeLocalGenerator gen(dim, "custom", {}, commutative_declared);
    gen.eval_ = std::move(eval);
    return gen;
}

SuperOperator TimeLocalGenerator::at(double t) const {
    if (defined_ && !defined_(t)) throw SingularGeneratorError(t);
    if (terms_.empty()) {
        if (!eval_) throw std::logic_error("TimeLocalGenerator: no evaluation hook");
        return eval_(t);
    }
    Matrix m = Matrix::Zero(Eigen::Index(dim_) * dim_, Eigen::Index(dim_) * dim_);
    for (const auto& term : terms_) m += term.coefficient(t) * term.structure;
    return SuperOperator(dim_, std::move(m));
}

bool TimeLocalGenerator::defined_at(double t) const { return !defined_ || defined_(t); }

TimeLocalGenerator dephasing_qubit(RateFunction gamma) {
    Matrix sz(2, 2);
    sz << 1, 0, 0, -1;
    const Matrix k = 0.5 * (SuperOperator::conjugation(sz).matrix() - id_superop(2));

    TimeLocalGenerator gen(2, "dephasing_qubit", {{rate_fn(gamma), k}}, true);

    const OperatorBasis pauli = gell_mann_basis(2);
    Matrix coeff(4, 1);
    coeff << 0, -1, -1, 0;
    attach_linear_spectrum(gen, pauli.elements, coeff, {gamma}, 0);
    gen.set_rate_conditions(
        {{"gamma", RateCondition::Kind::CompletePositivity, rate_fn(gamma)}});
    return gen;
}

TimeLocalGenerator dephasing_weyl(int d, std::vector<RateFunction> gammas) {
    if (gammas.size() != std::size_t(d) - 1)
        throw std::invalid_argument("dephasing_weyl: expected d-1 rates");
    const WeylFamily w = weyl_operators(d);

    std::vector<TimeLocalGenerator::Term> terms;
    for (int k = 1; k < d; ++k)
        terms.push_back({rate_fn(gammas[std::size_t(k) - 1]),
                         0.5 * (SuperOperator::conjugation(w.op(k, 0)).matrix() - id_superop(d))});

    TimeLocalGenerator gen(d, "dephasing_weyl", std::move(terms), true);

    // U_k0 U_mn U_k0^dag = omega^{-nk} U_mn.
    Matrix coeff(Eigen::Index(d) * d, d - 1);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n)
            for (int k = 1; k < d; ++k)
                coeff(Eigen::Index(m) * d + n, k - 1) =
                    0.5 * (std::pow(w.omega, ((d - (n * k) % d) % d)) - 1.0);
    attach_linear_spectrum(gen, w.operators, coeff, gammas, 0);

    std::vector<RateCondition> conds;
    for (int k = 1; k < d; ++k)
        conds.push_back({"gamma" + std::to_string(k), RateCondition::Kind::CompletePositivity,
                         rate_fn(gammas[std::size_t(k) - 1])});
    gen.set_rate_conditions(std::move(conds));
    return gen;
}

TimeLocalGenerator dephasing_gellmann(int d, std::vector<RateFunction> gammas) {
    if (gammas.size() != std::size_t(d) - 1)
        throw std::invalid_argument("dephasing_gellmann: expected d-1 rates");
    const OperatorBasis gm = gell_mann_basis(d);
    // Diagonal elements V_l sit at the tail of the Gell-Mann ordering.
    const std::size_t diag_start = std::size_t(d) * d - std::size_t(d - 1);

    std::vector<TimeLocalGenerator::Term> terms;
    std::vector<RealVector> diag_values;
    for (int l = 1; l < d; ++l) {
        const Matrix& v = gm.elements[diag_start + std::size_t(l) - 1];
        const Matrix v2 = v * v;
        // -1/2 [V, [V, rho]] = -1/2 (V^2 rho + rho V^2 - 2 V rho V)
        Matrix k = -0.5 * (left_mult(v2) + right_mult(v2) -
                           2.0 * SuperOperator::sandwich(v, v).matrix());
        terms.push_back({rate_fn(gammas[std::size_t(l) - 1]), std::move(k)});
        diag_values.push_back(v.diagonal().real());
    }

    TimeLocalGenerator gen(d, "dephasing_gellmann", std::move(terms), true);

    // Matrix units E_ij are eigen-operators with
    // mu_ij = -1/2 sum_l gamma_l (v_l(i) - v_l(j))^2.
    std::vector<Matrix> eigenops;
    Matrix coeff(Eigen::Index(d) * d, d - 1);
    int unit_branch = -1;
    int b = 0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j, ++b) {
            Matrix e = Matrix::Zero(d, d);
            e(i, j) = 1.0;
            eigenops.push_back(std::move(e));
            if (i == 0 && j == 0) unit_branch = b;
            for (int l = 1; l < d; ++l) {
                const double dv = diag_values[std::size_t(l) - 1](i) - diag_values[std::size_t(l) - 1](j);
                coeff(b, l - 1) = -0.5 * dv * dv;
            }
        }
    }
    attach_linear_spectrum(gen, std::move(eigenops), coeff, gammas, unit_branch);

    std::vector<RateCondition> conds;
    for (int l = 1; l < d; ++l)
        conds.push_back({"gamma" + std::to_string(l), RateCondition::Kind::CompletePositivity,
                         rate_fn(gammas[std::size_t(l) - 1])});
    gen.set_rate_conditions(std::move(conds));
    return gen;
}

TimeLocalGenerator pauli_channel(RateFunction g1, RateFunction g2, RateFunction g3) {
    Matrix sx(2, 2), sy(2, 2), sz(2, 2);
    sx << 0, 1, 1, 0;
    sy << 0, Complex(0, -1), Complex(0, 1), 0;
    sz << 1, 0, 0, -1;

    const std::vector<RateFunction> rates{g1, g2, g3};
    std::vector<TimeLocalGenerator::Term> terms;
    const Matrix sigmas[3] = {sx, sy, sz};
    for (int k = 0; k < 3; ++k)
        terms.push_back({rate_fn(rates[std::size_t(k)]),
                         0.5 * (SuperOperator::conjugation(sigmas[k]).matrix() - id_superop(2))});

    TimeLocalGenerator gen(2, "pauli_channel", std::move(terms), true);

    const OperatorBasis pauli = gell_mann_basis(2);
    Matrix coeff(4, 3);
    coeff << 0, 0, 0,   // identity
        0, -1, -1,      // sigma_x: -(g2 + g3)
        -1, 0, -1,      // sigma_y
        -1, -1, 0;      // sigma_z
    attach_linear_spectrum(gen, pauli.elements, coeff, rates, 0);

    auto sum2 = [](const RateFunction& a, const RateFunction& b) {
        return [a, b](double t) { return a.rate(t) + b.rate(t); };
    };
    gen.set_rate_conditions({
        {"g1", RateCondition::Kind::CompletePositivity, rate_fn(g1)},
        {"g2", RateCondition::Kind::CompletePositivity, rate_fn(g2)},
        {"g3", RateCondition::Kind::CompletePositivity, rate_fn(g3)},
        {"g1+g2", RateCondition::Kind::Positivity, sum2(g1, g2)},
        {"g2+g3", RateCondition::Kind::Positivity, sum2(g2, g3)},
        {"g3+g1", RateCondition::Kind::Positivity, sum2(g3, g1)},
    });
    return gen;
}

TimeLocalGenerator weyl_channel(int d, std::vector<RateFunction> gammas) {
    const std::size_t n_rates = std::size_t(d) * d - 1;
    if (gammas.size() != n_rates)
        throw std::invalid_argument("weyl_channel: expected d^2-1 rates");
    const WeylFamily w = weyl_operators(d);

    std::vector<TimeLocalGenerator::Term> terms;
    std::size_t j = 0;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            if (k == 0 && l == 0) continue;
            terms.push_back({rate_fn(gammas[j++]),
                             SuperOperator::conjugation(w.op(k, l)).matrix() - id_superop(d)});
        }

    TimeLocalGenerator gen(d, "weyl_channel", std::move(terms), true);

    // U_kl U_mn U_kl^dag = omega^{ml - nk} U_mn.
    Matrix coeff(Eigen::Index(d) * d, Eigen::Index(n_rates));
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            Eigen::Index col = 0;
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    if (k == 0 && l == 0) continue;
                    const int e = (((m * l - n * k) % d) + d) % d;
                    coeff(Eigen::Index(m) * d + n, col++) = std::pow(w.omega, e) - 1.0;
                }
        }
    attach_linear_spectrum(gen, w.operators, coeff, gammas, 0);

    std::vector<RateCondition> conds;
    j = 0;
    for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
            if (k == 0 && l == 0) continue;
            conds.push_back({"gamma" + std::to_string(k) + std::to_string(l),
                             RateCondition::Kind::CompletePositivity, rate_fn(gammas[j++])});
        }
    // Per-branch modulus conditions sum_{kl} gamma_kl (1 - Re omega^{ml-nk}) >= 0.
    auto shared = std::make_shared<std::vector<RateFunction>>(gammas);
    for (int m = 0; m < d; ++m)
        for (int n = 0; n < d; ++n) {
            if (m == 0 && n == 0) continue;
            // coeff row = omega - 1, so 1 - Re omega = -Re(coeff row).
            const RealVector weights = -coeff.row(Eigen::Index(m) * d + n).real().transpose();
            conds.push_back({"moduli" + std::to_string(m) + std::to_string(n),
                             RateCondition::Kind::Positivity, [shared, weights](double t) {
                                 double v = 0.0;
                                 for (Eigen::Index i = 0; i < weights.size(); ++i)
                                     v += weights(i) * (*shared)[std::size_t(i)].rate(t);
                                 return v;
                             }});
        }
    gen.set_rate_conditions(std::move(conds));
    return gen;
}

TimeLocalGenerator generalized_pauli(int d, std::vector<RateFunction> gammas) {
    if (!is_prime(d))
        throw UnsupportedDimensionError("generalized_pauli: prime dimension required");
    if (gammas.size() != std::size_t(d) + 1)
        throw std::invalid_argument("generalized_pauli: expected d+1 rates");

    const MubSet mubs = mub_bases(d);
    const OperatorBasis gm = gell_mann_basis(d);
    const std::size_t diag_start = std::size_t(d) * d - std::size_t(d - 1);

    std::vector<TimeLocalGenerator::Term> terms;
    for (int a = 0; a <= d; ++a) {
        Matrix proj = Matrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
        for (int l = 0; l < d; ++l) {
            const Matrix p = mubs.bases[std::size_t(a)].col(l) * mubs.bases[std::size_t(a)].col(l).adjoint();
            proj += SuperOperator::sandwich(p, p).matrix();
        }
        terms.push_back({rate_fn(gammas[std::size_t(a)]), proj - id_superop(d)});
    }

    TimeLocalGenerator gen(d, "generalized_pauli", std::move(terms), true);

    // Traceless operators diagonal in basis a span the eigen-block with
    // mu = gamma_a - sum_b gamma_b.
    std::vector<Matrix> eigenops;
    eigenops.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));
    Matrix coeff = Matrix::Zero(Eigen::Index(d) * d, d + 1);
    Eigen::Index b = 1;
    for (int a = 0; a <= d; ++a) {
        const Matrix& u = mubs.bases[std::size_t(a)];
        for (int l = 1; l < d; ++l, ++b) {
            eigenops.push_back(u * gm.elements[diag_start + std::size_t(l) - 1] * u.adjoint());
            for (int bb = 0; bb <= d; ++bb) coeff(b, bb) = (bb == a) ? 0.0 : -1.0;
        }
    }
    attach_linear_spectrum(gen, std::move(eigenops), coeff, gammas, 0);

    auto shared = std::make_shared<std::vector<RateFunction>>(gammas);
    std::vector<RateCondition> conds;
    for (int a = 0; a <= d; ++a)
        conds.push_back({"gamma" + std::to_string(a + 1), RateCondition::Kind::CompletePositivity,
                         rate_fn(gammas[std::size_t(a)])});
    for (int a = 0; a <= d; ++a)
        conds.push_back({"gamma_total-gamma" + std::to_string(a + 1),
                         RateCondition::Kind::Positivity, [shared, a](double t) {
                             double total = 0.0;
                             for (const auto& r : *shared) total += r.rate(t);
                             return total - (*shared)[std::size_t(a)].rate(t);
                         }});
    gen.set_rate_conditions(std::move(conds));
    return gen;
}

AmplitudeDamping amplitude_damping(GFunction g) {
    if (std::abs(g.value(0.0) - 1.0) > 1e-9)
        throw std::invalid_argument("amplitude_damping: G(0) must equal 1");

    auto value = std::make_shared<GFunction>(std::move(g));

    MapFamily map;
    map.dim = 2;
    map.family = "amplitude_damping";
    map.commutative = true;
    map.at = [value](double t) {
        const Complex gt = value->value(t);
        const double p = std::norm(gt);
        Matrix m = Matrix::Zero(4, 4);
        // vec order (rho00, rho10, rho01, rho11)
        m(0, 0) = 1.0;
        m(0, 3) = 1.0 - p;
        m(1, 1) = std::conj(gt);
        m(2, 2) = gt;
        m(3, 3) = p;
        return SuperOperator(2, std::move(m));
    };

    Matrix e00 = Matrix::Zero(2, 2), e01 = Matrix::Zero(2, 2), e10 = Matrix::Zero(2, 2);
    e00(0, 0) = 1.0;
    e01(0, 1) = 1.0;
    e10(1, 0) = 1.0;
    Matrix mix = Matrix::Zero(2, 2);
    mix(1, 1) = 1.0;
    mix(0, 0) = -1.0;

    AnalyticSpectrum as;
    as.eigenops = {e00, e01, e10, mix};
    as.unit_branch = 0;
    as.lambda_at = [value](double t) {
        const Complex gt = value->value(t);
        Vector v(4);
        v << 1.0, gt, std::conj(gt), std::norm(gt);
        return v;
    };
    as.mu_at = [value](double t) {
        const Complex gt = value->value(t);
        if (std::abs(gt) < kSingularFloor) throw SingularGeneratorError(t);
        const Complex ratio = value->derivative(t) / gt;
        Vector v(4);
        v << 0.0, ratio, std::conj(ratio), 2.0 * ratio.real();
        return v;
    };
    as.has_mu = true;
    map.spectrum = as;

    // Generator structures: number operator N = |1><1|, lowering |0><1|.
    Matrix n_op = Matrix::Zero(2, 2);
    n_op(1, 1) = 1.0;
    Matrix lower = Matrix::Zero(2, 2);
    lower(0, 1) = 1.0;
    const Matrix h_struct =
        Complex(0, 0.5) * (left_mult(n_op) - right_mult(n_op));
    const Matrix d_struct = SuperOperator::sandwich(lower, lower.adjoint()).matrix() -
                            0.5 * (left_mult(n_op) + right_mult(n_op));

    auto ratio_at = [value](double t) {
        const Complex gt = value->value(t);
        if (std::abs(gt) < kSingularFloor) throw SingularGeneratorError(t);
        return value->derivative(t) / gt;
    };
    std::vector<TimeLocalGenerator::Term> terms{
        {[ratio_at](double t) { return -2.0 * ratio_at(t).imag(); }, h_struct},
        {[ratio_at](double t) { return -2.0 * ratio_at(t).real(); }, d_struct}};

    TimeLocalGenerator gen(2, "amplitude_damping", std::move(terms), true);
    gen.set_domain_guard([value](double t) { return std::abs(value->value(t)) >= kSingularFloor; });
    gen.set_analytic_spectrum(as);
    gen.set_rate_conditions({{"gamma", RateCondition::Kind::CompletePositivity,
                              [ratio_at](double t) { return -2.0 * ratio_at(t).real(); }}});
    return AmplitudeDamping{std::move(map), std::move(gen)};
}

GFunction lorentzian_G(const LorentzianBath& bath, double t_max, const OdeOptions& opts) {
    if (!(bath.width > 0)) throw std::invalid_argument("lorentzian_G: width must be positive");
    if (bath.gamma_m < 0) throw std::invalid_argument("lorentzian_G: coupling must be >= 0");
    if (!(t_max > 0)) throw std::invalid_argument("lorentzian_G: t_max must be positive");

    const Complex damping(bath.width, bath.detuning);
    const double strength = 0.5 * bath.gamma_m * bath.width;

    // G'' = -(lambda + i delta) G' - (gamma_M lambda / 2) G.
    OdeRhs rhs = [damping, strength](double, const Vector& y, Vector& dy) {
        dy(0) = y(1);
        dy(1) = -damping * y(1) - strength * y(0);
    };

    const int nodes_per_unit = 512;
    const std::size_t n_nodes = std::size_t(std::ceil(t_max * nodes_per_unit)) + 1;
    std::vector<double> ts(n_nodes);
    const double h = t_max / double(n_nodes - 1);
    for (std::size_t i = 0; i < n_nodes; ++i) ts[i] = double(i) * h;
    ts.back() = t_max;

    auto g_nodes = std::make_shared<std::vector<Complex>>(n_nodes);
    auto dg_nodes = std::make_shared<std::vector<Complex>>(n_nodes);
    Vector y0(2);
    y0 << 1.0, 0.0;
    ode_integrate_path(
        rhs, 0.0, y0, ts,
        [&](std::size_t i, const Vector& y) {
            (*g_nodes)[i] = y(0);
            (*dg_nodes)[i] = y(1);
        },
        opts);

    // Cubic Hermite interpolation between nodes; the derivative uses its own
    // Hermite data with G'' from the ODE right-hand side.
    auto hermite = [h, t_max](const std::vector<Complex>& f, const std::vector<Complex>& df,
                              double t) {
        if (t < -1e-12 || t > t_max + 1e-9)
            throw std::invalid_argument("lorentzian_G: evaluation outside [0, t_max]");
        const double clamped = std::clamp(t, 0.0, t_max);
        std::size_t i = std::min(std::size_t(clamped / h), f.size() - 2);
        const double u = (clamped - double(i) * h) / h;
        const double u2 = u * u, u3 = u2 * u;
        return (2 * u3 - 3 * u2 + 1) * f[i] + (u3 - 2 * u2 + u) * h * df[i] +
               (-2 * u3 + 3 * u2) * f[i + 1] + (u3 - u2) * h * df[i + 1];
    };

    auto d2_nodes = std::make_shared<std::vector<Complex>>(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i)
        (*d2_nodes)[i] = -damping * (*dg_nodes)[i] - strength * (*g_nodes)[i];

    GFunction g;
    g.tag = "lorentzian";
    g.value = [g_nodes, dg_nodes, hermite](double t) { return hermite(*g_nodes, *dg_nodes, t); };
    g.derivative = [dg_nodes, d2_nodes, hermite](double t) {
        return hermite(*dg_nodes, *d2_nodes, t);
    };
    return g;
}

PerfectDecoherence perfect_decoherence(const DecoherenceModel& model) {
    const int da = model.dim_a, db = model.dim_b;
    if (da < 2 || db < 1) throw std::invalid_argument("perfect_decoherence: bad dimensions");
    if (model.eps.size() != da || model.b_k.size() != std::size_t(da))
        throw std::invalid_argument("perfect_decoherence: need eps_k and B_k per system level");
    auto check_hermitian = [](const Matrix& m, const char* what) {
        if ((m - Matrix(m.adjoint())).norm() > 1e-9)
            throw std::invalid_argument(std::string("perfect_decoherence: ") + what +
                                        " must be Hermitian");
    };
    check_hermitian(model.h_b, "H_B");
    for (const auto& b : model.b_k) check_hermitian(b, "B_k");
    check_hermitian(model.rho_b, "rho_B");
    if (std::abs(model.rho_b.trace().real() - 1.0) > 1e-9)
        throw std::invalid_argument("perfect_decoherence: rho_B must have unit trace");
    {
        Eigen::SelfAdjointEigenSolver<Matrix> es(model.rho_b, Eigen::EigenvaluesOnly);
        if (es.eigenvalues()(0) < -1e-9)
            throw std::invalid_argument("perfect_decoherence: rho_B must be positive semidefinite");
    }

    // Z_k = eps_k I + H_B + B_k, diagonalized once.
    struct Diag {
        RealVector ev;
        Matrix u;
    };
    auto diags = std::make_shared<std::vector<Diag>>();
    for (int k = 0; k < da; ++k) {
        const Matrix z = model.eps(k) * Matrix::Identity(db, db) + model.h_b + model.b_k[std::size_t(k)];
        Eigen::SelfAdjointEigenSolver<Matrix> es(z);
        diags->push_back({es.eigenvalues(), es.eigenvectors()});
    }
    const Matrix rho_b = model.rho_b;

    auto coherences = [diags, rho_b, da, db](double t) {
        Matrix c(da, da);
        for (int k = 0; k < da; ++k) {
            const auto& zk = (*diags)[std::size_t(k)];
            const Vector ek = (Complex(0, -t) * zk.ev.cast<Complex>()).array().exp();
            const Matrix exp_k = zk.u * ek.asDiagonal() * zk.u.adjoint();
            for (int l = 0; l < da; ++l) {
                const auto& zl = (*diags)[std::size_t(l)];
                const Vector el = (Complex(0, t) * zl.ev.cast<Complex>()).array().exp();
                const Matrix exp_l = zl.u * el.asDiagonal() * zl.u.adjoint();
                c(k, l) = (exp_k * rho_b * exp_l).trace();
            }
        }
        return c;
    };

    MapFamily map;
    map.dim = da;
    map.family = "perfect_decoherence";
    map.commutative = true;
    map.at = [coherences, da](double t) {
        const Matrix c = coherences(t);
        Matrix m = Matrix::Zero(Eigen::Index(da) * da, Eigen::Index(da) * da);
        for (int k = 0; k < da; ++k)
            for (int l = 0; l < da; ++l) {
                const Eigen::Index idx = Eigen::Index(l) * da + k;  // vec index of E_kl
                m(idx, idx) = c(k, l);
            }
        return SuperOperator(da, std::move(m));
    };

    AnalyticSpectrum as;
    as.unit_branch = 0;
    for (int l = 0; l < da; ++l)
        for (int k = 0; k < da; ++k) {
            Matrix e = Matrix::Zero(da, da);
            e(k, l) = 1.0;
            as.eigenops.push_back(std::move(e));
        }
    as.lambda_at = [coherences, da](double t) {
        const Matrix c = coherences(t);
        Vector v(Eigen::Index(da) * da);
        for (int l = 0; l < da; ++l)
            for (int k = 0; k < da; ++k) v(Eigen::Index(l) * da + k) = c(k, l);
        return v;
    };
    as.has_mu = false;
    map.spectrum = std::move(as);

    return PerfectDecoherence{std::move(map), coherences};
}

}  // namespace dynamap
