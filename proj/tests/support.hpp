// Shared fixtures and independent oracles used across the test suites.
#pragma once

#include <cmath>

#include "dynamap/linalg.hpp"
#include "dynamap/superop.hpp"

namespace testsupport {

using dynamap::Complex;
using dynamap::Matrix;
using dynamap::Vector;

inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

// Qubit dephasing map with coherence factor exp(-gamma_int): the action is
// written out entrywise, independently of the library's generator path.
inline dynamap::SuperOperator dephasing_map(double gamma_int) {
    const double lam = std::exp(-gamma_int);
    return dynamap::SuperOperator::from_action(2, [lam](const Matrix& rho) {
        Matrix out = rho;
        out(0, 1) *= lam;
        out(1, 0) *= lam;
        return out;
    });
}

// Example-8 amplitude-damping channel, written out entrywise.
inline dynamap::SuperOperator amplitude_map(Complex g) {
    const double p = std::norm(g);
    return dynamap::SuperOperator::from_action(2, [g, p](const Matrix& rho) {
        Matrix out(2, 2);
        out(0, 0) = rho(0, 0) + (1.0 - p) * rho(1, 1);
        out(0, 1) = g * rho(0, 1);
        out(1, 0) = std::conj(g) * rho(1, 0);
        out(1, 1) = p * rho(1, 1);
        return out;
    });
}

// Random CPTP map through normalized Kraus operators.
inline dynamap::SuperOperator random_cptp(int d, int kraus, dynamap::Rng& rng) {
    std::vector<Matrix> ks;
    Matrix s = Matrix::Zero(d, d);
    for (int m = 0; m < kraus; ++m) {
        ks.push_back(dynamap::random_ginibre(d, d, rng));
        s += ks.back().adjoint() * ks.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(s);
    const Matrix s_inv_sqrt = es.operatorInverseSqrt();
    Matrix sop = Matrix::Zero(Eigen::Index(d) * d, Eigen::Index(d) * d);
    for (const auto& k : ks) {
        const Matrix kn = k * s_inv_sqrt;
        sop += dynamap::SuperOperator::sandwich(kn, kn.adjoint()).matrix();
    }
    return dynamap::SuperOperator(d, std::move(sop));
}

// Random Hermiticity-preserving trace-preserving (generally not CP) map:
// a real transfer matrix with the block first row.
inline dynamap::SuperOperator random_hp_tp(int d, dynamap::Rng& rng,
                                           const dynamap::OperatorBasis& basis) {
    const Eigen::Index n = Eigen::Index(d) * d;
    std::normal_distribution<double> n01(0.0, 1.0);
    dynamap::RealMatrix f(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) f(i, j) = 0.5 * n01(rng);
    f.row(0).setZero();
    f(0, 0) = 1.0;
    return dynamap::from_transfer(dynamap::TransferMatrix(d, f.cast<Complex>()), basis);
}

// Resonant Lorentzian decay function, textbook closed form; used as the
// independent oracle for the memory-kernel IVP.
inline double lorentzian_g_closed_form(double gamma_m, double lambda, double t) {
    const double disc = lambda * lambda - 2.0 * gamma_m * lambda;
    if (std::abs(disc) < 1e-14) return std::exp(-0.5 * lambda * t) * (1.0 + 0.5 * lambda * t);
    if (disc > 0) {
        const double om = std::sqrt(disc);
        return std::exp(-0.5 * lambda * t) *
               (std::cosh(0.5 * om * t) + (lambda / om) * std::sinh(0.5 * om * t));
    }
    const double om = std::sqrt(-disc);
    return std::exp(-0.5 * lambda * t) *
           (std::cos(0.5 * om * t) + (lambda / om) * std::sin(0.5 * om * t));
}

}  // namespace testsupport
