// bases.hpp — operator bases and fixed reference objects: generalized
// Gell-Mann basis, Weyl unitaries, mutually unbiased bases and the maximally
// entangled projector.
#pragma once

#include <vector>

#include "dynamap/types.hpp"

namespace dynamap {

// Hermitian orthonormal operator basis of M_d(C).
//
// Element ordering is part of the API contract; all matrix representations
// depend on it:
//   G_0 = I/sqrt(d), then symmetric off-diagonal pairs
//   (|i><j| + |j><i|)/sqrt(2) for i < j in lexicographic order, then
//   antisymmetric pairs -i(|i><j| - |j><i|)/sqrt(2), then diagonal
//   V_l = (sum_{k<l} |k><k| - l|l><l|)/sqrt(l(l+1)) for l = 1..d-1.
struct OperatorBasis {
    int dim = 0;
    std::vector<Matrix> elements;  // d^2 matrices, tr(G_a G_b) = delta_ab
};

OperatorBasis gell_mann_basis(int d);

// Weyl displacement unitaries U_{kl} = sum_m omega^{mk} |m><m+l mod d|,
// omega = exp(2 pi i / d). Indexed by (k, l) with flat index k*d + l.
struct WeylFamily {
    int dim = 0;
    Complex omega;
    std::vector<Matrix> operators;  // d^2 unitaries
    const Matrix& op(int k, int l) const { return operators[std::size_t(k) * dim + l]; }
};

WeylFamily weyl_operators(int d);

// d+1 mutually unbiased bases for prime d. bases[a].col(m) is the m-th
// vector of basis a. Basis 0 is the computational basis; for d = 2 the
// remaining two are the sigma_x and sigma_y eigenbases, for odd prime d
// basis a+1 has vectors d^{-1/2} sum_k omega^{a k^2 + m k} |k>.
struct MubSet {
    int dim = 0;
    std::vector<Matrix> bases;
};

MubSet mub_bases(int d);

// |alpha> = d^{-1/2} sum_i |i (x) i> and its rank-one projector.
struct MaxEntangled {
    int dim = 0;
    Vector vector;
    Matrix projector;
};

MaxEntangled max_entangled(int d);

bool is_prime(int n);

}  // namespace dynamap
