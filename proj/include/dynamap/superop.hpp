// superop.hpp — superoperator calculus: matrix representations, block
// decomposition, spectra, SVD, Choi matrices, damping bases, classification
// flags and the conditional-complete-positivity test.
#pragma once

#include <functional>
#include <vector>

#include "dynamap/bases.hpp"
#include "dynamap/types.hpp"

namespace dynamap {

// A linear map on M_d(C), stored as its d^2 x d^2 matrix in the
// computational (elementary-matrix) basis with column-stacking
// vectorization: apply(X) = unvec(M vec(X)).
class SuperOperator {
public:
    SuperOperator(int dim, Matrix m);

    static SuperOperator identity(int dim);
    static SuperOperator zero(int dim);
    static SuperOperator from_action(int dim, const std::function<Matrix(const Matrix&)>& action);
    // rho -> a rho b
    static SuperOperator sandwich(const Matrix& a, const Matrix& b);
    // rho -> u rho u^dag
    static SuperOperator conjugation(const Matrix& u);
    // rho -> -i [h, rho]
    static SuperOperator hamiltonian(const Matrix& h);

    int dim() const { return dim_; }
    const Matrix& matrix() const { return m_; }

    Matrix apply(const Matrix& x) const;

    SuperOperator compose(const SuperOperator& rhs) const;  // this after rhs
    SuperOperator dual() const;                             // Heisenberg picture

    SuperOperator& operator+=(const SuperOperator& rhs);
    SuperOperator& operator-=(const SuperOperator& rhs);
    SuperOperator& operator*=(Complex c);
    friend SuperOperator operator+(SuperOperator a, const SuperOperator& b) { return a += b; }
    friend SuperOperator operator-(SuperOperator a, const SuperOperator& b) { return a -= b; }
    friend SuperOperator operator*(Complex c, SuperOperator a) { return a *= c; }
    friend SuperOperator operator*(const SuperOperator& a, const SuperOperator& b) {
        return a.compose(b);
    }

    bool is_trace_preserving(double tol = 1e-9) const;
    bool is_trace_annihilating(double tol = 1e-9) const;
    bool is_unital(double tol = 1e-9) const;
    bool preserves_hermiticity(double tol = 1e-9) const;

private:
    int dim_;
    Matrix m_;  // d^2 x d^2
};

// Matrix representation F_ab = tr(G_a Phi[G_b]) in a Hermitian orthonormal
// basis (Gell-Mann ordering). Real for Hermiticity-preserving maps; stored
// complex so all operations work uniformly. For trace-preserving maps the
// block form is F = [[1, 0], [q, Delta]].
class TransferMatrix {
public:
    TransferMatrix(int dim, Matrix f);

    int dim() const { return dim_; }
    const Matrix& matrix() const { return f_; }

    bool is_real(double tol = 1e-12) const;
    RealMatrix real_matrix(double tol = 1e-12) const;  // throws if not real

    // Block form accessors; require the trace-preserving first row.
    bool has_block_form(double tol = 1e-12) const;
    RealVector translation(double tol = 1e-9) const;  // q, length d^2-1
    RealMatrix linear_block(double tol = 1e-9) const;  // Delta, real part
    Matrix linear_block_complex() const;

private:
    int dim_;
    Matrix f_;
};

// Unitary change of basis: column a is vec(G_a). F = B^dag M B.
Matrix basis_vec_matrix(const OperatorBasis& basis);

TransferMatrix matrix_rep(const SuperOperator& phi, const OperatorBasis& basis);
SuperOperator from_transfer(const TransferMatrix& f, const OperatorBasis& basis);

// Affine Bloch action x -> Delta x + q. Throws if F lacks the
// trace-preserving block form.
std::pair<RealVector, RealMatrix> block_decompose(const TransferMatrix& f);

// Eigenvalues (lambda_0 pinned by convention: the root closest to 1,
// ties broken by left-eigenvector overlap with the identity) and the SVD
// factors F = O1 Sigma O2^{-1} with singular values sorted descending.
struct SpectralData {
    Vector eigenvalues;          // d^2, lambda_0 first
    RealVector singular_values;  // d^2, descending
    Matrix left_factor;          // O1
    Matrix right_factor;         // O2
};

SpectralData spectrum(const TransferMatrix& f);

// |det Delta| of the contraction block; requires the block form.
double volume_factor(const TransferMatrix& f);

// Choi matrix (1 (x) Phi)[P+] on H (x) H.
Matrix choi(const SuperOperator& phi);
SuperOperator from_choi(const Matrix& c, int dim);

// <alpha| (1 (x) Phi)[P+] |alpha>; requires a Hermiticity-preserving map.
// Equals d^{-2} sum of eigenvalues of the transfer matrix.
double witness_f(const SuperOperator& phi);

// Biorthonormal eigen-system: Phi[F_a] = lambda_a F_a, Phi*[G_a] =
// conj(lambda_a) G_a, tr(F_a G_b^dag) = delta_ab.
struct DampingBasis {
    Vector eigenvalues;
    std::vector<Matrix> right_ops;  // F_a
    std::vector<Matrix> left_ops;   // G_a
};

DampingBasis damping_basis(const SuperOperator& phi);  // throws DefectiveMapError

struct MapClass {
    bool hermitian = false;
    bool normal = false;
    bool unital = false;
    bool trace_preserving = false;
};

MapClass classify(const SuperOperator& phi, double tol = 1e-9);

// Frobenius norm of the commutator of the two matrix representations.
double commute_check(const SuperOperator& a, const SuperOperator& b);

// Conditional complete positivity of a trace-annihilating generator:
// smallest eigenvalue of (1-P+)(1 (x) L)[P+](1-P+); passes iff >= -1e-9.
// Certifies that 1 + eps L + o(eps) is completely positive.
struct CcpResult {
    bool passes = false;
    double min_eig = 0.0;
};

CcpResult ccp_test(const SuperOperator& generator);

}  // namespace dynamap
