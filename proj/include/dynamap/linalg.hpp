// linalg.hpp — dense helpers shared across the library: column-stacking
// vectorization, Kronecker products, a scaling-and-squaring matrix
// exponential, adaptive quadrature and seeded random matrix generators.
#pragma once

#include <functional>
#include <random>

#include "dynamap/types.hpp"

namespace dynamap {

// Column-stacking vectorization: vec(X) stacks the columns of X, so
// vec(A X B) = (B^T (x) A) vec(X).
Vector vec(const Matrix& x);
Matrix unvec(const Vector& v);  // square reshape

Matrix kron(const Matrix& a, const Matrix& b);

double frobenius(const Matrix& a);

// Matrix exponential by Pade approximation with scaling and squaring
// (Higham 2005 degree ladder, degree 13 at the top).
Matrix expm(const Matrix& a);

// Adaptive Simpson quadrature of a scalar function on [a, b].
// `tol` is an absolute tolerance on the integral.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12);

// Matrix-valued variant; error is measured in the Frobenius norm.
Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b,
                        double tol = 1e-12);

using Rng = std::mt19937_64;

// Ginibre matrix: independent standard complex normal entries.
Matrix random_ginibre(int rows, int cols, Rng& rng);

// Haar-distributed unitary via QR of a Ginibre matrix with phase fix.
Matrix random_unitary(int d, Rng& rng);

// Random density matrix rho = G G^dag / tr(G G^dag).
Matrix random_density(int d, Rng& rng);

// Random normal matrix U diag(z) U^dag with complex normal z.
Matrix random_normal_matrix(int d, Rng& rng);

// Random Hermitian matrix (Gaussian ensemble, unnormalized).
Matrix random_hermitian(int d, Rng& rng);

// Uniform point on the unit sphere in R^n.
RealVector random_unit_vector(int n, Rng& rng);

// Trace norm of a Hermitian matrix (sum of absolute eigenvalues).
double trace_norm_hermitian(const Matrix& x);

}  // namespace dynamap
