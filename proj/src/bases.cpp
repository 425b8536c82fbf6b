#include "dynamap/bases.hpp"

#include <cmath>
#include <numbers>

namespace dynamap {

namespace {
void require_dim(int d) {
    if (d < 2) throw std::invalid_argument("dimension must be at least 2");
}
}  // namespace

OperatorBasis gell_mann_basis(int d) {
    require_dim(d);
    OperatorBasis basis;
    basis.dim = d;
    basis.elements.reserve(std::size_t(d) * d);

    basis.elements.push_back(Matrix::Identity(d, d) / std::sqrt(double(d)));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix s = Matrix::Zero(d, d);
            s(i, j) = inv_sqrt2;
            s(j, i) = inv_sqrt2;
            basis.elements.push_back(std::move(s));
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            Matrix a = Matrix::Zero(d, d);
            a(i, j) = Complex(0, -inv_sqrt2);
            a(j, i) = Complex(0, inv_sqrt2);
            basis.elements.push_back(std::move(a));
        }
    }
    for (int l = 1; l < d; ++l) {
        Matrix v = Matrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
        for (int k = 0; k < l; ++k) v(k, k) = norm;
        v(l, l) = -double(l) * norm;
        basis.elements.push_back(std::move(v));
    }
    return basis;
}

WeylFamily weyl_operators(int d) {
    require_dim(d);
    WeylFamily fam;
    fam.dim = d;
    fam.omega = std::exp(Complex(0, 2.0 * std::numbers::pi / d));
    fam.operators.reserve(std::size_t(d) * d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            Matrix u = Matrix::Zero(d, d);
            for (int m = 0; m < d; ++m) u(m, (m + l) % d) = std::pow(fam.omega, (m * k) % d);
            fam.operators.push_back(std::move(u));
        }
    }
    return fam;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

MubSet mub_bases(int d) {
    require_dim(d);
    if (!is_prime(d))
        throw UnsupportedDimensionError("unsupported dimension: MUB construction requires prime d");

    MubSet set;
    set.dim = d;
    set.bases.push_back(Matrix::Identity(d, d));

    if (d == 2) {
        const double s = 1.0 / std::sqrt(2.0);
        Matrix x(2, 2), y(2, 2);
        x << s, s, s, -s;                                        // sigma_x eigenbasis
        y << s, s, Complex(0, s), Complex(0, -s);                // sigma_y eigenbasis
        set.bases.push_back(std::move(x));
        set.bases.push_back(std::move(y));
        return set;
    }

    const Complex omega = std::exp(Complex(0, 2.0 * std::numbers::pi / d));
    const double norm = 1.0 / std::sqrt(double(d));
    for (int a = 0; a < d; ++a) {
        Matrix b(d, d);
        for (int m = 0; m < d; ++m)
            for (int k = 0; k < d; ++k)
                b(k, m) = norm * std::pow(omega, (a * k * k + m * k) % d);
        set.bases.push_back(std::move(b));
    }
    return set;
}

MaxEntangled max_entangled(int d) {
    require_dim(d);
    MaxEntangled me;
    me.dim = d;
    me.vector = Vector::Zero(std::size_t(d) * d);
    const double norm = 1.0 / std::sqrt(double(d));
    for (int i = 0; i < d; ++i) me.vector(i * d + i) = norm;
    me.projector = me.vector * me.vector.adjoint();
    return me;
}

}  // namespace dynamap
