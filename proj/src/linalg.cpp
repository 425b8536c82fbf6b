#include "dynamap/linalg.hpp"

#include <array>
#include <cmath>

namespace dynamap {

Vector vec(const Matrix& x) {
    return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v) {
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(v.size()))));
    if (n * n != v.size()) throw std::invalid_argument("unvec: length is not a perfect square");
    return Eigen::Map<const Matrix>(v.data(), n, n);
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

double frobenius(const Matrix& a) { return a.norm(); }

namespace {

// Pade numerator coefficients, Higham "The scaling and squaring method
// for the matrix exponential revisited" (2005).
constexpr std::array<double, 4> kPade3 = {120., 60., 12., 1.};
constexpr std::array<double, 6> kPade5 = {30240., 15120., 3360., 420., 30., 1.};
constexpr std::array<double, 8> kPade7 = {17297280., 8648640., 1995840., 277200.,
                                          25200., 1512., 56., 1.};
constexpr std::array<double, 10> kPade9 = {17643225600., 8821612800., 2075673600.,
                                           302702400., 30270240., 2162160., 110880.,
                                           3960., 90., 1.};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
    129060195264000.,   10559470521600.,    670442572800.,     33522128640.,
    1323241920.,        40840800.,          960960.,           16380.,
    182.,               1.};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double norm1(const Matrix& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t N>
Matrix pade(const Matrix& a, const std::array<double, N>& b) {
    const Eigen::Index n = a.rows();
    const Matrix a2 = a * a;
    Matrix even = b[0] * Matrix::Identity(n, n);
    Matrix odd = b[1] * Matrix::Identity(n, n);
    Matrix pow = Matrix::Identity(n, n);
    for (std::size_t k = 2; k < N; k += 2) {
        pow = pow * a2;
        even += b[k] * pow;
        if (k + 1 < N) odd += b[k + 1] * pow;
    }
    const Matrix u = a * odd;
    // exp(a) ~ (even - u)^{-1} (even + u)
    return (even - u).partialPivLu().solve(even + u);
}

Matrix pade13(const Matrix& a) {
    const Eigen::Index n = a.rows();
    const auto& b = kPade13;
    const Matrix id = Matrix::Identity(n, n);
    const Matrix a2 = a * a;
    const Matrix a4 = a2 * a2;
    const Matrix a6 = a4 * a2;
    const Matrix u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Matrix v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Matrix expm(const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("expm: matrix must be square");
    const double nrm = norm1(a);
    if (nrm <= kTheta3) return pade(a, kPade3);
    if (nrm <= kTheta5) return pade(a, kPade5);
    if (nrm <= kTheta7) return pade(a, kPade7);
    if (nrm <= kTheta9) return pade(a, kPade9);
    const int s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
    Matrix r = pade13(a / std::pow(2.0, s));
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

namespace {

template <class Value, class NormFn>
Value adaptive_simpson(const std::function<Value(double)>& f, double a, double b,
                       const Value& fa, const Value& fm, const Value& fb,
                       const Value& whole, double tol, int depth, const NormFn& norm) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const Value flm = f(lm), frm = f(rm);
    const Value left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const Value right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const Value delta = left + right - whole;
    if (depth <= 0) throw NumericalError("adaptive quadrature failed to converge");
    if (norm(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, norm) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, norm);
}

template <class Value, class NormFn>
Value integrate_impl(const std::function<Value(double)>& f, double a, double b, double tol,
                     const NormFn& norm) {
    if (a == b) return 0.0 * f(a);
    const Value fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const Value whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson<Value>(f, a, b, fa, fm, fb, whole, tol, 48, norm);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    return integrate_impl<double>(f, a, b, tol, [](double x) { return std::abs(x); });
}

Matrix integrate_matrix(const std::function<Matrix(double)>& f, double a, double b, double tol) {
    return integrate_impl<Matrix>(f, a, b, tol, [](const Matrix& x) { return x.norm(); });
}

Matrix random_ginibre(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Matrix g(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = Complex(n01(rng), n01(rng));
    return g;
}

Matrix random_unitary(int d, Rng& rng) {
    const Matrix g = random_ginibre(d, d, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        q.col(i) *= (std::abs(rii) > 0) ? rii / std::abs(rii) : 1.0;
    }
    return q;
}

Matrix random_density(int d, Rng& rng) {
    const Matrix g = random_ginibre(d, d, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

Matrix random_normal_matrix(int d, Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    Vector z(d);
    for (int i = 0; i < d; ++i) z(i) = Complex(n01(rng), n01(rng));
    const Matrix u = random_unitary(d, rng);
    return u * z.asDiagonal() * u.adjoint();
}

Matrix random_hermitian(int d, Rng& rng) {
    const Matrix g = random_ginibre(d, d, rng);
    return 0.5 * (g + g.adjoint());
}

RealVector random_unit_vector(int n, Rng& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    RealVector v(n);
    do {
        for (int i = 0; i < n; ++i) v(i) = n01(rng);
    } while (v.norm() < 1e-12);
    return v / v.norm();
}

double trace_norm_hermitian(const Matrix& x) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x, Eigen::EigenvaluesOnly);
    return es.eigenvalues().cwiseAbs().sum();
}

}  // namespace dynamap
