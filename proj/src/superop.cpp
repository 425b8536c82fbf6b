#include "dynamap/superop.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dynamap/linalg.hpp"

namespace dynamap {

namespace {

Vector vec_identity(int d) {
    return vec(Matrix::Identity(d, d));
}

}  // namespace

SuperOperator::SuperOperator(int dim, Matrix m) : dim_(dim), m_(std::move(m)) {
    const Eigen::Index n = Eigen::Index(dim) * dim;
    if (dim < 1 || m_.rows() != n || m_.cols() != n)
        throw std::invalid_argument("SuperOperator: matrix must be d^2 x d^2");
}

SuperOperator SuperOperator::identity(int dim) {
    return SuperOperator(dim, Matrix::Identity(Eigen::Index(dim) * dim, Eigen::Index(dim) * dim));
}

SuperOperator SuperOperator::zero(int dim) {
    return SuperOperator(dim, Matrix::Zero(Eigen::Index(dim) * dim, Eigen::Index(dim) * dim));
}

SuperOperator SuperOperator::from_action(int dim,
                                         const std::function<Matrix(const Matrix&)>& action) {
    const Eigen::Index n = Eigen::Index(dim) * dim;
    Matrix m(n, n);
    Matrix e = Matrix::Zero(dim, dim);
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
            e(i, j) = 1.0;
            m.col(Eigen::Index(j) * dim + i) = vec(action(e));
            e(i, j) = 0.0;
        }
    }
    return SuperOperator(dim, std::move(m));
}

SuperOperator SuperOperator::sandwich(const Matrix& a, const Matrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("sandwich: operators must be square and same size");
    return SuperOperator(int(a.rows()), kron(b.transpose(), a));
}

SuperOperator SuperOperator::conjugation(const Matrix& u) {
    return sandwich(u, u.adjoint());
}

SuperOperator SuperOperator::hamiltonian(const Matrix& h) {
    const int d = int(h.rows());
    const Matrix id = Matrix::Identity(d, d);
    const Complex mi(0, -1);
    return SuperOperator(d, mi * (kron(id, h) - kron(h.transpose(), id)));
}

Matrix SuperOperator::apply(const Matrix& x) const {
    if (x.rows() != dim_ || x.cols() != dim_)
        throw std::invalid_argument("SuperOperator::apply: dimension mismatch");
    return unvec(m_ * vec(x));
}

SuperOperator SuperOperator::compose(const SuperOperator& rhs) const {
    if (rhs.dim_ != dim_) throw std::invalid_argument("compose: dimension mismatch");
    return SuperOperator(dim_, m_ * rhs.m_);
}

SuperOperator SuperOperator::dual() const { return SuperOperator(dim_, m_.adjoint()); }

SuperOperator& SuperOperator::operator+=(const SuperOperator& rhs) {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator+=: dimension mismatch");
    m_ += rhs.m_;
    return *this;
}

SuperOperator& SuperOperator::operator-=(const SuperOperator& rhs) {
    if (rhs.dim_ != dim_) throw std::invalid_argument("operator-=: dimension mismatch");
    m_ -= rhs.m_;
    return *this;
}

SuperOperator& SuperOperator::operator*=(Complex c) {
    m_ *= c;
    return *this;
}

bool SuperOperator::is_trace_preserving(double tol) const {
    const Vector id = vec_identity(dim_);
    return (m_.adjoint() * id - id).norm() <= tol;
}

bool SuperOperator::is_trace_annihilating(double tol) const {
    return (m_.adjoint() * vec_identity(dim_)).norm() <= tol;
}

bool SuperOperator::is_unital(double tol) const {
    const Vector id = vec_identity(dim_);
    return (m_ * id - id).norm() <= tol;
}

bool SuperOperator::preserves_hermiticity(double tol) const {
    // Phi[X^dag] = Phi[X]^dag for all X <=> the Choi matrix is Hermitian.
    const Matrix c = choi(*this);
    return (c - Matrix(c.adjoint())).norm() <= tol;
}

TransferMatrix::TransferMatrix(int dim, Matrix f) : dim_(dim), f_(std::move(f)) {
    const Eigen::Index n = Eigen::Index(dim) * dim;
    if (dim < 1 || f_.rows() != n || f_.cols() != n)
        throw std::invalid_argument("TransferMatrix: matrix must be d^2 x d^2");
}

bool TransferMatrix::is_real(double tol) const {
    return f_.imag().cwiseAbs().maxCoeff() <= tol;
}

RealMatrix TransferMatrix::real_matrix(double tol) const {
    if (!is_real(tol))
        throw std::invalid_argument("TransferMatrix: map is not Hermiticity-preserving");
    return f_.real();
}

bool TransferMatrix::has_block_form(double tol) const {
    if (std::abs(f_(0, 0) - 1.0) > tol) return false;
    return f_.row(0).tail(f_.cols() - 1).cwiseAbs().maxCoeff() <= tol;
}

RealVector TransferMatrix::translation(double tol) const {
    if (!has_block_form(tol))
        throw std::invalid_argument("TransferMatrix: not in trace-preserving block form");
    return f_.col(0).tail(f_.rows() - 1).real();
}

RealMatrix TransferMatrix::linear_block(double tol) const {
    if (!has_block_form(tol))
        throw std::invalid_argument("TransferMatrix: not in trace-preserving block form");
    return f_.bottomRightCorner(f_.rows() - 1, f_.cols() - 1).real();
}

Matrix TransferMatrix::linear_block_complex() const {
    return f_.bottomRightCorner(f_.rows() - 1, f_.cols() - 1);
}

Matrix basis_vec_matrix(const OperatorBasis& basis) {
    const Eigen::Index n = Eigen::Index(basis.dim) * basis.dim;
    Matrix b(n, n);
    for (Eigen::Index a = 0; a < n; ++a) b.col(a) = vec(basis.elements[a]);
    return b;
}

TransferMatrix matrix_rep(const SuperOperator& phi, const OperatorBasis& basis) {
    if (basis.dim != phi.dim()) throw std::invalid_argument("matrix_rep: dimension mismatch");
    const Matrix b = basis_vec_matrix(basis);
    return TransferMatrix(phi.dim(), b.adjoint() * phi.matrix() * b);
}

SuperOperator from_transfer(const TransferMatrix& f, const OperatorBasis& basis) {
    if (basis.dim != f.dim()) throw std::invalid_argument("from_transfer: dimension mismatch");
    const Matrix b = basis_vec_matrix(basis);
    return SuperOperator(f.dim(), b * f.matrix() * b.adjoint());
}

std::pair<RealVector, RealMatrix> block_decompose(const TransferMatrix& f) {
    return {f.translation(), f.linear_block()};
}

namespace {

// lambda_0 convention: among eigenvalues closest to 1, take the one whose
// left eigenvector has the largest overlap with the identity (the
// trace-preservation root). In transfer coordinates the identity sits along
// component 0, and the left eigenvectors are the rows of V^{-1}.
Eigen::Index pinned_index(const Vector& eigs, const Matrix& right_vectors) {
    double best_dist = std::abs(eigs(0) - 1.0);
    for (Eigen::Index i = 1; i < eigs.size(); ++i)
        best_dist = std::min(best_dist, std::abs(eigs(i) - 1.0));

    Matrix vinv;
    bool have_left = false;
    Eigen::PartialPivLU<Matrix> lu(right_vectors);
    const double det_proxy = std::abs(lu.determinant());
    if (std::isfinite(det_proxy) && det_proxy > 1e-300) {
        vinv = lu.inverse();
        have_left = vinv.allFinite();
    }

    Eigen::Index best = -1;
    double best_overlap = -1.0;
    for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        if (std::abs(eigs(i) - 1.0) > best_dist + 1e-9) continue;
        const double overlap = have_left ? std::abs(vinv(i, 0)) : 0.0;
        if (best < 0 || overlap > best_overlap) {
            best_overlap = overlap;
            best = i;
        }
    }
    return best;
}

}  // namespace

SpectralData spectrum(const TransferMatrix& f) {
    SpectralData out;
    const Eigen::Index n = f.matrix().rows();

    Eigen::ComplexEigenSolver<Matrix> es(f.matrix(), /*computeEigenvectors=*/true);
    Vector eigs = es.eigenvalues();
    const Eigen::Index pin = pinned_index(eigs, es.eigenvectors());

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    order.erase(order.begin() + pin);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ma = std::abs(eigs(a)), mb = std::abs(eigs(b));
        if (std::abs(ma - mb) > 1e-14) return ma > mb;
        if (std::abs(eigs(a).real() - eigs(b).real()) > 1e-14)
            return eigs(a).real() > eigs(b).real();
        return eigs(a).imag() > eigs(b).imag();
    });
    out.eigenvalues.resize(n);
    out.eigenvalues(0) = eigs(pin);
    for (Eigen::Index i = 0; i < n - 1; ++i) out.eigenvalues(i + 1) = eigs(order[std::size_t(i)]);

    if (f.is_real()) {
        Eigen::BDCSVD<RealMatrix> svd(f.matrix().real(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.singular_values = svd.singularValues();
        out.left_factor = svd.matrixU().cast<Complex>();
        out.right_factor = svd.matrixV().cast<Complex>();
    } else {
        Eigen::BDCSVD<Matrix> svd(f.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
        out.singular_values = svd.singularValues();
        out.left_factor = svd.matrixU();
        out.right_factor = svd.matrixV();
    }
    return out;
}

double volume_factor(const TransferMatrix& f) {
    if (!f.has_block_form(1e-9))
        throw std::invalid_argument("volume_factor: map is not trace preserving");
    return std::abs(f.linear_block_complex().partialPivLu().determinant());
}

Matrix choi(const SuperOperator& phi) {
    const int d = phi.dim();
    const Eigen::Index n = Eigen::Index(d) * d;
    Matrix c = Matrix::Zero(n, n);
    const Matrix& m = phi.matrix();
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            // Phi[E_ij] is the column of M for vec index j*d + i.
            const Matrix block = unvec(m.col(Eigen::Index(j) * d + i));
            c.block(Eigen::Index(i) * d, Eigen::Index(j) * d, d, d) += block / double(d);
        }
    }
    return c;
}

SuperOperator from_choi(const Matrix& c, int dim) {
    const Eigen::Index n = Eigen::Index(dim) * dim;
    if (c.rows() != n || c.cols() != n) throw std::invalid_argument("from_choi: size mismatch");
    Matrix m(n, n);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m.col(Eigen::Index(j) * dim + i) =
                vec(Matrix(double(dim) * c.block(Eigen::Index(i) * dim, Eigen::Index(j) * dim, dim, dim)));
    return SuperOperator(dim, std::move(m));
}

double witness_f(const SuperOperator& phi) {
    if (!phi.preserves_hermiticity(1e-8))
        throw std::invalid_argument("witness_f: map must be Hermiticity-preserving");
    const MaxEntangled me = max_entangled(phi.dim());
    const Matrix c = choi(phi);
    return (me.vector.adjoint() * c * me.vector)(0).real();
}

DampingBasis damping_basis(const SuperOperator& phi) {
    Eigen::ComplexEigenSolver<Matrix> es(phi.matrix(), true);
    Matrix v = es.eigenvectors();
    const Vector eigs = es.eigenvalues();
    const Eigen::Index n = v.cols();

    // Normalize right eigenvectors (unit norm, largest component real
    // positive) for a deterministic basis.
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index imax = 0;
        v.col(i).cwiseAbs().maxCoeff(&imax);
        const Complex piv = v(imax, i);
        v.col(i) /= (std::abs(piv) > 0 ? piv / std::abs(piv) : 1.0) * v.col(i).norm();
    }

    Eigen::BDCSVD<Matrix> svd(v);
    const double smin = svd.singularValues()(n - 1);
    const double smax = svd.singularValues()(0);
    if (!(smin > 1e-8 * smax))
        throw DefectiveMapError("defective map: eigenvectors do not span the operator space");

    const Matrix vinv = v.partialPivLu().inverse();

    DampingBasis db;
    db.eigenvalues = eigs;
    db.right_ops.reserve(std::size_t(n));
    db.left_ops.reserve(std::size_t(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        db.right_ops.push_back(unvec(v.col(i)));
        db.left_ops.push_back(unvec(Vector(vinv.row(i).adjoint())));
    }
    return db;
}

MapClass classify(const SuperOperator& phi, double tol) {
    // Hermitian (self-dual) and normal are basis-independent properties of
    // the d^2 x d^2 representation under the HS inner product.
    const Matrix& m = phi.matrix();
    MapClass c;
    c.hermitian = (m - Matrix(m.adjoint())).norm() <= tol;
    c.normal = (m * m.adjoint() - m.adjoint() * m).norm() <= tol;
    c.unital = phi.is_unital(tol);
    c.trace_preserving = phi.is_trace_preserving(tol);
    return c;
}

double commute_check(const SuperOperator& a, const SuperOperator& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("commute_check: dimension mismatch");
    return (a.matrix() * b.matrix() - b.matrix() * a.matrix()).norm();
}

CcpResult ccp_test(const SuperOperator& generator) {
    if (!generator.is_trace_annihilating(1e-8))
        throw std::invalid_argument("ccp_test: generator must be trace-annihilating");
    const int d = generator.dim();
    const MaxEntangled me = max_entangled(d);
    const Matrix c = choi(generator);
    const Matrix q = Matrix::Identity(c.rows(), c.cols()) - me.projector;
    Matrix projected = q * c * q;
    projected = 0.5 * (projected + Matrix(projected.adjoint()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(projected, Eigen::EigenvaluesOnly);
    CcpResult r;
    r.min_eig = es.eigenvalues()(0);
    r.passes = r.min_eig >= -1e-9;
    return r;
}

}  // namespace dynamap
