#include "dynamap/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "dynamap/linalg.hpp"
#include "dynamap/ode.hpp"

namespace dynamap {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
    if (points_.size() < 2) throw std::invalid_argument("TimeGrid: need at least two points");
    if (points_.front() != 0.0) throw std::invalid_argument("TimeGrid: must start at t = 0");
    for (std::size_t i = 1; i < points_.size(); ++i)
        if (!(points_[i] > points_[i - 1]))
            throw std::invalid_argument("TimeGrid: times must be strictly increasing");
}

TimeGrid TimeGrid::uniform(double t_max, int points) {
    if (points < 2) throw std::invalid_argument("TimeGrid: need at least two points");
    if (!(t_max > 0)) throw std::invalid_argument("TimeGrid: t_max must be positive");
    std::vector<double> ts(static_cast<std::size_t>(points), 0.0);
    for (int i = 0; i < points; ++i) ts[std::size_t(i)] = t_max * double(i) / double(points - 1);
    ts.front() = 0.0;
    ts.back() = t_max;
    return TimeGrid(std::move(ts));
}

double TimeGrid::mean_step() const {
    if (points_.size() < 2) return 0.0;
    return (points_.back() - points_.front()) / double(points_.size() - 1);
}

std::optional<std::size_t> TimeGrid::index_of(double t, double tol) const {
    auto it = std::lower_bound(points_.begin(), points_.end(), t - tol);
    if (it == points_.end() || std::abs(*it - t) > tol) return std::nullopt;
    return std::size_t(it - points_.begin());
}

namespace {

// Greedy bijective matching of eigenvalue multisets, smallest distances
// first. Returns perm with cur(perm[b]) continuing prev(b).
std::vector<int> match_greedy(const Vector& prev, const Vector& cur) {
    const int n = int(prev.size());
    struct Entry {
        double dist;
        int i, j;
    };
    std::vector<Entry> entries;
    entries.reserve(std::size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries.push_back({std::abs(prev(i) - cur(j)), i, j});
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    std::vector<int> perm(std::size_t(n), -1);
    std::vector<bool> used(std::size_t(n), false);
    int assigned = 0;
    for (const auto& e : entries) {
        if (assigned == n) break;
        if (perm[std::size_t(e.i)] >= 0 || used[std::size_t(e.j)]) continue;
        perm[std::size_t(e.i)] = e.j;
        used[std::size_t(e.j)] = true;
        ++assigned;
    }
    return perm;
}

double min_positive_gap(const Vector& v) {
    const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        for (Eigen::Index j = i + 1; j < v.size(); ++j) {
            const double d = std::abs(v(i) - v(j));
            if (d > 1e-12 * scale) gap = std::min(gap, d);
        }
    return gap;
}

using EigsAt = std::function<Vector(double)>;

// Matches prev (at ta) to cur (at tb); when the motion is large relative to
// the branch separation and an evaluator is available, refines through the
// midpoint.
std::vector<int> match_refined(const Vector& prev, double ta, const Vector& cur, double tb,
                               const EigsAt& eigs_at, int depth, double& max_jump) {
    auto perm = match_greedy(prev, cur);
    double motion = 0.0;
    for (Eigen::Index b = 0; b < prev.size(); ++b)
        motion = std::max(motion, std::abs(cur(perm[std::size_t(b)]) - prev(b)));
    const double gap = min_positive_gap(prev);
    if (motion <= 0.45 * gap || depth <= 0 || !eigs_at || tb - ta < 1e-12) {
        max_jump = std::max(max_jump, motion);
        return perm;
    }
    const double tm = 0.5 * (ta + tb);
    const Vector mid_raw = eigs_at(tm);
    const auto p1 = match_refined(prev, ta, mid_raw, tm, eigs_at, depth - 1, max_jump);
    Vector mid(prev.size());
    for (Eigen::Index b = 0; b < prev.size(); ++b) mid(b) = mid_raw(p1[std::size_t(b)]);
    const auto p2 = match_refined(mid, tm, cur, tb, eigs_at, depth - 1, max_jump);
    return p2;
}

Vector frame_eigenvalues(const Matrix& m) {
    Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
    return es.eigenvalues();
}

struct FinalizeInput {
    TimeGrid grid;
    int dim = 0;
    std::string family;
    std::vector<Matrix> f_frames;  // transfer representation per time
    std::optional<Eigen::MatrixXcd> analytic_paths;
    std::vector<int> branch_labels;
    EigsAt eigs_at;  // eigenvalues of the transfer matrix at arbitrary t
    bool commutative = false;
    std::optional<AnalyticSpectrum> analytic;
    const PropagateOptions* opts = nullptr;
};

Trajectory finalize(FinalizeInput in) {
    const PropagateOptions& opts = *in.opts;
    const std::size_t nt = in.grid.size();
    const Eigen::Index n = Eigen::Index(in.dim) * in.dim;

    Trajectory traj;
    traj.grid = std::move(in.grid);
    traj.dim = in.dim;
    traj.family = std::move(in.family);
    traj.commutative = in.commutative;
    traj.analytic = std::move(in.analytic);
    traj.branch_labels = std::move(in.branch_labels);

    traj.volume.resize(Eigen::Index(nt));
    traj.f_series.resize(Eigen::Index(nt));
    traj.translations.resize(Eigen::Index(nt), n - 1);
    if (opts.svd) {
        traj.singular_paths.resize(Eigen::Index(nt), n);
        traj.body_semiaxes.resize(Eigen::Index(nt), n - 1);
    }

    const double flag_tol = 1e-8;
    bool hermitian = true, normal = true, unital = true, tp = true;

    traj.frames.reserve(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        Matrix& f = in.f_frames[i];
        const Eigen::Index row = Eigen::Index(i);

        traj.f_series(row) = f.trace().real() / double(n);
        traj.translations.row(row) = f.col(0).tail(n - 1).real().transpose();
        const Matrix delta = f.bottomRightCorner(n - 1, n - 1);
        traj.volume(row) = std::abs(delta.partialPivLu().determinant());

        hermitian = hermitian && (f - Matrix(f.adjoint())).norm() <= flag_tol;
        normal = normal && (f * f.adjoint() - f.adjoint() * f).norm() <= flag_tol;
        unital = unital && (f.col(0) - Vector::Unit(n, 0)).norm() <= flag_tol;
        tp = tp && (f.row(0).transpose() - Vector::Unit(n, 0)).norm() <= flag_tol;

        if (opts.svd) {
            const bool real_f = f.imag().cwiseAbs().maxCoeff() <= 1e-12;
            if (real_f) {
                Eigen::BDCSVD<RealMatrix> svd_f(f.real());
                traj.singular_paths.row(row) = svd_f.singularValues().transpose();
                Eigen::BDCSVD<RealMatrix> svd_d(delta.real());
                traj.body_semiaxes.row(row) = svd_d.singularValues().transpose();
            } else {
                Eigen::BDCSVD<Matrix> svd_f(f);
                traj.singular_paths.row(row) = svd_f.singularValues().transpose();
                Eigen::BDCSVD<Matrix> svd_d(delta);
                traj.body_semiaxes.row(row) = svd_d.singularValues().transpose();
            }
        }
        traj.frames.emplace_back(in.dim, std::move(f));
    }
    traj.cls = MapClass{hermitian, normal, unital, tp};

    if (opts.spectra) {
        if (in.analytic_paths) {
            traj.eigenpaths = std::move(*in.analytic_paths);
        } else {
            traj.eigenpaths.resize(Eigen::Index(nt), n);
            Vector prev = frame_eigenvalues(traj.frames[0].matrix());
            traj.eigenpaths.row(0) = prev.transpose();
            for (std::size_t i = 1; i < nt; ++i) {
                const Vector cur_raw = frame_eigenvalues(traj.frames[i].matrix());
                const auto perm =
                    match_refined(prev, traj.grid[i - 1], cur_raw, traj.grid[i], in.eigs_at,
                                  10, traj.max_path_jump);
                Vector cur(n);
                for (Eigen::Index b = 0; b < n; ++b) cur(b) = cur_raw(perm[std::size_t(b)]);
                traj.eigenpaths.row(Eigen::Index(i)) = cur.transpose();
                prev = std::move(cur);
            }
            // Pin the unit root as branch 0: among branches closest to 1 on
            // average, prefer the one ending nearest the trace-preservation
            // eigenvalue of the final frame.
            Eigen::Index best = 0;
            double best_score = std::numeric_limits<double>::infinity();
            const Vector ref = spectrum(traj.frames.back()).eigenvalues;
            for (Eigen::Index b = 0; b < n; ++b) {
                double score = (traj.eigenpaths.col(b).array() - 1.0).abs().sum() +
                               std::abs(traj.eigenpaths(Eigen::Index(nt) - 1, b) - ref(0));
                if (score < best_score - 1e-12) {
                    best_score = score;
                    best = b;
                }
            }
            if (best != 0) {
                traj.eigenpaths.col(best).swap(traj.eigenpaths.col(0));
            }
        }
        traj.real_spectrum = traj.eigenpaths.imag().cwiseAbs().maxCoeff() <= 1e-9;
    }
    return traj;
}

Eigen::MatrixXcd analytic_path_matrix(const AnalyticSpectrum& as, const TimeGrid& grid,
                                      std::vector<int>& labels) {
    const Eigen::Index n = Eigen::Index(as.eigenops.size());
    // Branch 0 is the unit root; remaining branches keep eigen-operator order.
    labels.clear();
    labels.push_back(as.unit_branch);
    for (Eigen::Index b = 0; b < n; ++b)
        if (int(b) != as.unit_branch) labels.push_back(int(b));

    Eigen::MatrixXcd paths(Eigen::Index(grid.size()), n);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Vector lam = as.lambda_at(grid[i]);
        for (Eigen::Index b = 0; b < n; ++b)
            paths(Eigen::Index(i), b) = lam(labels[std::size_t(b)]);
    }
    return paths;
}

void verify_commutativity(const TimeLocalGenerator& gen, const TimeGrid& grid,
                          const PropagateOptions& opts) {
    if (!gen.commutative())
        throw std::invalid_argument("propagate_commutative: generator not declared commutative");
    Rng rng(opts.verify_seed);
    std::uniform_real_distribution<double> uni(0.0, grid.t_max());
    int done = 0, attempts = 0;
    while (done < opts.commute_samples && attempts < 20 * opts.commute_samples) {
        ++attempts;
        const double t = uni(rng), s = uni(rng);
        if (!gen.defined_at(t) || !gen.defined_at(s)) continue;
        const SuperOperator lt = gen.at(t), ls = gen.at(s);
        const double scale = std::max(1.0, lt.matrix().norm() * ls.matrix().norm());
        if (commute_check(lt, ls) > 1e-10 * scale)
            throw std::invalid_argument(
                "propagate_commutative: commutativity re-verification failed at (t, s) = (" +
                std::to_string(t) + ", " + std::to_string(s) + ")");
        ++done;
    }
}

}  // namespace

Trajectory propagate_commutative(const TimeLocalGenerator& gen, const TimeGrid& grid,
                                 const PropagateOptions& opts) {
    verify_commutativity(gen, grid, opts);

    const int d = gen.dim();
    const Eigen::Index n = Eigen::Index(d) * d;
    const OperatorBasis basis = gell_mann_basis(d);
    const Matrix b = basis_vec_matrix(basis);

    FinalizeInput in;
    in.grid = grid;
    in.dim = d;
    in.family = gen.family();
    in.commutative = true;
    in.analytic = gen.analytic_spectrum();
    in.opts = &opts;
    in.f_frames.resize(grid.size());

    const auto& as = gen.analytic_spectrum();
    if (as && opts.prefer_analytic) {
        Matrix v(n, n);
        for (Eigen::Index a = 0; a < n; ++a) v.col(a) = vec(as->eigenops[std::size_t(a)]);
        const Matrix p = b.adjoint() * v;
        const Matrix pinv = v.partialPivLu().solve(b);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Vector lam = as->lambda_at(grid[i]);
            in.f_frames[i] = p * lam.asDiagonal() * pinv;
        }
        if (opts.spectra)
            in.analytic_paths = analytic_path_matrix(*as, grid, in.branch_labels);
    } else {
        // Quadrature-integrated generator, then the matrix exponential.
        auto l_at = [&gen](double t) { return gen.at(t).matrix(); };
        std::vector<Matrix> integrals(grid.size());
        integrals[0] = Matrix::Zero(n, n);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const double t0 = grid[i - 1], t1 = grid[i];
            integrals[i] = integrals[i - 1] +
                           integrate_matrix(l_at, t0, t1, opts.quad_tol * std::max(1.0, t1 - t0));
        }
        for (std::size_t i = 0; i < grid.size(); ++i)
            in.f_frames[i] = b.adjoint() * expm(integrals[i]) * b;

        auto shared = std::make_shared<std::vector<Matrix>>(std::move(integrals));
        auto grid_pts = std::make_shared<std::vector<double>>(grid.points());
        in.eigs_at = [shared, grid_pts, l_at, &opts, b](double t) {
            auto it = std::upper_bound(grid_pts->begin(), grid_pts->end(), t);
            const std::size_t k = (it == grid_pts->begin()) ? 0 : std::size_t(it - grid_pts->begin()) - 1;
            Matrix a = (*shared)[k];
            if (t > (*grid_pts)[k])
                a += integrate_matrix(l_at, (*grid_pts)[k], t, opts.quad_tol);
            return frame_eigenvalues(b.adjoint() * expm(a) * b);
        };
    }
    return finalize(std::move(in));
}

Trajectory propagate_ode(const TimeLocalGenerator& gen, const TimeGrid& grid,
                         const PropagateOptions& opts) {
    const int d = gen.dim();
    const Eigen::Index n = Eigen::Index(d) * d;
    const OperatorBasis basis = gell_mann_basis(d);
    const Matrix b = basis_vec_matrix(basis);

    OdeRhs rhs = [&gen, n](double t, const Vector& y, Vector& dy) {
        const Eigen::Map<const Matrix> m(y.data(), n, n);
        Eigen::Map<Matrix> dm(dy.data(), n, n);
        dm.noalias() = gen.at(t).matrix() * m;
    };

    OdeOptions ode_opts;
    ode_opts.rtol = opts.ode_rtol;
    ode_opts.atol = opts.ode_atol;

    auto states = std::make_shared<std::vector<Matrix>>(grid.size());
    Vector y0 = vec(Matrix::Identity(n, n));
    ode_integrate_path(
        rhs, 0.0, std::move(y0), grid.points(),
        [&](std::size_t i, const Vector& y) { (*states)[i] = unvec(y); }, ode_opts);

    FinalizeInput in;
    in.grid = grid;
    in.dim = d;
    in.family = gen.family();
    in.commutative = gen.commutative();
    in.analytic = gen.analytic_spectrum();
    in.opts = &opts;
    in.f_frames.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        in.f_frames[i] = b.adjoint() * (*states)[i] * b;

    auto grid_pts = std::make_shared<std::vector<double>>(grid.points());
    in.eigs_at = [states, grid_pts, rhs, ode_opts](double t) {
        auto it = std::upper_bound(grid_pts->begin(), grid_pts->end(), t);
        const std::size_t k = (it == grid_pts->begin()) ? 0 : std::size_t(it - grid_pts->begin()) - 1;
        Matrix m = (*states)[k];
        if (t > (*grid_pts)[k] + 1e-14)
            m = unvec(ode_integrate(rhs, (*grid_pts)[k], vec(m), t, ode_opts));
        return frame_eigenvalues(m);
    };
    return finalize(std::move(in));
}

Trajectory sample_family(const MapFamily& family, const TimeGrid& grid,
                         const PropagateOptions& opts) {
    const int d = family.dim;
    const OperatorBasis basis = gell_mann_basis(d);
    const Matrix b = basis_vec_matrix(basis);

    FinalizeInput in;
    in.grid = grid;
    in.dim = d;
    in.family = family.family;
    in.commutative = family.commutative;
    in.analytic = family.spectrum;
    in.opts = &opts;
    in.f_frames.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        in.f_frames[i] = b.adjoint() * family.at(grid[i]).matrix() * b;

    if (family.spectrum && opts.prefer_analytic && opts.spectra) {
        in.analytic_paths = analytic_path_matrix(*family.spectrum, grid, in.branch_labels);
    } else {
        auto at = family.at;
        in.eigs_at = [at, b](double t) {
            return frame_eigenvalues(b.adjoint() * at(t).matrix() * b);
        };
    }
    return finalize(std::move(in));
}

SuperOperator divisor(const Trajectory& traj, double t, double s) {
    const auto it = traj.grid.index_of(t);
    const auto is = traj.grid.index_of(s);
    if (!it || !is) throw std::invalid_argument("divisor: times must lie on the grid");
    if (t < s) throw std::invalid_argument("divisor: need t >= s");

    const Matrix& ft = traj.frames[*it].matrix();
    const Matrix& fs = traj.frames[*is].matrix();
    Eigen::PartialPivLU<Matrix> lu(fs);
    if (std::abs(lu.determinant()) <= 1e-12)
        throw NonInvertibleFrameError("divisor: non-invertible frame at s = " + std::to_string(s));
    // V = F(t) F(s)^{-1} = (F(s)^{-T} F(t)^T)^T, back to the computational
    // representation.
    const Matrix v = (fs.transpose().partialPivLu().solve(ft.transpose())).transpose();
    const OperatorBasis basis = gell_mann_basis(traj.dim);
    const Matrix b = basis_vec_matrix(basis);
    return SuperOperator(traj.dim, b * v * b.adjoint());
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    const Eigen::Index n = Eigen::Index(traj.dim) * traj.dim;
    out << "t,f,vol,q_norm";
    for (Eigen::Index a = 0; a < n; ++a) out << ",lambda_re_" << a;
    for (Eigen::Index a = 0; a < n; ++a) out << ",lambda_im_" << a;
    for (Eigen::Index a = 0; a < n; ++a) out << ",s_" << a;
    out << "\n";

    char buf[32];
    auto put = [&](double x) {
        std::snprintf(buf, sizeof(buf), "%.16e", x);
        out << buf;
    };
    for (std::size_t i = 0; i < traj.grid.size(); ++i) {
        const Eigen::Index row = Eigen::Index(i);
        put(traj.grid[i]);
        out << ',';
        put(traj.f_series(row));
        out << ',';
        put(traj.volume(row));
        out << ',';
        put(traj.translations.row(row).norm());
        for (Eigen::Index a = 0; a < n; ++a) {
            out << ',';
            put(traj.eigenpaths.size() ? traj.eigenpaths(row, a).real() : 0.0);
        }
        for (Eigen::Index a = 0; a < n; ++a) {
            out << ',';
            put(traj.eigenpaths.size() ? traj.eigenpaths(row, a).imag() : 0.0);
        }
        for (Eigen::Index a = 0; a < n; ++a) {
            out << ',';
            put(traj.singular_paths.size() ? traj.singular_paths(row, a) : 0.0);
        }
        out << '\n';
    }
}

}  // namespace dynamap
