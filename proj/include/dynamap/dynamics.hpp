// dynamics.hpp — propagation of generators and map families into
// trajectories: exact exponential paths for commutative generators,
// time-ordered ODE integration for the general case, and divisibility
// factor extraction.
#pragma once

#include <optional>
#include <ostream>
#include <vector>

#include "dynamap/generators.hpp"
#include "dynamap/superop.hpp"

namespace dynamap {

class TimeGrid {
public:
    TimeGrid() = default;
    explicit TimeGrid(std::vector<double> points);
    static TimeGrid uniform(double t_max, int points);

    std::size_t size() const { return points_.size(); }
    double operator[](std::size_t i) const { return points_[i]; }
    const std::vector<double>& points() const { return points_; }
    double t_max() const { return points_.empty() ? 0.0 : points_.back(); }
    double mean_step() const;
    std::optional<std::size_t> index_of(double t, double tol = 1e-12) const;

private:
    std::vector<double> points_;
};

struct PropagateOptions {
    double ode_rtol = 1e-9;
    double ode_atol = 1e-12;
    double quad_tol = 1e-12;
    bool spectra = true;          // eigenvalue paths
    bool svd = true;              // singular value paths
    bool prefer_analytic = true;  // use closed-form eigenpaths when present
    int commute_samples = 20;
    std::uint64_t verify_seed = 0x51ab7e11dull;
};

// A propagated family over a time grid: per-time transfer matrices,
// continuity-matched eigenvalue paths, singular values, and the derived
// scalars Vol(t) = |det Delta_t|, f(t) and q_t.
struct Trajectory {
    TimeGrid grid;
    int dim = 0;
    std::string family;

    std::vector<TransferMatrix> frames;

    Eigen::MatrixXcd eigenpaths;    // rows = times, cols = branches; branch 0 is the unit root
    std::vector<int> branch_labels; // analytic routes: eigen-operator index per branch
    RealMatrix singular_paths;      // singular values of F, descending
    RealMatrix body_semiaxes;       // singular values of Delta, descending
    RealVector volume;              // |det Delta_t|
    RealVector f_series;            // d^{-2} Re tr F(t)
    RealMatrix translations;        // rows = times, cols = q components

    MapClass cls;                   // conjunction over all frames
    bool commutative = false;
    bool real_spectrum = false;
    double max_path_jump = 0.0;     // largest per-step eigenvalue motion seen

    std::optional<AnalyticSpectrum> analytic;

    std::size_t steps() const { return grid.size() ? grid.size() - 1 : 0; }
};

// Exact exponential propagation Lambda_t = exp(int_0^t L); requires a
// declared-commutative generator and re-verifies commutativity by sampling.
// Uses analytic eigenpaths when available, otherwise the matrix exponential
// of the quadrature-integrated generator.
Trajectory propagate_commutative(const TimeLocalGenerator& gen, const TimeGrid& grid,
                                 const PropagateOptions& opts = {});

// Time-ordered integration of dF/dt = L(t) F(t), F(0) = 1.
Trajectory propagate_ode(const TimeLocalGenerator& gen, const TimeGrid& grid,
                         const PropagateOptions& opts = {});

// Direct evaluation of a map family on the grid.
Trajectory sample_family(const MapFamily& family, const TimeGrid& grid,
                         const PropagateOptions& opts = {});

// V_{t,s} = Lambda_t Lambda_s^{-1} for grid times t >= s; throws
// NonInvertibleFrameError when |det F(s)| <= 1e-12.
SuperOperator divisor(const Trajectory& traj, double t, double s);

// CSV schema: t,f,vol,q_norm,lambda_re_*,lambda_im_*,s_* with 17
// significant digits.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

}  // namespace dynamap
