// ode.hpp — adaptive eighth-order Dormand-Prince integration (Hairer's
// DOP853 tableau with the combined 5th/3rd-order error estimate) for small
// dense complex systems.
#pragma once

#include <functional>
#include <span>

#include "dynamap/types.hpp"

namespace dynamap {

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 0.0;  // 0 = automatic
    long max_steps = 2000000;
};

using OdeRhs = std::function<void(double, const Vector&, Vector&)>;

// Integrates y' = f(t, y) from t0 to t1 (t1 >= t0) and returns y(t1).
Vector ode_integrate(const OdeRhs& f, double t0, Vector y0, double t1,
                     const OdeOptions& opts = {});

// Integrates across an increasing sequence of output times, invoking
// sink(index, y) at each one (the first entry must equal t0; the initial
// state is reported for it). Steps are clamped to land on output times.
void ode_integrate_path(const OdeRhs& f, double t0, Vector y0,
                        std::span<const double> times,
                        const std::function<void(std::size_t, const Vector&)>& sink,
                        const OdeOptions& opts = {});

}  // namespace dynamap
