// rates.hpp — time-dependent decoherence rates gamma(t) with exact
// antiderivatives where available.
#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "dynamap/types.hpp"

namespace dynamap {

// A rate function gamma(t) on [0, t_max] together with its antiderivative
// Gamma(t) = int_0^t gamma. Closed forms are used when available; tabulated
// rates are piecewise linear with exact trapezoid integrals; custom rates
// fall back to adaptive quadrature.
class RateFunction {
public:
    enum class Kind { Constant, ClosedForm, Tabulated, Custom };

    static RateFunction constant(double value);
    static RateFunction closed_form(std::string tag, std::function<double(double)> rate,
                                    std::function<double(double)> integral);
    // Strictly increasing times starting at 0; linear interpolation between
    // samples; evaluation beyond the last sample is an error.
    static RateFunction tabulated(std::vector<double> times, std::vector<double> values);
    static RateFunction custom(std::function<double(double)> rate);

    // Two-column CSV "t,gamma" (header row optional).
    static RateFunction from_csv(const std::string& path);

    // Accepts a decimal constant, one of the built-in tags
    // {sin, -sin, cos, -cos, tanh, -tanh}, or "csv:<path>".
    static RateFunction parse(const std::string& spec);

    double rate(double t) const;
    double integral(double t) const;

    Kind kind() const { return kind_; }
    const std::string& tag() const { return tag_; }
    double t_max() const { return t_max_; }
    bool has_closed_integral() const { return kind_ != Kind::Custom; }

private:
    RateFunction() = default;
    Kind kind_ = Kind::Constant;
    std::string tag_;
    double t_max_ = std::numeric_limits<double>::infinity();
    std::function<double(double)> rate_;
    std::function<double(double)> integral_;
};

}  // namespace dynamap
