#include "dynamap/rates.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "dynamap/linalg.hpp"

namespace dynamap {

RateFunction RateFunction::constant(double value) {
    RateFunction r;
    r.kind_ = Kind::Constant;
    std::ostringstream os;
    os << value;
    r.tag_ = os.str();
    r.rate_ = [value](double) { return value; };
    r.integral_ = [value](double t) { return value * t; };
    return r;
}

RateFunction RateFunction::closed_form(std::string tag, std::function<double(double)> rate,
                                       std::function<double(double)> integral) {
    RateFunction r;
    r.kind_ = Kind::ClosedForm;
    r.tag_ = std::move(tag);
    r.rate_ = std::move(rate);
    r.integral_ = std::move(integral);
    return r;
}

RateFunction RateFunction::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.size() < 2)
        throw ConfigError("tabulated rate: need at least two (t, gamma) samples");
    if (times.front() != 0.0) throw ConfigError("tabulated rate: first sample must be at t = 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ConfigError("tabulated rate: times must be strictly increasing");

    // Exact cumulative trapezoid integral of the piecewise-linear rate.
    std::vector<double> cum(times.size(), 0.0);
    for (std::size_t i = 1; i < times.size(); ++i)
        cum[i] = cum[i - 1] + 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);

    RateFunction r;
    r.kind_ = Kind::Tabulated;
    r.tag_ = "tabulated";
    r.t_max_ = times.back();
    auto ts = std::make_shared<std::vector<double>>(std::move(times));
    auto vs = std::make_shared<std::vector<double>>(std::move(values));
    auto cs = std::make_shared<std::vector<double>>(std::move(cum));

    auto locate = [ts](double t) -> std::size_t {
        if (t < ts->front() - 1e-12 || t > ts->back() + 1e-12)
            throw ConfigError("tabulated rate: evaluation outside [0, t_max]");
        auto it = std::upper_bound(ts->begin(), ts->end(), t);
        std::size_t k = std::size_t(it - ts->begin());
        if (k == 0) k = 1;
        if (k >= ts->size()) k = ts->size() - 1;
        return k;
    };
    r.rate_ = [ts, vs, locate](double t) {
        const std::size_t k = locate(t);
        const double w = (t - (*ts)[k - 1]) / ((*ts)[k] - (*ts)[k - 1]);
        return (1.0 - w) * (*vs)[k - 1] + w * (*vs)[k];
    };
    r.integral_ = [ts, vs, cs, locate](double t) {
        const std::size_t k = locate(t);
        const double dt = t - (*ts)[k - 1];
        const double w = dt / ((*ts)[k] - (*ts)[k - 1]);
        const double g = (1.0 - w) * (*vs)[k - 1] + w * (*vs)[k];
        return (*cs)[k - 1] + 0.5 * ((*vs)[k - 1] + g) * dt;
    };
    return r;
}

RateFunction RateFunction::custom(std::function<double(double)> rate) {
    RateFunction r;
    r.kind_ = Kind::Custom;
    r.tag_ = "custom";
    auto fn = std::make_shared<std::function<double(double)>>(std::move(rate));
    r.rate_ = [fn](double t) { return (*fn)(t); };
    r.integral_ = [fn](double t) {
        if (t == 0.0) return 0.0;
        return integrate([fn](double u) { return (*fn)(u); }, 0.0, t,
                         1e-12 * std::max(1.0, std::abs(t)));
    };
    return r;
}

RateFunction RateFunction::from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open rate CSV: " + path);
    std::vector<double> ts, gs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double t, g;
        if (!(ls >> t >> g)) {
            if (ts.empty()) continue;  // tolerate a header row
            throw ConfigError("malformed rate CSV line: " + line);
        }
        ts.push_back(t);
        gs.push_back(g);
    }
    return tabulated(std::move(ts), std::move(gs));
}

RateFunction RateFunction::parse(const std::string& spec) {
    if (spec.rfind("csv:", 0) == 0) return from_csv(spec.substr(4));
    if (spec == "sin")
        return closed_form("sin", [](double t) { return std::sin(t); },
                           [](double t) { return 1.0 - std::cos(t); });
    if (spec == "-sin")
        return closed_form("-sin", [](double t) { return -std::sin(t); },
                           [](double t) { return std::cos(t) - 1.0; });
    if (spec == "cos")
        return closed_form("cos", [](double t) { return std::cos(t); },
                           [](double t) { return std::sin(t); });
    if (spec == "-cos")
        return closed_form("-cos", [](double t) { return -std::cos(t); },
                           [](double t) { return -std::sin(t); });
    if (spec == "tanh")
        return closed_form("tanh", [](double t) { return std::tanh(t); },
                           [](double t) { return std::log(std::cosh(t)); });
    if (spec == "-tanh")
        return closed_form("-tanh", [](double t) { return -std::tanh(t); },
                           [](double t) { return -std::log(std::cosh(t)); });

    double value = 0.0;
    const char* begin = spec.data();
    const char* end = begin + spec.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("unrecognized rate specification: '" + spec + "'");
    return constant(value);
}

double RateFunction::rate(double t) const { return rate_(t); }
double RateFunction::integral(double t) const { return integral_(t); }

}  // namespace dynamap
