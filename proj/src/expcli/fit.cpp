#include "homog/expcli/fit.hpp"

#include <cmath>

#include "homog/error.hpp"

namespace homog::expcli {

LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys) {
    require(xs.size() == ys.size(), "fit_loglog: xs and ys differ in length");
    require(xs.size() >= 3, "fit_loglog: at least 3 points");
    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw DomainError("fit_loglog: inputs must be positive");
        mx += std::log(xs[i]);
        my += std::log(ys[i]);
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = std::log(xs[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(ys[i]) - my);
    }
    require(sxx > 0.0, "fit_loglog: xs must not all coincide");
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = std::log(ys[i]) - intercept - slope * std::log(xs[i]);
        sse += r * r;
    }
    return {slope, intercept, std::sqrt(sse / (n - 2.0) / sxx)};
}

}  // namespace homog::expcli
