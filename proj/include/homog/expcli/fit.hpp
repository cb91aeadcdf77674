#pragma once

#include <span>

namespace homog::expcli {

struct LogLogFit {
    double slope;
    double intercept;
    double stderr_slope;
};

// Ordinary least squares of log y on log x; >= 3 points, all positive.
[[nodiscard]] LogLogFit fit_loglog(std::span<const double> xs, std::span<const double> ys);

}  // namespace homog::expcli
