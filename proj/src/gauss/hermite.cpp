#include "homog/gauss/hermite.hpp"

#include <cmath>

#include "homog/error.hpp"
#include "homog/kernels/kernels.hpp"

namespace homog::gauss {

double hermite_eval(int n, double x) {
    require(n >= 0, "hermite_eval: n >= 0");
    if (n == 0) return 1.0;
    double hm1 = 1.0, h = x;
    for (int k = 1; k < n; ++k) {
        const double hp1 = x * h - k * hm1;
        hm1 = h;
        h = hp1;
    }
    return h;
}

HermiteCoeffs::HermiteCoeffs(std::vector<double> coeffs) : c_(std::move(coeffs)), rank_(0) {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    if (c_.empty()) throw PreconditionError("HermiteCoeffs: at least one nonzero c_q with q >= 1");
    if (c_[0] != 0.0) throw PreconditionError("HermiteCoeffs: c_0 must be 0 (G centred)");
    for (double v : c_)
        if (!std::isfinite(v)) throw PreconditionError("HermiteCoeffs: coefficients must be finite");
    for (std::size_t q = 1; q < c_.size(); ++q)
        if (c_[q] != 0.0) {
            rank_ = static_cast<int>(q);
            break;
        }
}

HermiteCoeffs HermiteCoeffs::single(int m, double c_m) {
    require(m >= 1, "HermiteCoeffs::single: m >= 1");
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    c[m] = c_m;
    return HermiteCoeffs(std::move(c));
}

double HermiteCoeffs::norm2() const noexcept {
    double s = 0.0, fact = 1.0;
    for (std::size_t q = 1; q < c_.size(); ++q) {
        fact *= static_cast<double>(q);
        s += c_[q] * c_[q] * fact;
    }
    return s;
}

bool HermiteCoeffs::is_single_term() const noexcept {
    for (std::size_t q = 1; q < c_.size(); ++q)
        if (static_cast<int>(q) != rank_ && c_[q] != 0.0) return false;
    return true;
}

double eval_G(const HermiteCoeffs& g, double x) {
    const auto& c = g.coeffs();
    double hm1 = 1.0, h = x, acc = c.size() > 1 ? c[1] * x : 0.0;
    for (std::size_t q = 1; q + 1 < c.size(); ++q) {
        const double hp1 = x * h - static_cast<double>(q) * hm1;
        hm1 = h;
        h = hp1;
        acc += c[q + 1] * h;
    }
    return acc;
}

void eval_G(const HermiteCoeffs& g, std::span<const double> x, std::span<double> out) {
    require(out.size() >= x.size(), "eval_G: output span too small");
    const auto& c = g.coeffs();
    kernels::active().hermite_series(c.data(), c.size(), x.data(), out.data(), x.size());
}

}  // namespace homog::gauss
