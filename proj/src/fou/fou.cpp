#include "homog/fou/fou.hpp"

#include <cmath>
#include <limits>

#include "homog/error.hpp"
#include "homog/numerics/quadrature.hpp"
#include "homog/numerics/special.hpp"

namespace homog::fou {
namespace {

constexpr double kPi = 3.141592653589793238462643;

// Wynn epsilon table over partial sums; returns the last even-column entry.
double wynn_epsilon(const std::vector<double>& sums) {
    const std::size_t n = sums.size();
    std::vector<double> prev(n + 1, 0.0), cur(sums.begin(), sums.end());
    double best = sums.back();
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(n - k);
        for (std::size_t j = 0; j + 1 < cur.size(); ++j) {
            const double diff = cur[j + 1] - cur[j];
            if (diff == 0.0) return (k % 2 == 1) ? cur[j + 1] : best;
            next[j] = prev[j + 1] + 1.0 / diff;
        }
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0 && !cur.empty()) best = cur.back();
    }
    return best;
}

// A s^{1-nu} int_0^inf cos(y) y^nu / (s^2 + y^2) dy with nu = 1 - 2H.
double spectral(double H, double s) {
    const double nu = 1.0 - 2.0 * H;
    const double s2 = s * s;
    auto g = [nu, s2](double y) { return std::cos(y) * std::pow(y, nu) / (s2 + y * y); };
    numerics::QuadratureSpec spec{1e-13, 0.0, 40};

    double head = 0.0;
    const double half = 0.5 * kPi;
    if (s < half) {
        head += numerics::adaptive_quad(g, 0.0, s, spec, {nu, 0.0}).value;
        head += numerics::integrate_log_scale(
                    [&g, s](double u) { return g(s * u); }, 1.0, half / s, spec)
                    .value * s;
    } else {
        head += numerics::adaptive_quad(g, 0.0, half, spec, {nu, 0.0}).value;
    }

    std::vector<double> sums;
    double partial = 0.0, last = std::numeric_limits<double>::quiet_NaN();
    const double scale_floor = std::abs(head);
    for (int k = 1; k <= 400; ++k) {
        const double lo = half + (k - 1) * kPi, hi = lo + kPi;
        const auto t = numerics::adaptive_quad(g, lo, hi, {1e-14, 1e-18 * scale_floor, 30});
        partial += t.value;
        sums.push_back(partial);
        if (k >= 12 && k % 4 == 0) {
            const double est = wynn_epsilon(sums);
            if (std::isfinite(last) && std::abs(est - last) <= 1e-12 * (std::abs(head + est) + 1e-300))
                return (2.0 * std::sin(kPi * H) / kPi) * std::pow(s, 1.0 - nu) * (head + est);
            last = est;
        }
    }
    const double est = wynn_epsilon(sums);
    throw QuadratureError("fou_covariance: oscillatory tail did not converge",
                          (2.0 * std::sin(kPi * H) / kPi) * std::pow(s, 1.0 - nu) * (head + est),
                          std::abs(est - last));
}

}  // namespace

double sigma2(double H) {
    require(H > 0.0 && H < 1.0, "sigma2: H in (0,1)");
    return 2.0 / numerics::gamma_fn(2.0 * H + 1.0);
}

double kappa(double H) {
    require(H > 0.0 && H < 1.0, "kappa: H in (0,1)");
    if (H == 0.5) throw DomainError("kappa: undefined at H = 1/2");
    return sigma2(H) * H * (2.0 * H - 1.0);
}

FouSpec FouSpec::make(double H, double eps) {
    require(H > 0.0 && H < 1.0, "FouSpec: H in (0,1)");
    require(eps > 0.0 && std::isfinite(eps), "FouSpec: eps > 0");
    return FouSpec{H, eps};
}

double fou_covariance_small(double H, double s) {
    return 1.0 + 0.5 * s * s - 0.5 * sigma2(H) * std::pow(s, 2.0 * H);
}

double fou_covariance_large(double H, double s) {
    const double inv_s2 = 1.0 / (s * s);
    double p = 1.0, pw = std::pow(s, 2.0 * H), sum = 0.0, last = std::numeric_limits<double>::infinity();
    for (int n = 1; n <= 60; ++n) {
        p *= (2.0 * H - (2 * n - 2)) * (2.0 * H - (2 * n - 1));
        pw *= inv_s2;
        const double term = p * pw;
        if (std::abs(term) >= last) break;
        sum += term;
        last = std::abs(term);
        if (last <= 1e-18 * std::abs(sum)) break;
    }
    return 0.5 * sigma2(H) * sum;
}

double fou_covariance(double H, double s) {
    require(H > 0.0 && H < 1.0, "fou_covariance: H in (0,1)");
    require(s >= 0.0, "fou_covariance: s >= 0");
    if (s == 0.0) return 1.0;
    if (H == 0.5) return std::exp(-s);
    if (s < kSmallLag) return fou_covariance_small(H, s);
    if (s > kLargeLag) return fou_covariance_large(H, s);
    return spectral(H, s);
}

double fou_kernel_g(double H, double s) {
    require(H > 0.5 && H < 1.0, "fou_kernel_g: H in (1/2,1)");
    require(s >= 0.0, "fou_kernel_g: s >= 0");
    if (s == 0.0) return 0.0;
    const double b = H - 1.5;
    if (s > 50.0) {
        double term = 1.0, sum = 1.0;
        for (int n = 1; n < 40; ++n) {
            const double next = -term * (b - (n - 1)) / s;
            if (std::abs(next) >= std::abs(term)) break;
            term = next;
            sum += term;
            if (std::abs(term) < 1e-17 * std::abs(sum)) break;
        }
        return std::pow(s, b) * sum;
    }
    auto f = [b, s](double v) { return std::exp(v - s) * std::pow(v, b); };
    return numerics::adaptive_quad(f, 0.0, s, {1e-12, 0.0, 40}, {b, 0.0}).value;
}

}  // namespace homog::fou
