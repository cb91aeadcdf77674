#include "homog/numerics/checks.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>

#include "homog/error.hpp"
#include "homog/fou/fou.hpp"
#include "homog/numerics/quadrature.hpp"
#include "homog/numerics/special.hpp"

namespace homog::numerics {

namespace {

constexpr QuadratureSpec kTight{1e-12, 0.0, 50};

// int_0^inf f with f ~ s^left at 0; [scale, inf) is mapped by s = scale / t,
// where the integrand behaves like t^{tail_hint}.
template <class F>
double half_line(F&& f, double scale, double left, double tail_hint, const QuadratureSpec& spec = kTight) {
    double v = adaptive_quad(f, 0.0, scale, spec, {left, 0.0}).value;
    auto g = [&](double t) { return t > 0.0 ? f(scale / t) * scale / (t * t) : 0.0; };
    v += adaptive_quad(g, 0.0, 1.0, spec, {tail_hint, 0.0}).value;
    return v;
}

}  // namespace

double c1_integral(double alpha, int k, double h) {
    require(k >= 1 && h > 0.0, "check_C1: k >= 1, h > 0");
    const double e = alpha * k;
    // w = 1 + s
    auto f = [&](double w) { return (h + 1.0 - w) * std::pow(w, e); };
    return 2.0 * integrate_log_scale(f, 1.0, h + 1.0, kTight).value;
}

double check_C1(double alpha, int k, double h) {
    const double e = alpha * k;
    require(alpha < 0.0, "check_C1: alpha < 0");
    const double I = c1_integral(alpha, k, h);
    if (e == -1.0) return I / (2.0 * h * std::log(h));
    if (e > -1.0) return I / (2.0 * std::pow(h, e + 2.0) / ((e + 2.0) * (e + 1.0)));
    auto f = [&](double s) { return std::pow(1.0 + s, e); };
    const double tail = half_line(f, 1.0, 0.0, -e - 2.0);
    return I / (2.0 * h * tail);
}

double c2_sum(double alpha, long long N) {
    require(N >= 2, "check_C2: N >= 2");
    const double n = static_cast<double>(N);
    double sum = 0.0, c = 0.0;
    for (long long k = 1; k < N; ++k) {
        const double x = static_cast<double>(k) / n;
        const double term = (1.0 - x) * std::pow(x, alpha) / n;
        const double y = term - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double check_C2(double alpha, long long N) {
    require(alpha < 0.0, "check_C2: alpha < 0");
    const double S = c2_sum(alpha, N);
    const double n = static_cast<double>(N);
    if (alpha == -1.0) return S / (std::log(n) + euler_gamma() - 1.0);
    if (alpha < -1.0) return S / (zeta(-alpha) * std::pow(n, -alpha - 1.0));
    return S / (1.0 / (alpha + 1.0) - 1.0 / (alpha + 2.0));
}

double c3_integral(double a, double b, double gamma, int m, double h) {
    require(m >= 1 && h > 0.0 && a > -1.0 && b > -1.0, "check_C3: m >= 1, h > 0, exponents > -1");
    const QuadratureSpec inner{1e-10, 0.0, 50};
    const QuadratureSpec outer{1e-9, 0.0, 50};
    // s runs over [max(x, y), h] for x = s - u, y = s - v.
    auto nu = [&](double d) { return m == 1 ? 1.0 : std::pow(1.0 + std::abs(d), gamma * (m - 1)); };
    auto F = [&](double x) {
        if (x <= 0.0) return 0.0;
        auto below = [&](double y) { return std::pow(y, b) * nu(x - y) * (h - x); };
        auto above = [&](double y) { return std::pow(y, b) * nu(x - y) * (h - y); };
        double v = adaptive_quad(below, 0.0, x, inner, {b, 0.0}).value;
        if (x < h) v += adaptive_quad(above, x, h, inner, {0.0, 1.0}).value;
        return std::pow(x, a) * v;
    };
    return adaptive_quad(F, 0.0, h, outer, {a, 1.0}).value;
}

double check_C3(double a, double b, double gamma, int m, double h) {
    const double hs[] = {h / 4.0, h / 2.0, h};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double x : hs) {
        const double lx = std::log(x), ly = std::log(c3_integral(a, b, gamma, m, x));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (3.0 * sxy - sx * sy) / (3.0 * sxx - sx * sx);
}

DPair check_D(DLemma lemma, double H, double u, double v) {
    require(H > 0.5 && H < 1.0, "check_D: H in (1/2,1)");
    require(u != v, "check_D: u != v");
    const double a = H - 1.5;
    const double d = std::abs(u - v);
    switch (lemma) {
        case DLemma::D1: {
            // s = min(u, v) - x
            auto f = [&](double s) { return std::pow(s, a) * std::pow(s + d, a); };
            return {half_line(f, d, a, -2.0 * a - 2.0), beta_fn(H - 0.5, 2.0 - 2.0 * H) * std::pow(d, 2.0 * H - 2.0)};
        }
        case DLemma::D2: {
            const double lo = std::max(u, v);
            double lhs = 0.0;
            if (lo < 1.0) {
                // t = s - max(u, v)
                auto f = [&](double t) { return std::pow(t, a) * std::pow(t + d, a); };
                lhs = adaptive_quad(f, 0.0, 1.0 - lo, kTight, {a, 0.0}).value;
            }
            return {lhs, beta_fn(H - 0.5, 2.0 - 2.0 * H) * std::pow(d, 2.0 * H - 2.0)};
        }
        case DLemma::D3: {
            if (!(H > 0.75 && H < 5.0 / 6.0)) throw DomainError("check_D: D.3 requires 3/4 < H < 5/6");
            const double p = 2.0 * H - 2.0;
            const double scale = std::pow(d, 3.0 * H - 2.5);
            const double lo = std::max(u, v);
            if (u > v) {
                // t = s - u
                auto f = [&](double t) { return std::pow(t, a) * std::pow(t + d, p); };
                const double lhs = lo < 1.0 ? adaptive_quad(f, 0.0, 1.0 - lo, kTight, {a, 0.0}).value : 0.0;
                return {lhs, scale * beta_fn(H - 0.5, 2.5 - 3.0 * H)};
            }
            // t = s - v
            auto f = [&](double t) { return std::pow(t + d, a) * std::pow(t, p); };
            const double lhs = lo < 1.0 ? adaptive_quad(f, 0.0, 1.0 - lo, kTight, {p, 0.0}).value : 0.0;
            return {lhs, scale * beta_fn(2.0 * H - 1.0, 2.5 - 3.0 * H)};
        }
        case DLemma::D4: {
            require(u > v, "check_D: D.4 requires u > v");
            const double p = 2.0 * H - 2.0;
            // t = s - v on [0, d/2], w = u - s on [0, d/2]
            auto f = [&](double t) { return std::pow(d - t, a) * std::pow(t, p); };
            auto g = [&](double w) { return std::pow(w, a) * std::pow(d - w, p); };
            const double lhs = adaptive_quad(f, 0.0, 0.5 * d, kTight, {p, 0.0}).value +
                               adaptive_quad(g, 0.0, 0.5 * d, kTight, {a, 0.0}).value;
            return {lhs, std::pow(d, 3.0 * H - 2.5) * beta_fn(H - 0.5, 2.0 * H - 1.0)};
        }
    }
    throw DomainError("check_D: unknown lemma");
}

std::vector<double> check_E1(double H, double s_gap, std::span<const double> eps_list) {
    require(H > 0.5 && H < 1.0 && s_gap > 0.0, "check_E1: H in (1/2,1), gap > 0");
    const double a = H - 1.5;
    const double ref = std::pow(s_gap, 2.0 * H - 2.0) * beta_fn(H - 0.5, 2.0 - 2.0 * H);
    std::vector<double> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        require(eps > 0.0, "check_E1: eps > 0");
        // y = s - x
        auto f = [&](double y) { return fou::fou_kernel_g(H, (s_gap + y) / eps) * std::pow(y, a); };
        const double lhs = half_line(f, s_gap, a, -2.0 * a - 2.0, {1e-10, 0.0, 50}) / std::sqrt(eps);
        out.push_back(lhs / (std::pow(eps, 1.0 - H) * ref));
    }
    return out;
}

double kernel_g_argmax(double H) {
    auto neg = [H](double s) { return -fou::fou_kernel_g(H, s); };
    return boost::math::tools::brent_find_minima(neg, 1e-6, 20.0, 40).first;
}

std::vector<double> check_E1_remainder(double H, double s_gap, std::span<const double> eps_list) {
    require(H > 0.5 && H < 1.0 && s_gap > 0.0, "check_E1: H in (1/2,1), gap > 0");
    const double a = H - 1.5;
    const double sstar = kernel_g_argmax(H);
    std::vector<double> out;
    out.reserve(eps_list.size());
    for (double eps : eps_list) {
        // w = (t - x) / eps over [0, s*]
        auto f = [&](double w) { return fou::fou_kernel_g(H, w) * std::pow((s_gap + eps * w) / s_gap, a); };
        out.push_back(adaptive_quad(f, 0.0, sstar, {1e-10, 0.0, 50}, {H - 0.5, 0.0}).value);
    }
    return out;
}

}  // namespace homog::numerics
