#include <cmath>

#include "homog/error.hpp"
#include "homog/fou/fou.hpp"
#include "homog/numerics/quadrature.hpp"
#include "homog/theory/theory.hpp"

namespace homog::theory {

namespace {

// Split point between the direct and logarithmic ranges, and start of the
// inverted tail s = kTail / t.
constexpr double kTail = 40.0;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double ipow(double x, int q) {
    double p = 1.0;
    for (int i = 0; i < q; ++i) p *= x;
    return p;
}

// R(s) = sum_q c_q^2 q! rho(s)^q
struct Autocov {
    std::shared_ptr<const fou::CovarianceMemo> rho;
    std::vector<double> w;  // w[q] = c_q^2 q!

    explicit Autocov(const multiscale::ModelSpec& model) : rho(fou::CovarianceMemo::get(model.H())) {
        const auto& c = model.g.coeffs();
        w.resize(c.size());
        for (std::size_t q = 0; q < c.size(); ++q) w[q] = c[q] * c[q] * factorial(static_cast<int>(q));
    }
    double operator()(double s) const {
        const double r = (*rho)(s);
        // Horner in rho; w[0] = 0.
        double acc = 0.0;
        for (std::size_t q = w.size(); q-- > 1;) acc = (acc + w[q]) * r;
        return acc;
    }
};

}  // namespace

double rho_power_integral(double H, int q) {
    if (!(H > 0.0 && H < 1.0)) throw DomainError("rho_power_integral: H in (0,1)");
    require(q >= 1, "rho_power_integral: q >= 1");
    const double p = 2.0 * H - 2.0;
    if (H == 0.5) return 1.0 / q;
    if (!(q * p < -1.0)) throw DomainError("rho_power_integral: requires q(2H-2) < -1");
    auto rho = fou::CovarianceMemo::get(H);
    auto f = [&](double s) { return ipow((*rho)(s), q); };
    const numerics::QuadratureSpec spec{1e-12, 1e-15, 40};
    double v = numerics::adaptive_quad(f, 0.0, 1.0, spec).value;
    v += numerics::integrate_log_scale(f, 1.0, kTail, spec).value;
    // s = kTail / t: f(s) ds = f(kTail/t) kTail/t^2 dt, which behaves like t^{-qp-2}.
    auto g = [&](double t) { return t > 0.0 ? f(kTail / t) * kTail / (t * t) : 0.0; };
    v += numerics::adaptive_quad(g, 0.0, 1.0, spec, {-q * p - 2.0, 0.0}).value;
    return v;
}

double limit_C2(const multiscale::ModelSpec& model) {
    using multiscale::Regime;
    if (model.regime == Regime::Critical)
        throw PreconditionError("limit_C2: H* = 1/2 is handled by limit_C2_critical");
    const int m = model.m();
    const double H = model.H();
    if (model.regime == Regime::SuperCritical) {
        const double c = model.g.c(m);
        const double hs = model.hstar;
        return c * c * factorial(m) * std::pow(fou::sigma2(H) * H * (2.0 * H - 1.0), m) /
               (hs * (2.0 * hs - 1.0));
    }
    double sum = 0.0;
    for (int q = m; q <= model.g.max_order(); ++q) {
        const double c = model.g.c(q);
        if (c == 0.0) continue;
        sum += c * c * factorial(q) * 2.0 * rho_power_integral(H, q);
    }
    return sum;
}

double limit_C2_critical(const multiscale::ModelSpec& model) {
    if (model.regime != multiscale::Regime::Critical)
        throw PreconditionError("limit_C2_critical: requires H* = 1/2");
    const double H = model.H();
    if (H == 0.5) throw DomainError("limit_C2_critical: kappa vanishes at H = 1/2");
    const int m = model.m();
    const double c = model.g.c(m);
    return 2.0 * c * c * factorial(m) * std::pow(fou::sigma2(H) * H * (2.0 * H - 1.0), m);
}

double second_moment(const multiscale::ModelSpec& model, double delta) {
    require(delta > 0.0, "second_moment: delta > 0");
    const double eps = model.eps();
    const double mu = delta / eps;
    const Autocov R(model);
    auto f = [&](double s) { return (mu - s) * R(s); };
    const numerics::QuadratureSpec spec{1e-12, 0.0, 40};
    double I = numerics::adaptive_quad(f, 0.0, std::min(mu, 1.0), spec).value;
    if (mu > 1.0) I += numerics::integrate_log_scale(f, 1.0, mu, spec).value;
    const double alpha = model.alpha();
    return alpha * alpha * eps * eps * 2.0 * I;
}

double bias_exact(const multiscale::ModelSpec& model, double delta, double T) {
    require(T > 0.0 && delta > 0.0 && delta <= T, "bias_exact: 0 < delta <= T");
    return std::pow(T / delta, 2.0 * model.hprime) * second_moment(model, delta);
}

}  // namespace homog::theory
