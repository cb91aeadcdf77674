#include "homog/chaosvar/chaosvar.hpp"

#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "homog/chaosvar/quad4.hpp"
#include "homog/error.hpp"
#include "homog/fou/fou.hpp"
#include "homog/numerics/parallel.hpp"

namespace homog::chaosvar {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

void check_args(double H, int m, int r, double eps, double delta, int N) {
    require(H > 0.0 && H < 1.0, "chaosvar: H in (0,1)");
    require(m >= 1 && r >= 0 && r <= m - 1, "chaosvar: 0 <= r <= m-1");
    require(eps > 0.0 && delta > eps, "chaosvar: delta/eps > 1");
    require(N >= 1, "chaosvar: N >= 1");
}

struct Kernels {
    std::unique_ptr<Kernel> A;  // power r
    std::unique_ptr<Kernel> B;  // power m - r
};

Kernels make_kernels(double H, int m, int r, double mu, const ChaosOptions& opt) {
    if (opt.rho)
        return {std::make_unique<CorrelationPower>(opt.rho, mu, r),
                std::make_unique<CorrelationPower>(opt.rho, mu, m - r)};
    auto memo = fou::CovarianceMemo::get(H);
    return {std::make_unique<CorrelationPower>(memo, mu, r),
            std::make_unique<CorrelationPower>(memo, mu, m - r)};
}

QuadOptions quad_options(const ChaosOptions& opt) {
    QuadOptions q;
    q.rel_change = opt.rel_change;
    return q;
}

// Integral for the pair (i, i + k).
double shifted(const Kernels& K, int r, int k, const QuadOptions& q) {
    if (r == 0) {
        const double s = separable_integral(*K.B, k, q).value;
        return s * s;
    }
    return reduced_integral(*K.A, *K.B, k, q).value;
}

}  // namespace

double chaos_weight(double c_m, int m, int r) {
    require(m >= 1 && r >= 0 && r <= m, "chaos_weight: 0 <= r <= m");
    return c_m * factorial(m) / (factorial(m - r) * std::sqrt(factorial(r)));
}

double e_diag(double H, int m, int r, double eps, double delta, int N, const ChaosOptions& opt) {
    check_args(H, m, r, eps, delta, N);
    const double mu = delta / eps;
    const Kernels K = make_kernels(H, m, r, mu, opt);
    const double d4 = delta * delta * delta * delta;
    return N * d4 * shifted(K, r, 0, quad_options(opt));
}

double e_off(double H, int m, int r, double eps, double delta, int N, const ChaosOptions& opt) {
    check_args(H, m, r, eps, delta, N);
    require(N >= 2, "e_off: N >= 2");
    const double mu = delta / eps;
    const Kernels K = make_kernels(H, m, r, mu, opt);
    const QuadOptions q = quad_options(opt);
    const bool far = opt.far_field && !opt.rho && H != 0.5;

    int k_far = N;  // first k handled by the far-field form
    if (far) {
        for (int k = std::max(1, opt.far_k); k < N; ++k)
            if (k * mu > opt.far_lag) {
                k_far = k;
                break;
            }
    }
    const int n_near = k_far - 1;
    std::vector<double> near(static_cast<std::size_t>(std::max(n_near, 0)));
    numerics::parallel_for(near.size(), opt.threads, [&](std::size_t i) {
        near[i] = shifted(K, r, static_cast<int>(i) + 1, q);
    });

    double sum = 0.0;
    for (std::size_t i = 0; i < near.size(); ++i) sum += 2.0 * (N - static_cast<double>(i + 1)) * near[i];
    if (k_far < N) {
        // rho(s)^{m-r} ~ kappa^{m-r} s^{(m-r)(2H-2)} on both shifted factors.
        double a2 = 1.0;
        if (r > 0) {
            const double a = separable_integral(*K.A, 0, q).value;
            a2 = a * a;
        }
        const double e = 2.0 * (m - r) * (2.0 * H - 2.0);
        const double kap = std::pow(fou::kappa(H), 2.0 * (m - r));
        double tail = 0.0;
        for (int k = k_far; k < N; ++k) tail += 2.0 * (N - k) * std::pow(k * mu, e);
        sum += a2 * kap * tail;
    }
    const double d4 = delta * delta * delta * delta;
    return d4 * sum;
}

VariancePrediction variance_prediction(const multiscale::ModelSpec& model, double delta, int N,
                                       const ChaosOptions& opt) {
    if (!model.g.is_single_term())
        throw PreconditionError("variance_prediction: G must be a single Hermite term c_m He_m");
    const int m = model.m();
    const double c_m = model.g.c(m);
    const double H = model.H(), eps = model.eps();
    const double alpha = model.alpha();
    const double a4 = alpha * alpha * alpha * alpha;
    const double nfac = std::pow(static_cast<double>(N), 2.0 * (2.0 * model.hprime - 1.0));

    VariancePrediction out{0.0, m == 1, {}};
    for (int r = 0; r <= m - 1; ++r) {
        ChaosTerm t{};
        t.r = r;
        t.order = 2 * m - 2 * r;
        const double w = chaos_weight(c_m, m, r);
        t.weight = w * w;
        double ed = e_diag(H, m, r, eps, delta, N, opt);
        double eo = N >= 2 ? e_off(H, m, r, eps, delta, N, opt) : 0.0;
        const double scale = std::max(std::abs(ed) + std::abs(eo), 1e-300);
        t.sign_anomaly = ed < -1e-6 * scale || eo < -1e-6 * scale;
        if (t.sign_anomaly)
            std::fprintf(stderr, "chaosvar: negative chaos integral at r=%d (diag %.3e, off %.3e)\n", r, ed,
                         eo);
        if (ed < 0.0 && ed >= -1e-12 * scale) ed = 0.0;
        if (eo < 0.0 && eo >= -1e-12 * scale) eo = 0.0;
        t.e_diag = ed;
        t.e_off = eo;
        t.exact = r == m - 1;
        out.value += t.weight * t.weight * factorial(t.order) * nfac * a4 * (ed + eo);
        out.terms.push_back(t);
    }
    return out;
}

}  // namespace homog::chaosvar
