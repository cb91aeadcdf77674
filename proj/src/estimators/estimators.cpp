#include "homog/estimators/estimators.hpp"

#include <algorithm>
#include <cmath>

#include "homog/error.hpp"
#include "homog/kernels/kernels.hpp"

namespace homog::estimators {
namespace {

int even_count(double T, double delta) {
    const double n = T / delta;
    int N = static_cast<int>(std::llround(n / 2.0)) * 2;
    if (N < 2) N = 2;
    return N;
}

}  // namespace

const char* rule_name(DeltaRule r) noexcept {
    switch (r) {
        case DeltaRule::Explicit: return "explicit";
        case DeltaRule::Power: return "power";
        case DeltaRule::Log: return "log";
    }
    return "?";
}

SamplingScheme SamplingScheme::with_count(double T, int N) {
    require(T > 0.0, "SamplingScheme: T > 0");
    require(N >= 2 && N % 2 == 0, "SamplingScheme: N >= 2 and even");
    return SamplingScheme{T, T / N, N, DeltaRule::Explicit, 0.0, T / N};
}

SamplingScheme SamplingScheme::explicit_delta(double T, double delta) {
    require(T > 0.0 && delta > 0.0, "SamplingScheme: T > 0, delta > 0");
    const double n = T / delta;
    const double N = std::round(n);
    require(std::abs(n - N) <= 1e-9 * n, "SamplingScheme: T/delta must be an integer");
    SamplingScheme s = with_count(T, static_cast<int>(N));
    s.delta_target = delta;
    return s;
}

SamplingScheme SamplingScheme::power(double T, double eps, double a) {
    require(eps > 0.0 && eps < 1.0 && a > 0.0, "SamplingScheme::power: eps in (0,1), a > 0");
    const double target = std::pow(eps, a);
    SamplingScheme s = with_count(T, even_count(T, target));
    s.rule = DeltaRule::Power;
    s.rule_param = a;
    s.delta_target = target;
    return s;
}

SamplingScheme SamplingScheme::log_rule(double T, double eps, double a) {
    require(eps > 0.0 && eps < 1.0 && a > 0.0, "SamplingScheme::log_rule: eps in (0,1), a > 0");
    const double target = std::exp(-std::pow(std::abs(std::log(eps)), a));
    SamplingScheme s = with_count(T, even_count(T, target));
    s.rule = DeltaRule::Log;
    s.rule_param = a;
    s.delta_target = target;
    return s;
}

double fine_step_for(const SamplingScheme& scheme, double max_dt) {
    require(max_dt > 0.0, "fine_step_for: max_dt > 0");
    const double half = 0.5 * scheme.delta;
    const double k = std::ceil(half / max_dt * (1.0 - 1e-12));
    return half / std::max(k, 1.0);
}

double quad_var(std::span<const double> samples) {
    require(samples.size() >= 2, "quad_var: at least two samples");
    return kernels::sum_sq_diff(samples);
}

double c_estimator(std::span<const double> samples, double hprime) {
    require(samples.size() >= 2, "c_estimator: N >= 1");
    require(hprime >= 0.5 && hprime < 1.0, "c_estimator: hprime in [1/2, 1)");
    const double qv = quad_var(samples);
    if (hprime == 0.5) return qv;
    const double N = static_cast<double>(samples.size() - 1);
    return std::pow(N, 2.0 * hprime - 1.0) * qv;
}

double h_from_qv(double qv_fine, double qv_coarse) {
    if (!(qv_fine > 0.0) || !(qv_coarse > 0.0))
        throw DegenerateEstimate("h_estimator: quadratic variation vanished");
    return 0.5 - std::log(qv_fine / qv_coarse) / (2.0 * std::log(2.0));
}

double h_estimator(std::span<const double> fine, std::span<const double> coarse) {
    require(fine.size() >= 3 && fine.size() % 2 == 1, "h_estimator: fine grid has 2N+1 samples");
    require(coarse.size() == (fine.size() - 1) / 2 + 1, "h_estimator: coarse grid has N+1 samples");
    for (std::size_t i = 0; i < coarse.size(); ++i)
        require(coarse[i] == fine[2 * i], "h_estimator: grids must be nested");
    return h_from_qv(quad_var(fine), quad_var(coarse));
}

std::vector<double> subsample(std::span<const double> fine, std::size_t step) {
    require(step >= 1 && !fine.empty(), "subsample: step >= 1");
    require((fine.size() - 1) % step == 0, "subsample: step must divide the path length exactly");
    std::vector<double> out;
    out.reserve((fine.size() - 1) / step + 1);
    for (std::size_t i = 0; i < fine.size(); i += step) out.push_back(fine[i]);
    return out;
}

std::size_t grid_stride(double dt, double delta) {
    const double r = delta / dt;
    const double k = std::round(r);
    if (k < 1.0 || std::abs(r - k) > 1e-9 * r)
        throw PreconditionError("fine grid step must divide the sampling step exactly");
    return static_cast<std::size_t>(k);
}

EstimateResult plugin_estimate(const PathGrid& path, const SamplingScheme& scheme) {
    const std::size_t half = grid_stride(path.dt, 0.5 * scheme.delta);
    const std::size_t need = 2 * static_cast<std::size_t>(scheme.N) * half + 1;
    require(path.size() >= need, "plugin_estimate: path does not cover [0, T]");
    std::span<const double> v(path.values.data(), need);
    const double qf = kernels::sum_sq_diff(v, half);
    const double qc = kernels::sum_sq_diff(v, 2 * half);
    EstimateResult r{};
    r.qv_coarse = qc;
    r.qv_fine = qf;
    r.h_hat = h_from_qv(qf, qc);
    r.hprime_used = std::clamp(r.h_hat, 0.5, 1.0 - 1e-6);
    const double scale = r.hprime_used == 0.5 ? 1.0 : std::pow(static_cast<double>(scheme.N), 2.0 * r.hprime_used - 1.0);
    r.c_hat = scale * qc;
    r.regime_used = r.hprime_used == 0.5 ? multiscale::Regime::SubCritical : multiscale::Regime::SuperCritical;
    return r;
}

double c_known(const PathGrid& path, const SamplingScheme& scheme, double hprime) {
    require(hprime >= 0.5 && hprime < 1.0, "c_known: hprime in [1/2, 1)");
    const std::size_t step = grid_stride(path.dt, scheme.delta);
    const std::size_t need = static_cast<std::size_t>(scheme.N) * step + 1;
    require(path.size() >= need, "c_known: path does not cover [0, T]");
    const double qv = kernels::sum_sq_diff(std::span<const double>(path.values.data(), need), step);
    return hprime == 0.5 ? qv : std::pow(static_cast<double>(scheme.N), 2.0 * hprime - 1.0) * qv;
}

}  // namespace homog::estimators
