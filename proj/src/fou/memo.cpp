#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "homog/error.hpp"
#include "homog/fou/fou.hpp"

namespace homog::fou {

CovarianceMemo::CovarianceMemo(double H, double log_step) : H_(H), h_(log_step) {
    require(H > 0.0 && H < 1.0, "CovarianceMemo: H in (0,1)");
    require(log_step > 0.0 && log_step <= 0.1, "CovarianceMemo: log_step in (0, 0.1]");
    half_sigma2_ = 0.5 * sigma2(H);
    double p = 1.0;
    for (int n = 1; n <= 40; ++n) {
        p *= (2.0 * H - (2 * n - 2)) * (2.0 * H - (2 * n - 1));
        tail_.push_back(half_sigma2_ * p);
    }
    t0_ = std::log(kSmallLag);
    const double t1 = std::log(kLargeLag);
    const std::size_t n = static_cast<std::size_t>(std::ceil((t1 - t0_) / h_)) + 1;
    h_ = (t1 - t0_) / static_cast<double>(n - 1);
    inv_h_ = 1.0 / h_;
    // Two guard nodes per side so the derivative stencil stays centred.
    const std::size_t g = 2;
    std::vector<double> ext(n + 2 * g);
    for (std::size_t i = 0; i < ext.size(); ++i) {
        const double t = t0_ + (static_cast<double>(i) - static_cast<double>(g)) * h_;
        const double s = std::exp(t);
        if (s < kSmallLag)
            ext[i] = fou_covariance_small(H, s);
        else if (s > kLargeLag)
            ext[i] = fou_covariance_large(H, s);
        else
            ext[i] = fou_covariance(H, s);
    }
    v_.assign(ext.begin() + g, ext.begin() + g + n);
    d_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i + g;
        // Fourth-order centred difference, times h.
        const double d = (ext[j - 2] - 8.0 * ext[j - 1] + 8.0 * ext[j + 1] - ext[j + 2]) / 12.0;
        d_[i] = d;
    }
}

// Same truncation rule as fou_covariance_large.
double CovarianceMemo::large(double s) const noexcept {
    const double inv_s2 = 1.0 / (s * s);
    double pw = std::pow(s, 2.0 * H_), sum = 0.0, last = std::numeric_limits<double>::infinity();
    for (double c : tail_) {
        pw *= inv_s2;
        const double term = c * pw;
        if (std::abs(term) >= last) break;
        sum += term;
        last = std::abs(term);
        if (last <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double CovarianceMemo::operator()(double s) const noexcept {
    if (s < 0.0) s = -s;
    if (s < kSmallLag) return s == 0.0 ? 1.0 : 1.0 + 0.5 * s * s - half_sigma2_ * std::pow(s, 2.0 * H_);
    if (s >= kLargeLag) return large(s);
    double x = (std::log(s) - t0_) * inv_h_;
    std::size_t i = static_cast<std::size_t>(x);
    if (i + 1 >= v_.size()) i = v_.size() - 2;
    const double u = x - static_cast<double>(i);
    const double u2 = u * u, u3 = u2 * u;
    const double h00 = 2.0 * u3 - 3.0 * u2 + 1.0, h10 = u3 - 2.0 * u2 + u;
    const double h01 = -2.0 * u3 + 3.0 * u2, h11 = u3 - u2;
    return h00 * v_[i] + h10 * d_[i] + h01 * v_[i + 1] + h11 * d_[i + 1];
}

void CovarianceMemo::eval(std::span<const double> s, std::span<double> out) const noexcept {
    const std::size_t n = std::min(s.size(), out.size());
    for (std::size_t k = 0; k < n; ++k) out[k] = (*this)(s[k]);
}

std::shared_ptr<const CovarianceMemo> CovarianceMemo::get(double H) {
    static std::mutex mu;
    static std::map<double, std::shared_ptr<const CovarianceMemo>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(H);
        if (it != cache.end()) return it->second;
    }
    auto memo = std::make_shared<const CovarianceMemo>(H);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(H, std::move(memo)).first->second;
}

namespace {

std::size_t checked_burn_in(const FouSpec& spec, std::size_t n, double dt) {
    require(n >= 2, "fou_path: n >= 2");
    require(dt > 0.0 && dt <= spec.eps / 20.0 * (1.0 + 1e-12), "fou_path: dt <= eps/20 required");
    return static_cast<std::size_t>(std::ceil(10.0 * spec.eps / dt - 1e-9));
}

}  // namespace

FouGenerator::FouGenerator(FouSpec spec, std::size_t n, double dt)
    : spec_(FouSpec::make(spec.H, spec.eps)),
      n_(n),
      dt_(dt),
      burn_(checked_burn_in(spec_, n, dt)),
      fbm_(spec_.H, burn_ + n - 1, dt) {}

void FouGenerator::sample(gauss::SeedSpec seed, std::span<double> out) const {
    require(out.size() == n_, "FouGenerator::sample: output size mismatch");
    thread_local std::vector<double> inc;
    inc.resize(fbm_.size());
    fbm_.increments(seed, inc);
    const double a = std::exp(-dt_ / spec_.eps);
    const double b = std::sqrt(spec_.sigma2()) * std::pow(spec_.eps, -spec_.H) * std::exp(-0.5 * dt_ / spec_.eps);
    double y = gauss::GaussianStream(seed, gauss::Lane::InitialState).at(0);
    for (std::size_t k = 0; k < burn_; ++k) y = a * y + b * inc[k];
    out[0] = y;
    for (std::size_t k = 1; k < n_; ++k) {
        y = a * y + b * inc[burn_ + k - 1];
        out[k] = y;
    }
}

PathGrid fou_path(const FouSpec& spec, std::size_t n, double dt, gauss::SeedSpec seed) {
    FouGenerator gen(spec, n, dt);
    std::vector<double> v(n);
    gen.sample(seed, v);
    return PathGrid(0.0, dt, std::move(v));
}

}  // namespace homog::fou
