#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "homog/gauss/fbm.hpp"
#include "homog/gauss/rng.hpp"
#include "homog/path_grid.hpp"

namespace homog::fou {

// sigma^2 = 2 / Gamma(2H + 1): unit stationary variance.
[[nodiscard]] double sigma2(double H);
// kappa_H = sigma^2 H (2H - 1); H = 1/2 rejected.
[[nodiscard]] double kappa(double H);

struct FouSpec {
    double H;
    double eps;

    [[nodiscard]] static FouSpec make(double H, double eps);
    [[nodiscard]] double sigma2() const { return fou::sigma2(H); }
};

// rho(s) of the unit-speed stationary fOU, s >= 0, from its spectral integral.
// Throws QuadratureError below relative accuracy 1e-8.
[[nodiscard]] double fou_covariance(double H, double s);

// Ascending-power expansion used for s below the spectral range, and the
// divergent large-s series summed to its smallest term.
[[nodiscard]] double fou_covariance_small(double H, double s);
[[nodiscard]] double fou_covariance_large(double H, double s);

// Lags above this are evaluated by the large-s series.
inline constexpr double kLargeLag = 40.0;
inline constexpr double kSmallLag = 1e-6;

// g(s) = e^{-s} int_0^s e^v v^{H-3/2} dv, H in (1/2, 1).
[[nodiscard]] double fou_kernel_g(double H, double s);

// Tabulated rho on a logarithmic grid; interpolation error well below 1e-8.
// Instances are immutable and shared between threads.
class CovarianceMemo {
public:
    // Cached per H.
    [[nodiscard]] static std::shared_ptr<const CovarianceMemo> get(double H);
    explicit CovarianceMemo(double H, double log_step = 0.01);

    [[nodiscard]] double hurst() const noexcept { return H_; }
    [[nodiscard]] double operator()(double s) const noexcept;
    void eval(std::span<const double> s, std::span<double> out) const noexcept;

private:
    double H_;
    double t0_;
    double h_;
    double inv_h_;
    std::vector<double> v_;
    std::vector<double> d_;  // d rho / d log s, scaled by h
    double half_sigma2_;
    std::vector<double> tail_;  // large-s series coefficients, sigma^2/2 folded in

    [[nodiscard]] double large(double s) const noexcept;
};

// Exponential-integrator fOU sampler with a cached fBm embedding.
class FouGenerator {
public:
    FouGenerator(FouSpec spec, std::size_t n, double dt);
    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t burn_in() const noexcept { return burn_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] const FouSpec& spec() const noexcept { return spec_; }
    // out.size() == size(); out[0] sits after the burn-in.
    void sample(gauss::SeedSpec seed, std::span<double> out) const;

private:
    FouSpec spec_;
    std::size_t n_;
    double dt_;
    std::size_t burn_;
    gauss::FbmGenerator fbm_;
};

[[nodiscard]] PathGrid fou_path(const FouSpec& spec, std::size_t n, double dt, gauss::SeedSpec seed);

}  // namespace homog::fou
