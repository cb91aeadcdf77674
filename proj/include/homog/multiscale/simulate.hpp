#pragma once

#include <span>

#include "homog/gauss/rng.hpp"
#include "homog/multiscale/model.hpp"
#include "homog/path_grid.hpp"

namespace homog::multiscale {

inline constexpr double kDivergenceGuard = 1e8;

// X_{k+1} = X_k + alpha dt (G(Y_k) + G(Y_{k+1})) / 2, X_0 = 0.
void integrate_slow(const ModelSpec& model, double dt, std::span<const double> y, std::span<double> x);
[[nodiscard]] PathGrid integrate_slow(const ModelSpec& model, const PathGrid& y);

// Heun on the frozen Y path for x' = h(x) g(y) + alpha G(y). The alpha G part
// is accumulated exactly as in integrate_slow, so h = 0 reproduces it bitwise.
void integrate_random_ode(const ModelSpec& model, const DriftSpec& drift, double dt,
                          std::span<const double> y, std::span<double> x);

// Owns the fast-path sampler for one (model, T, dt) so replicates share the
// fBm embedding.
class SlowSimulator {
public:
    SlowSimulator(const ModelSpec& model, double T, double dt);
    [[nodiscard]] std::size_t size() const noexcept { return gen_.size(); }
    [[nodiscard]] double dt() const noexcept { return gen_.dt(); }
    [[nodiscard]] const ModelSpec& model() const noexcept { return model_; }
    void sample_fast(gauss::SeedSpec seed, std::span<double> y) const { gen_.sample(seed, y); }
    void slow(gauss::SeedSpec seed, std::span<double> x) const;

private:
    ModelSpec model_;
    fou::FouGenerator gen_;
};

[[nodiscard]] PathGrid simulate_slow(const ModelSpec& model, double T, double dt, gauss::SeedSpec seed);
[[nodiscard]] PathGrid simulate_random_ode(const ModelSpec& model, const DriftSpec& drift, double T,
                                           double dt, gauss::SeedSpec seed);

// Number of fine steps for horizon T; T/dt must be an integer >= 10.
[[nodiscard]] std::size_t fine_steps(double T, double dt);

}  // namespace homog::multiscale
