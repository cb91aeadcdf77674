#include "homog/multiscale/simulate.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "homog/error.hpp"

namespace homog::multiscale {

std::size_t fine_steps(double T, double dt) {
    require(T > 0.0 && dt > 0.0, "fine_steps: T > 0, dt > 0");
    const double r = T / dt;
    const double n = std::round(r);
    require(std::abs(r - n) <= 1e-9 * r, "fine_steps: T/dt must be an integer");
    require(n >= 10.0, "fine_steps: T/dt >= 10");
    return static_cast<std::size_t>(n);
}

void integrate_slow(const ModelSpec& model, double dt, std::span<const double> y, std::span<double> x) {
    require(x.size() == y.size() && !y.empty(), "integrate_slow: x and y sizes must match");
    thread_local std::vector<double> gy;
    gy.resize(y.size());
    gauss::eval_G(model.g, y, gy);
    const double c = model.alpha() * dt * 0.5;
    x[0] = 0.0;
    for (std::size_t k = 0; k + 1 < y.size(); ++k) x[k + 1] = x[k] + c * (gy[k] + gy[k + 1]);
}

PathGrid integrate_slow(const ModelSpec& model, const PathGrid& y) {
    std::vector<double> x(y.size());
    integrate_slow(model, y.dt, y.values, x);
    return PathGrid(y.t0, y.dt, std::move(x));
}

void integrate_random_ode(const ModelSpec& model, const DriftSpec& drift, double dt,
                          std::span<const double> y, std::span<double> x) {
    require(x.size() == y.size() && !y.empty(), "integrate_random_ode: x and y sizes must match");
    require(static_cast<bool>(drift.h) && static_cast<bool>(drift.g), "integrate_random_ode: drift unset");
    thread_local std::vector<double> gy;
    gy.resize(y.size());
    gauss::eval_G(model.g, y, gy);
    const double c = model.alpha() * dt * 0.5;
    const double half = 0.5 * dt;
    x[0] = 0.0;
    double g_prev = drift.g(y[0]);
    for (std::size_t k = 0; k + 1 < y.size(); ++k) {
        const double g_next = drift.g(y[k + 1]);
        const double slow = c * (gy[k] + gy[k + 1]);
        const double f1 = drift.h(x[k]) * g_prev;
        // Predictor uses the full right-hand side; corrector averages the h g part.
        const double xp = x[k] + dt * f1 + slow;
        const double f2 = drift.h(xp) * g_next;
        x[k + 1] = x[k] + half * (f1 + f2) + slow;
        if (!(std::abs(x[k + 1]) <= kDivergenceGuard))
            throw DivergenceError("integrate_random_ode: |x| exceeded 1e8 at step " + std::to_string(k + 1) +
                                  "; check the DriftSpec bounds");
        g_prev = g_next;
    }
}

SlowSimulator::SlowSimulator(const ModelSpec& model, double T, double dt)
    : model_(model), gen_(model.fou, fine_steps(T, dt) + 1, dt) {}

void SlowSimulator::slow(gauss::SeedSpec seed, std::span<double> x) const {
    thread_local std::vector<double> y;
    y.resize(size());
    gen_.sample(seed, y);
    integrate_slow(model_, dt(), y, x);
}

PathGrid simulate_slow(const ModelSpec& model, double T, double dt, gauss::SeedSpec seed) {
    SlowSimulator sim(model, T, dt);
    std::vector<double> x(sim.size());
    sim.slow(seed, x);
    return PathGrid(0.0, dt, std::move(x));
}

PathGrid simulate_random_ode(const ModelSpec& model, const DriftSpec& drift, double T, double dt,
                             gauss::SeedSpec seed) {
    SlowSimulator sim(model, T, dt);
    std::vector<double> y(sim.size()), x(sim.size());
    sim.sample_fast(seed, y);
    integrate_random_ode(model, drift, dt, y, x);
    return PathGrid(0.0, dt, std::move(x));
}

}  // namespace homog::multiscale
