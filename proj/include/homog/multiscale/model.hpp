#pragma once

#include <functional>

#include "homog/fou/fou.hpp"
#include "homog/gauss/hermite.hpp"

namespace homog::multiscale {

enum class Regime { SubCritical, Critical, SuperCritical };

[[nodiscard]] const char* regime_name(Regime r) noexcept;

// H*(m) = (H - 1) m + 1
[[nodiscard]] double hstar(double H, int m);
// |H* - 1/2| <= 1e-12 counts as critical.
[[nodiscard]] Regime classify(double hstar) noexcept;
[[nodiscard]] double alpha_scaling(double eps, double hstar);

struct ModelSpec {
    fou::FouSpec fou;
    gauss::HermiteCoeffs g;
    double hstar;
    double hprime;  // max(H*, 1/2)
    Regime regime;

    [[nodiscard]] static ModelSpec make(double H, double eps, gauss::HermiteCoeffs g);
    [[nodiscard]] ModelSpec with_eps(double eps) const { return make(fou.H, eps, g); }
    [[nodiscard]] double H() const noexcept { return fou.H; }
    [[nodiscard]] double eps() const noexcept { return fou.eps; }
    [[nodiscard]] int m() const noexcept { return g.rank(); }
    [[nodiscard]] double alpha() const { return alpha_scaling(fou.eps, hstar); }
};

// Bounded perturbation h(x) g(y) of the random ODE.
struct DriftSpec {
    std::function<double(double)> h;
    std::function<double(double)> g;
    double sup_h;
    double sup_g;

    // Samples both functions on a fixed grid and throws if a bound is violated.
    void spot_check() const;
};

}  // namespace homog::multiscale
