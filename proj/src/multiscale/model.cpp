#include "homog/multiscale/model.hpp"

#include <cmath>

#include "homog/error.hpp"

namespace homog::multiscale {

const char* regime_name(Regime r) noexcept {
    switch (r) {
        case Regime::SubCritical: return "SubCritical";
        case Regime::Critical: return "Critical";
        case Regime::SuperCritical: return "SuperCritical";
    }
    return "?";
}

double hstar(double H, int m) {
    require(H > 0.0 && H < 1.0, "hstar: H in (0,1)");
    require(m >= 1, "hstar: m >= 1");
    return (H - 1.0) * m + 1.0;
}

Regime classify(double hs) noexcept {
    if (std::abs(hs - 0.5) <= 1e-12) return Regime::Critical;
    return hs > 0.5 ? Regime::SuperCritical : Regime::SubCritical;
}

double alpha_scaling(double eps, double hs) {
    require(eps > 0.0, "alpha_scaling: eps > 0");
    if (eps >= 1.0) throw PreconditionError("alpha_scaling: eps must be < 1");
    switch (classify(hs)) {
        case Regime::SuperCritical: return std::pow(eps, hs - 1.0);
        case Regime::Critical: return 1.0 / std::sqrt(eps * std::abs(std::log(eps)));
        case Regime::SubCritical: return 1.0 / std::sqrt(eps);
    }
    return 0.0;
}

ModelSpec ModelSpec::make(double H, double eps, gauss::HermiteCoeffs g) {
    const fou::FouSpec f = fou::FouSpec::make(H, eps);
    const double hs = multiscale::hstar(H, g.rank());
    const Regime r = classify(hs);
    return ModelSpec{f, std::move(g), hs, r == Regime::SuperCritical ? hs : 0.5, r};
}

void DriftSpec::spot_check() const {
    require(static_cast<bool>(h) && static_cast<bool>(g), "DriftSpec: h and g must be set");
    require(sup_h >= 0.0 && sup_g >= 0.0, "DriftSpec: bounds must be nonnegative");
    for (int i = -400; i <= 400; ++i) {
        const double x = i * 0.05;
        if (std::abs(h(x)) > sup_h * (1.0 + 1e-12))
            throw PreconditionError("DriftSpec: |h| exceeds sup_h at a sampled point");
        if (std::abs(g(x)) > sup_g * (1.0 + 1e-12))
            throw PreconditionError("DriftSpec: |g| exceeds sup_g at a sampled point");
    }
}

}  // namespace homog::multiscale
