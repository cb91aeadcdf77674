#include "homog/theory/theory.hpp"

#include <cmath>

#include "homog/chaosvar/quad4.hpp"
#include "homog/error.hpp"
#include "homog/fou/fou.hpp"
#include "homog/numerics/special.hpp"

namespace homog::theory {

namespace {

constexpr double kEdge = 1e-12;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double log_value(LogArg a, double eps, double delta) {
    return a == LogArg::Delta ? std::abs(std::log(delta)) : std::abs(std::log(delta / eps));
}

// Sign of x + 1 with a tolerance band at zero.
int side(double x) {
    if (std::abs(x + 1.0) <= kEdge) return 0;
    return x > -1.0 ? 1 : -1;
}

void require_h(double H) {
    if (!(H > 0.0 && H < 1.0)) throw DomainError("H must lie in (0,1)");
}

RatePrediction headline(RatePrediction p, Base b, double exponent) {
    p.base = b;
    p.exponent = exponent;
    return p;
}

RatePrediction with_logs(RatePrediction p, LogArg a) {
    p.log_correction = LogCorrection::Log;
    p.log_args[0] = a;
    return p;
}

RatePrediction with_logs(RatePrediction p, LogArg a, LogArg b) {
    p.log_correction = LogCorrection::LogSquared;
    p.log_args[0] = a;
    p.log_args[1] = b;
    return p;
}

}  // namespace

const char* base_name(Base b) noexcept {
    switch (b) {
        case Base::Delta: return "delta";
        case Base::Eps: return "eps";
        case Base::EpsOverDelta: return "eps/delta";
    }
    return "?";
}

const char* log_name(LogCorrection l) noexcept {
    switch (l) {
        case LogCorrection::None: return "none";
        case LogCorrection::Log: return "log";
        case LogCorrection::LogSquared: return "log-squared";
    }
    return "?";
}

const char* part_name(Part p) noexcept { return p == Part::Diag ? "Diag" : "Off"; }

RatePrediction RatePrediction::powers(double de, double ee) {
    RatePrediction p;
    p.delta_exponent = de;
    p.eps_exponent = ee;
    if (ee == 0.0) {
        p.base = Base::Delta;
        p.exponent = de;
    } else if (de == 0.0) {
        p.base = Base::Eps;
        p.exponent = ee;
    } else if (std::abs(de + ee) <= kEdge) {
        p.base = Base::EpsOverDelta;
        p.exponent = ee;
    } else {
        p.base = Base::Delta;
        p.exponent = de;
    }
    return p;
}

RatePrediction RatePrediction::in_base(Base b, double e) {
    switch (b) {
        case Base::Delta: return powers(e, 0.0);
        case Base::Eps: return powers(0.0, e);
        case Base::EpsOverDelta: {
            RatePrediction p = powers(-e, e);
            p.base = Base::EpsOverDelta;
            p.exponent = e;
            return p;
        }
    }
    return {};
}

double RatePrediction::order(double eps, double delta) const {
    require(eps > 0.0 && delta > 0.0, "RatePrediction::order: eps, delta > 0");
    double v = std::pow(delta, delta_exponent) * std::pow(eps, eps_exponent);
    const int nlog = log_correction == LogCorrection::None ? 0 : log_correction == LogCorrection::Log ? 1 : 2;
    for (int i = 0; i < nlog; ++i) v *= log_value(log_args[i], eps, delta);
    return v;
}

double RatePrediction::value(double eps, double delta) const {
    if (!prefactor) throw PreconditionError("RatePrediction::value: no prefactor");
    return *prefactor * order(eps, delta);
}

RatePrediction bias_rate(const multiscale::ModelSpec& model) {
    if (model.regime == multiscale::Regime::Critical)
        throw PreconditionError("bias_rate: not defined at H* = 1/2");
    if (model.regime == multiscale::Regime::SuperCritical)
        return RatePrediction::in_base(Base::EpsOverDelta, 2.0 * model.hstar - 1.0);
    return RatePrediction::in_base(Base::EpsOverDelta, 1.0 - std::max(2.0 * model.hstar, 0.0));
}

CriticalIndices critical_indices(double H, int m) {
    require_h(H);
    require(m >= 1, "critical_indices: m >= 1");
    const double p = 2.0 * H - 2.0;
    CriticalIndices ci;
    for (int r = 0; r <= m; ++r)
        if (r * p < -1.0) {
            ci.r_I = r;
            break;
        }
    for (int r = m / 2; r <= m; ++r)
        if (2.0 * (m - r) * p > -1.0) {
            ci.r_S = r;
            break;
        }
    return ci;
}

RatePrediction variance_rate(const multiscale::ModelSpec& model, int r) {
    const int m = model.m();
    if (r < 0 || r > m - 1) throw PreconditionError("variance_rate: r must lie in 0..m-1");
    const double H = model.H();
    const double p = 2.0 * H - 2.0;
    if (model.regime == multiscale::Regime::Critical)
        throw PreconditionError("variance_rate: not defined at H* = 1/2");

    if (model.regime == multiscale::Regime::SuperCritical) {
        const double e = 2.0 * (m - r) * (2.0 - 2.0 * H);
        RatePrediction out;
        if (std::abs(e - 1.0) <= kEdge)
            out = with_logs(RatePrediction::powers(1.0, 0.0), LogArg::Delta);
        else
            out = RatePrediction::powers(std::min(e, 1.0), 0.0);
        if (r < m - 1) {
            out.bound = true;
            out.note = "order only: symmetrisation dropped for r < m-1";
            return out;
        }
        const double rp = r * p;
        const double kap2m = std::pow(fou::kappa(H), 2.0 * m);
        const double den = (rp + 2.0) * (rp + 2.0) * (rp + 1.0) * (rp + 1.0);
        if (e < 1.0 - kEdge) {
            out.prefactor = dstar(H, m);
        } else if (e > 1.0 + kEdge) {
            // Only m = 1 reaches H < 3/4 with H* > 1/2.
            const double diag = kap2m / (H * H * (2.0 * H - 1.0) * (2.0 * H - 1.0));
            out.prefactor = diag + 8.0 * numerics::zeta(-2.0 * (m - r) * p) * kap2m / den;
            out.note = "E^Diag and E^Off share the order delta";
        } else {
            out.prefactor = 8.0 * kap2m / den;
            out.note = "E^Off carries the log; E^Diag is of order delta without it";
        }
        return out;
    }

    // SubCritical: f(delta, eps, m, r) of the variance bound.
    const double a = r * p;
    const double b = 2.0 * (m - r) * p;
    const double mp2 = -2.0 * m * p;  // 2m(2-2H)
    const int si = side(a);           // +1 integral grows, -1 converges
    const int ss = side(b);           // +1 Riemann sum tends to the integral, -1 zeta regime
    const bool hs_above = model.hstar > 0.25;
    RatePrediction f;
    if (si > 0 && ss < 0) {
        f = headline(RatePrediction::powers(1.0 - (mp2 - 2.0), mp2 - 2.0), Base::EpsOverDelta, mp2 - 2.0);
        f.note = "r < r_I and r < r_S";
    } else if (si < 0 && ss > 0) {
        f = RatePrediction::powers(0.0, -b);
        f.note = "integral and Riemann sum convergent";
    } else if (si > 0 && ss > 0) {
        f = RatePrediction::powers(2.0 * a + 2.0, mp2 - 2.0);
        f.note = "r_S < r < r_I";
    } else if (si < 0 && ss < 0) {
        f = headline(RatePrediction::powers(1.0 + b, -b), Base::EpsOverDelta, -b);
        f.note = "r_I < r < r_S";
    } else if (si == 0 && ss == 0) {
        f = with_logs(RatePrediction::powers(0.0, 1.0), LogArg::Delta, LogArg::DeltaOverEps);
        f.note = "double borderline, H* = 1/4";
    } else if (si == 0) {
        if (ss > 0)
            f = with_logs(RatePrediction::powers(0.0, -b), LogArg::DeltaOverEps, LogArg::DeltaOverEps);
        else
            f = with_logs(headline(RatePrediction::powers(1.0 + b, -b), Base::EpsOverDelta, -b),
                          LogArg::DeltaOverEps, LogArg::DeltaOverEps);
        f.note = hs_above ? "r(2H-2) = -1, H* > 1/4" : "r(2H-2) = -1, H* < 1/4";
    } else {
        if (si > 0)
            f = with_logs(headline(RatePrediction::powers(1.0 - (mp2 - 2.0), mp2 - 2.0), Base::EpsOverDelta,
                                   mp2 - 2.0),
                          LogArg::Delta);
        else
            f = with_logs(RatePrediction::powers(0.0, -b), LogArg::Delta);
        f.note = hs_above ? "2(m-r)(2H-2) = -1, H* > 1/4" : "2(m-r)(2H-2) = -1, H* < 1/4";
    }
    f.bound = true;
    return f;
}

double dstar(double H, int m) {
    if (!(H > 0.75 && H < 1.0)) throw DomainError("dstar: H must lie in (3/4, 1)");
    require(m >= 1, "dstar: m >= 1");
    if (!(multiscale::hstar(H, m) > 0.5)) throw DomainError("dstar: requires H*(m) > 1/2");
    const double p = 2.0 * H - 2.0;
    const double g = 1.0 / numerics::gamma_fn(2.0 * H - 1.0);
    const double a = (m - 1) * p + 2.0, b = (m - 1) * p + 1.0;
    return 4.0 * std::pow(g, 2.0 * m) / ((4.0 * H - 3.0) * (2.0 * H - 1.0) * a * a * b * b);
}

double c_H_const(double H, int m, double c_m) {
    if (!(H > 0.75 && H < 1.0)) throw DomainError("c_H_const: H must lie in (3/4, 1)");
    require(m >= 1, "c_H_const: m >= 1");
    if (!(multiscale::hstar(H, m) > 0.5)) throw DomainError("c_H_const: requires H*(m) > 1/2");
    if (c_m == 0.0) throw DomainError("c_H_const: c_m must be nonzero");
    const double p = 2.0 * H - 2.0;
    const double w = c_m * factorial(m) / std::sqrt(factorial(m - 1));
    const double kap = std::pow(1.0 / numerics::gamma_fn(2.0 * H - 1.0), m);
    const double a = (m - 1) * p + 2.0, b = (m - 1) * p + 1.0;
    return w * w * kap / (a * b) * std::sqrt(8.0 / ((4.0 * H - 3.0) * (2.0 * H - 1.0)));
}

double hermite_K(double H, int m) {
    if (!(H > 0.5 && H < 1.0)) throw DomainError("hermite_K: H must lie in (1/2, 1)");
    require(m >= 1, "hermite_K: m >= 1");
    const double be = numerics::beta_fn(0.5 + (H - 1.0) / m, 2.0 * (1.0 - H) / m);
    return std::sqrt(factorial(m) * H * (2.0 * H - 1.0) / std::pow(be, m));
}

double a_integral(double H, int m, int r) {
    require_h(H);
    require(m >= 1 && r >= 0 && r <= m, "a_integral: 0 <= r <= m");
    const double p = 2.0 * (m - r) * (2.0 * H - 2.0);
    if (!(p > -1.0)) throw DomainError("a_integral: requires 2(m-r)(2H-2) > -1");
    return 1.0 / (p + 1.0) - 1.0 / (p + 2.0);
}

double lemma62_R(double H, int m) {
    if (!(H > 0.75 && H < 1.0)) throw DomainError("lemma62_R: H must lie in (3/4, 1)");
    require(m >= 1, "lemma62_R: m >= 1");
    if (!(multiscale::hstar(H, m) > 0.5)) throw DomainError("lemma62_R: requires H*(m) > 1/2");
    const double p = 2.0 * H - 2.0;
    const double kap = std::pow(1.0 / numerics::gamma_fn(2.0 * H - 1.0), m);
    const double a = (m - 1) * p + 2.0, b = (m - 1) * p + 1.0;
    return 2.0 * kap / (a * b * std::sqrt((4.0 * H - 3.0) * (2.0 * H - 1.0) * 2.0));
}

double power_kernel_J(double H, int m, int r) {
    require_h(H);
    require(m >= 1 && r >= 0 && r <= m, "power_kernel_J: 0 <= r <= m");
    const double p = 2.0 * H - 2.0;
    if (!(2.0 * m * p > -3.0) || !(r * p > -1.0) || !((m - r) * p > -1.0))
        throw DomainError("power_kernel_J: integral diverges");
    const chaosvar::PurePower A(r * p), B((m - r) * p);
    if (r == 0) {
        const double s = chaosvar::separable_integral(B, 0).value;
        return s * s;
    }
    return chaosvar::reduced_integral(A, B, 0).value;
}

RatePrediction prefactor_lemmaA(double H, int m, int r, Part which) {
    require_h(H);
    require(m >= 1 && r >= 0 && r <= m - 1, "prefactor_lemmaA: 0 <= r <= m-1");
    const double p = 2.0 * H - 2.0;
    const double hs = multiscale::hstar(H, m);
    if (std::abs(H - 0.5) <= kEdge || multiscale::classify(hs) == multiscale::Regime::Critical)
        throw DomainError("prefactor_lemmaA: no lemma covers H = 1/2 or H* = 1/2");

    if (H > 0.5 && hs > 0.5) {
        // A.1 (m = 1) and A.2 (m > 1, 1 <= r <= m-1).
        if (m > 1 && r == 0) throw DomainError("prefactor_lemmaA: Lemma A.2 covers 1 <= r <= m-1");
        const double kap2m = std::pow(fou::kappa(H), 2.0 * m);
        if (which == Part::Diag) {
            RatePrediction d = RatePrediction::powers(3.0 + 2.0 * m * p, -2.0 * m * p);
            d.prefactor = kap2m * power_kernel_J(H, m, r);
            return d;
        }
        const double rp = r * p;
        const double den = (rp + 2.0) * (rp + 2.0) * (rp + 1.0) * (rp + 1.0);
        const double b = 2.0 * (m - r) * p;
        const int ss = side(b);
        RatePrediction o;
        if (ss > 0) {
            o = RatePrediction::powers(2.0 * rp + 2.0, -2.0 * m * p);
            o.prefactor = 8.0 * kap2m * a_integral(H, m, r) / den;
        } else if (ss < 0) {
            o = RatePrediction::powers(3.0 + 2.0 * m * p, -2.0 * m * p);
            o.prefactor = 8.0 * kap2m * numerics::zeta(-b) / den;
        } else {
            o = with_logs(RatePrediction::powers(3.0 + 2.0 * m * p, -2.0 * m * p), LogArg::Delta);
            o.prefactor = 8.0 * kap2m / den;
        }
        return o;
    }

    if (m == 1) {
        // A.3: H < 1/2.
        if (which == Part::Diag) {
            RatePrediction d = RatePrediction::powers(1.0, 2.0);
            const double I = rho_power_integral(H, 1);
            if (std::abs(I) > 1e-9)
                d.prefactor = 4.0 * I * I;
            else
                d.note = "leading constant 4 (int rho)^2 vanishes: int_0^inf rho = 0 for H < 1/2";
            return d;
        }
        RatePrediction o = RatePrediction::powers(3.0 + 2.0 * p, -2.0 * p);
        o.prefactor = 2.0 * std::pow(fou::kappa(H), 2.0) * numerics::zeta(-2.0 * p);
        return o;
    }

    // A.4: m > 1, H* < 1/2. Orders only.
    if (which == Part::Diag) {
        RatePrediction d = RatePrediction::powers(1.0, 2.0);
        const double I = rho_power_integral(H, m);
        if (I > 0.0) d.prefactor = 4.0 * I * I;
        d.bound = true;
        return d;
    }
    const double a = r * p, b = 2.0 * (m - r) * p, mp = m * p;
    const int si = side(a), ss = side(b);
    RatePrediction o;
    if (si > 0 && ss < 0)
        o = RatePrediction::powers(3.0 + 2.0 * mp, -2.0 * mp);
    else if (si < 0 && ss > 0)
        o = RatePrediction::powers(0.0, 2.0 - b);
    else if (si > 0 && ss > 0)
        o = RatePrediction::powers(2.0 + 2.0 * a, -2.0 * mp);
    else if (si < 0 && ss < 0)
        o = RatePrediction::powers(1.0 + b, 2.0 - b);
    else if (si == 0 && ss == 0)
        o = with_logs(RatePrediction::powers(0.0, 3.0), LogArg::Delta, LogArg::DeltaOverEps);
    else if (si == 0)
        o = with_logs(ss > 0 ? RatePrediction::powers(0.0, 2.0 - b) : RatePrediction::powers(1.0 + b, 2.0 - b),
                      LogArg::DeltaOverEps, LogArg::DeltaOverEps);
    else
        o = with_logs(si > 0 ? RatePrediction::powers(3.0 + 2.0 * mp, -2.0 * mp)
                             : RatePrediction::powers(0.0, 2.0 - b),
                      LogArg::Delta);
    o.bound = true;
    return o;
}

}  // namespace homog::theory
