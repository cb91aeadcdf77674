#pragma once

#include <optional>
#include <string>

#include "homog/multiscale/model.hpp"

namespace homog::theory {

enum class Base { Delta, Eps, EpsOverDelta };
enum class LogCorrection { None, Log, LogSquared };
// Argument of each logarithmic factor, in order of appearance.
enum class LogArg { Delta, DeltaOverEps };

[[nodiscard]] const char* base_name(Base b) noexcept;
[[nodiscard]] const char* log_name(LogCorrection l) noexcept;

// prefactor * delta^delta_exponent * eps^eps_exponent * prod |log(arg)|.
// (exponent, base) is the headline form; delta_exponent and eps_exponent are
// the complete powers and agree with it when the rate is a pure power of base.
struct RatePrediction {
    double exponent = 0.0;
    Base base = Base::Delta;
    double delta_exponent = 0.0;
    double eps_exponent = 0.0;
    std::optional<double> prefactor;
    LogCorrection log_correction = LogCorrection::None;
    LogArg log_args[2] = {LogArg::Delta, LogArg::Delta};
    bool bound = false;  // order only
    std::string note;

    [[nodiscard]] static RatePrediction powers(double delta_exponent, double eps_exponent);
    [[nodiscard]] static RatePrediction in_base(Base b, double exponent);

    // Without the prefactor.
    [[nodiscard]] double order(double eps, double delta) const;
    // prefactor * order; throws PreconditionError without a prefactor.
    [[nodiscard]] double value(double eps, double delta) const;
};

// Literal minima of the two index sets; nullopt when the set is empty.
struct CriticalIndices {
    std::optional<int> r_I;
    std::optional<int> r_S;
};

// Closed-form C^2 (SuperCritical) or 2 sum_q c_q^2 q! int_0^inf rho^q (SubCritical).
[[nodiscard]] double limit_C2(const multiscale::ModelSpec& model);
// 2 c_m^2 m! (sigma^2 H (2H-1))^m at H* = 1/2.
[[nodiscard]] double limit_C2_critical(const multiscale::ModelSpec& model);

// E[C_{eps,delta}] on [0, T] with the regime's alpha; model.eps() is used.
[[nodiscard]] double bias_exact(const multiscale::ModelSpec& model, double delta, double T = 1.0);
// E[(X_delta^eps)^2].
[[nodiscard]] double second_moment(const multiscale::ModelSpec& model, double delta);
// int_0^inf rho^q, q >= 1; requires q(2H - 2) < -1.
[[nodiscard]] double rho_power_integral(double H, int q);

[[nodiscard]] RatePrediction bias_rate(const multiscale::ModelSpec& model);

[[nodiscard]] CriticalIndices critical_indices(double H, int m);

// Order of N^{2(2H'-1)} alpha^4 (E^Diag + E^Off) for contraction index r.
[[nodiscard]] RatePrediction variance_rate(const multiscale::ModelSpec& model, int r);

[[nodiscard]] double dstar(double H, int m);
[[nodiscard]] double c_H_const(double H, int m, double c_m);
[[nodiscard]] double hermite_K(double H, int m);
[[nodiscard]] double a_integral(double H, int m, int r);
[[nodiscard]] double lemma62_R(double H, int m);

enum class Part { Diag, Off };
[[nodiscard]] const char* part_name(Part p) noexcept;

// Leading asymptote of E^Diag or E^Off (T = 1, delta = 1/N) per Lemmas A.1-A.4.
[[nodiscard]] RatePrediction prefactor_lemmaA(double H, int m, int r, Part which);

// int_{[0,1]^4} |u-v|^{a}|l-s|^{a}|u-s|^{b}|v-l|^{b}, a = r(2H-2), b = (m-r)(2H-2).
[[nodiscard]] double power_kernel_J(double H, int m, int r);

}  // namespace homog::theory
