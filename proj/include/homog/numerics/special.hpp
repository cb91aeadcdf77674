#pragma once

namespace homog::numerics {

[[nodiscard]] double gamma_fn(double x);
[[nodiscard]] double beta_fn(double a, double b);
// Riemann zeta for real s != 1.
[[nodiscard]] double zeta(double s);
[[nodiscard]] double euler_gamma() noexcept;
// H_n = sum_{k<=n} 1/k, compensated summation.
[[nodiscard]] double harmonic(long long n);

}  // namespace homog::numerics
