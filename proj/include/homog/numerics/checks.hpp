#pragma once

#include <span>
#include <vector>

namespace homog::numerics {

// int int_{[0,h]^2} beta(s-t)^k, beta(s) = (1+s)^alpha, divided by the case asymptote.
[[nodiscard]] double check_C1(double alpha, int k, double h);
// The same double integral through 2 int_0^h (h-s) beta(s)^k ds.
[[nodiscard]] double c1_integral(double alpha, int k, double h);

// S_N = (1/N) sum_{k<N} (1-k/N)(k/N)^alpha, compensated.
[[nodiscard]] double c2_sum(double alpha, long long N);
// S_N divided by the case asymptote.
[[nodiscard]] double check_C2(double alpha, long long N);

// Growth exponent of int_{[0,h]^3} (s-u)_+^a (s-v)_+^b nu(u-v)^{m-1}, nu(s) = (1+|s|)^gamma,
// fitted over {h/4, h/2, h}.
[[nodiscard]] double check_C3(double alpha, double beta_exp, double gamma, int m, double h);
[[nodiscard]] double c3_integral(double alpha, double beta_exp, double gamma, int m, double h);

enum class DLemma { D1, D2, D3, D4 };
struct DPair {
    double lhs;
    double rhs;
};
// D.3 picks its branch from the sign of u - v.
[[nodiscard]] DPair check_D(DLemma lemma, double H, double u, double v);

// int_{-inf}^{s} eps^{-1/2} g((t-x)/eps) (s-x)^{H-3/2} dx with t - s = s_gap,
// divided by eps^{1-H} s_gap^{2H-2} beta(H-1/2, 2-2H).
[[nodiscard]] std::vector<double> check_E1(double H, double s_gap, std::span<const double> eps_list);
// A^eps / (eps^{1/2} (s-t)^{H-3/2}) for s - t = s_gap, with s* = argmax g.
[[nodiscard]] std::vector<double> check_E1_remainder(double H, double s_gap, std::span<const double> eps_list);
// argmax of g on (0, inf).
[[nodiscard]] double kernel_g_argmax(double H);

}  // namespace homog::numerics
