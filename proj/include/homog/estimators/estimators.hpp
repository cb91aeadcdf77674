#pragma once

#include <span>
#include <string>
#include <vector>

#include "homog/multiscale/model.hpp"
#include "homog/path_grid.hpp"

namespace homog::estimators {

enum class DeltaRule { Explicit, Power, Log };

// T = N delta with N even; delta_target records the rule's raw value before
// rounding N to an even integer.
struct SamplingScheme {
    double T;
    double delta;
    int N;
    DeltaRule rule;
    double rule_param;   // exponent a for Power and Log rules
    double delta_target;

    [[nodiscard]] static SamplingScheme explicit_delta(double T, double delta);
    // delta = eps^a
    [[nodiscard]] static SamplingScheme power(double T, double eps, double a);
    // delta = exp(-|log eps|^a)
    [[nodiscard]] static SamplingScheme log_rule(double T, double eps, double a);
    // Exactly N subintervals.
    [[nodiscard]] static SamplingScheme with_count(double T, int N);
};

[[nodiscard]] const char* rule_name(DeltaRule r) noexcept;

// Largest step <= max_dt that divides delta/2 exactly.
[[nodiscard]] double fine_step_for(const SamplingScheme& scheme, double max_dt);

struct EstimateResult {
    double qv_coarse;
    double qv_fine;
    double h_hat;
    double hprime_used;
    double c_hat;
    multiscale::Regime regime_used;  // SubCritical when hprime_used = 1/2
};

// sum (x_{i+1} - x_i)^2
[[nodiscard]] double quad_var(std::span<const double> samples);
// N^{2 H' - 1} quad_var, N = samples.size() - 1.
[[nodiscard]] double c_estimator(std::span<const double> samples, double hprime);
[[nodiscard]] double h_from_qv(double qv_fine, double qv_coarse);
// Coarse grid must be every second fine sample.
[[nodiscard]] double h_estimator(std::span<const double> samples_fine, std::span<const double> samples_coarse);

// Every step-th sample of a fine path; requires (size-1) % step == 0.
[[nodiscard]] std::vector<double> subsample(std::span<const double> fine, std::size_t step);
// Stride between samples spaced delta apart on a grid of step dt; throws unless exact.
[[nodiscard]] std::size_t grid_stride(double dt, double delta);

[[nodiscard]] EstimateResult plugin_estimate(const PathGrid& fine_path, const SamplingScheme& scheme);

// C_{eps,delta} with a known H' from a fine path: N^{2H'-1} QV at step delta.
[[nodiscard]] double c_known(const PathGrid& fine_path, const SamplingScheme& scheme, double hprime);

}  // namespace homog::estimators
