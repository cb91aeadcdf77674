#pragma once

#include <functional>
#include <limits>
#include <span>
#include <vector>

namespace homog::numerics {

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_depth = 40;  // bisection levels below the root interval
};

struct QuadResult {
    double value;
    double err;
};

// Declared algebraic behaviour f ~ |x - endpoint|^nu at finite endpoints; nu > -1.
// Near b the nodes are b - len*u^(1/(1+nu)); gaps below ulp(b) round to b, so a
// strongly singular right endpoint should be integrated in the variable b - x.
struct EndpointHint {
    double left = 0.0;
    double right = 0.0;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

using Integrand = std::function<double(double)>;

// Globally adaptive Gauss-Kronrod (10/21). b may be +inf.
// Throws QuadratureError carrying the best estimate when max_depth is exhausted.
[[nodiscard]] QuadResult adaptive_quad(const Integrand& f, double a, double b,
                                       const QuadratureSpec& spec = {},
                                       const EndpointHint& hint = {});

// Same, but returns the best estimate instead of throwing; ok=false on failure.
struct QuadAttempt {
    QuadResult result;
    bool ok;
};
[[nodiscard]] QuadAttempt try_adaptive_quad(const Integrand& f, double a, double b,
                                            const QuadratureSpec& spec = {},
                                            const EndpointHint& hint = {});

// Integral over [a, b] with a >= 0 where f varies on a logarithmic scale:
// [a, min(b,1)] directly and [max(a,1), b] under x = e^t.
[[nodiscard]] QuadResult integrate_log_scale(const Integrand& f, double a, double b,
                                             const QuadratureSpec& spec = {},
                                             double left_hint = 0.0);

// n-point Gauss-Legendre rule on [-1, 1]; cached, thread-safe.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
[[nodiscard]] const GaussRule& gauss_legendre(int n);

// Composite rule on [a, b]: panels between sorted breakpoints, each panel split
// geometrically toward listed grading points so that the smallest panel next to
// a grading point has width <= min_width. Appends nodes/weights.
struct CompositeSpec {
    int order = 8;
    double ratio = 0.25;     // geometric panel shrink factor toward a grading point
    double min_width = 1e-9;
    // Within taper_levels geometric levels of a grading point the order drops by
    // one per level, never below min_order.
    bool taper = false;
    int min_order = 3;
    int taper_levels = 5;
};
void composite_rule(double a, double b, std::span<const double> breaks,
                    std::span<const double> grade_at, const CompositeSpec& spec,
                    std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace homog::numerics
