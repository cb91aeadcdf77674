#include <gtest/gtest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <atomic>
#include <cmath>
#include <vector>

#include "homog/error.hpp"
#include "homog/numerics/checks.hpp"
#include "homog/numerics/parallel.hpp"
#include "homog/numerics/quadrature.hpp"
#include "homog/numerics/special.hpp"

using namespace homog;
using namespace homog::numerics;

TEST(AdaptiveQuad, Polynomial) {
    const auto r = adaptive_quad([](double x) { return x * x; }, 0.0, 1.0, {1e-13, 0.0, 40});
    EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-12);
}

TEST(AdaptiveQuad, ExponentialHalfLine) {
    const auto r = adaptive_quad([](double x) { return std::exp(-x); }, 0.0, kInf, {1e-12, 0.0, 40});
    EXPECT_NEAR(r.value, 1.0, 1e-10);
}

TEST(AdaptiveQuad, InverseSqrtWithHint) {
    const auto r = adaptive_quad([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-12, 0.0, 40}, {-0.5, 0.0});
    EXPECT_NEAR(r.value, 2.0, 1e-8);
}

TEST(AdaptiveQuad, RightHint) {
    const auto r = adaptive_quad([](double x) { return std::pow(1.0 - x, -0.3); }, 0.0, 1.0, {1e-12, 0.0, 40}, {0.0, -0.3});
    EXPECT_NEAR(r.value, 1.0 / 0.7, 1e-9);
    const auto s = adaptive_quad([](double x) { return std::sqrt(2.0 - x); }, 0.0, 2.0, {1e-12, 0.0, 40}, {0.0, 0.5});
    EXPECT_NEAR(s.value, 2.0 / 3.0 * std::pow(2.0, 1.5), 1e-10);
}

TEST(AdaptiveQuad, ErrorEstimateHonoursTolerance) {
    const QuadratureSpec spec{1e-10, 0.0, 40};
    const auto r = adaptive_quad([](double x) { return std::cos(5.0 * x); }, 0.0, 3.0, spec);
    EXPECT_LE(r.err, spec.rel_tol * std::abs(r.value) + spec.abs_tol);
    EXPECT_NEAR(r.value, std::sin(15.0) / 5.0, 1e-10);
}

TEST(AdaptiveQuad, DepthExhaustedThrowsWithEstimate) {
    auto f = [](double x) { return std::sin(1.0 / std::max(x, 1e-300)); };
    try {
        (void)adaptive_quad(f, 0.0, 1.0, {1e-14, 0.0, 2});
        FAIL() << "expected QuadratureError";
    } catch (const QuadratureError& e) {
        EXPECT_TRUE(std::isfinite(e.best_estimate()));
    }
    const auto t = try_adaptive_quad(f, 0.0, 1.0, {1e-14, 0.0, 2});
    EXPECT_FALSE(t.ok);
}

TEST(AdaptiveQuad, RichardsonSelfTest) {
    struct Case {
        Integrand f;
        double a, b;
        EndpointHint hint;
    };
    const std::vector<Case> battery{
        {[](double x) { return std::exp(x); }, 0.0, 2.0, {}},
        {[](double x) { return std::pow(x, -0.3); }, 0.0, 1.0, {-0.3, 0.0}},
        {[](double x) { return std::exp(-x * x); }, 0.0, kInf, {}},
        {[](double x) { return 1.0 / (1.0 + x * x); }, -3.0, 4.0, {}},
        {[](double x) { return std::pow(1.0 + x, -3.0); }, 0.0, kInf, {}},
    };
    for (const Case& c : battery) {
        const auto coarse = adaptive_quad(c.f, c.a, c.b, {1e-8, 0.0, 40}, c.hint);
        const auto fine = adaptive_quad(c.f, c.a, c.b, {5e-9, 0.0, 40}, c.hint);
        EXPECT_LT(std::abs(coarse.value - fine.value), 5.0 * std::max(coarse.err, 1e-15));
    }
}

TEST(AdaptiveQuad, AgreesWithTanhSinh) {
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [](double x) { return std::pow(x, -0.4) * std::log1p(x); };
    const double ref = ts.integrate(f, 0.0, 2.0);
    EXPECT_NEAR(adaptive_quad(f, 0.0, 2.0, {1e-12, 0.0, 40}, {0.6, 0.0}).value, ref, 1e-10 * std::abs(ref));
}

TEST(Special, AgainstBoost) {
    for (double a : {0.3, 0.5, 1.7}) {
        for (double b : {0.4, 1.0, 2.5}) EXPECT_NEAR(beta_fn(a, b), boost::math::beta(a, b), 1e-12 * boost::math::beta(a, b));
    }
    for (double s : {1.5, 2.0, 3.3, 6.0}) EXPECT_NEAR(zeta(s), boost::math::zeta(s), 1e-12 * boost::math::zeta(s));
    EXPECT_NEAR(zeta(2.0), M_PI * M_PI / 6.0, 1e-12);
    EXPECT_NEAR(euler_gamma(), 0.57721566490153286, 1e-15);
    EXPECT_NEAR(harmonic(4), 25.0 / 12.0, 1e-15);
    EXPECT_NEAR(gamma_fn(0.5), std::sqrt(M_PI), 1e-14);
}

// Closed form of 2 int_0^h (h-s)(1+s)^e ds.
static double c1_closed(double e, double h) {
    if (e == -1.0) return 2.0 * ((h + 1.0) * std::log1p(h) - h);
    if (e == -2.0) return 2.0 * ((h + 1.0) * (1.0 - 1.0 / (1.0 + h)) - std::log1p(h));
    return 2.0 * ((h + 1.0) * (std::pow(1.0 + h, e + 1.0) - 1.0) / (e + 1.0) -
                  (std::pow(1.0 + h, e + 2.0) - 1.0) / (e + 2.0));
}

TEST(CheckC1, ReductionMatchesClosedForm) {
    for (double e : {-2.0, -1.0, -0.5, -1.5}) {
        for (double h : {10.0, 1e3, 1e4}) {
            const double ref = c1_closed(e, h);
            EXPECT_NEAR(c1_integral(e, 1, h), ref, 1e-9 * ref) << "e=" << e << " h=" << h;
        }
    }
}

TEST(CheckC1, ReductionMatchesDoubleIntegral) {
    const double h = 5.0, alpha = -0.7;
    auto inner = [&](double s) {
        auto f = [&](double t) { return std::pow(1.0 + std::abs(s - t), alpha * 2); };
        return adaptive_quad(f, 0.0, s, {1e-12, 0.0, 40}).value + adaptive_quad(f, s, h, {1e-12, 0.0, 40}).value;
    };
    const double direct = adaptive_quad(inner, 0.0, h, {1e-10, 0.0, 40}).value;
    EXPECT_NEAR(c1_integral(alpha, 2, h), direct, 1e-8 * direct);
}

TEST(CheckC1, IntegrableCase) { EXPECT_NEAR(check_C1(-2.0, 1, 1e4), 1.0, 0.02); }
TEST(CheckC1, PowerCase) { EXPECT_NEAR(check_C1(-0.5, 1, 1e4), 1.0, 0.02); }
TEST(CheckC1, LogCase) { EXPECT_NEAR(check_C1(-1.0, 1, 1e5), 1.0, 0.05); }

TEST(CheckC1, LogCaseMatchesExactRatio) {
    for (double h : {1e3, 1e5, 1e8}) {
        const double exact = c1_closed(-1.0, h) / (2.0 * h * std::log(h));
        EXPECT_NEAR(check_C1(-1.0, 1, h), exact, 1e-9);
    }
}

TEST(CheckC1, LogCaseConvergesSlowly) {
    double prev = check_C1(-1.0, 1, 1e3);
    for (double h : {1e5, 1e7, 1e9}) {
        const double r = check_C1(-1.0, 1, h);
        EXPECT_GT(r, prev);
        EXPECT_LT(r, 1.0);
        prev = r;
    }
}

TEST(CheckC2, HarmonicIdentity) {
    const long long N = 1000000;
    EXPECT_NEAR(c2_sum(-1.0, N), harmonic(N - 1) - 1.0, 1e-12);
}

TEST(CheckC2, HarmonicIdentityWithBoundaryTerm) {
    for (long long N : {10LL, 1000LL, 1000000LL}) {
        const double n = static_cast<double>(N);
        EXPECT_NEAR(c2_sum(-1.0, N), harmonic(N - 1) - 1.0 + 1.0 / n, 1e-12 * harmonic(N));
    }
}

TEST(CheckC2, ZetaCase) { EXPECT_NEAR(check_C2(-2.0, 100000), 1.0, 0.01); }
TEST(CheckC2, LogCase) { EXPECT_NEAR(check_C2(-1.0, 1000000), 1.0, 0.01); }
TEST(CheckC2, IntegrableCase) { EXPECT_NEAR(check_C2(-0.5, 1000000), 1.0, 0.005); }

TEST(CheckC2, DirectSumOracle) {
    const long long N = 20000;
    for (double alpha : {-2.0, -0.5, -1.3}) {
        long double s = 0.0L;
        for (long long k = N - 1; k >= 1; --k) {
            const long double x = static_cast<long double>(k) / N;
            s += (1.0L - x) * std::pow(x, static_cast<long double>(alpha)) / N;
        }
        EXPECT_NEAR(c2_sum(alpha, N), static_cast<double>(s), 1e-13 * static_cast<double>(s));
    }
}

TEST(CheckC3, StatementExponent) {
    const double a = -0.3, b = -0.3, g = -0.5;
    EXPECT_NEAR(check_C3(a, b, g, 2, 200.0), a + b + g + 2.0, 0.1);
}

TEST(CheckC3, RankOneExponent) {
    const double a = -0.3, b = -0.3;
    EXPECT_NEAR(check_C3(a, b, -0.5, 1, 200.0), a + b + 2.0, 0.05);
}

// m = 1: the integral is exactly h^{a+b+3} times a constant, by scaling.
TEST(CheckC3, RankOneScalingIdentity) {
    const double a = -0.3, b = -0.2;
    EXPECT_NEAR(check_C3(a, b, 0.0, 1, 50.0), a + b + 3.0, 1e-6);
    const double i1 = c3_integral(a, b, 0.0, 1, 1.0);
    const double i7 = c3_integral(a, b, 0.0, 1, 7.0);
    EXPECT_NEAR(i7 / i1, std::pow(7.0, a + b + 3.0), 1e-7 * i7 / i1);
}

// m = 1 closed form: sum of the two orderings; int over x<y of x^a y^b (h-y), and symmetric.
TEST(CheckC3, RankOneClosedForm) {
    const double a = -0.3, b = -0.2, h = 2.0;
    // int_0^h int_0^y x^a y^b (h-y) dx dy = h^{a+b+3} / ((a+1)(a+b+2)(a+b+3))
    const double p = std::pow(h, a + b + 3.0) / ((a + b + 2.0) * (a + b + 3.0));
    const double ref = p / (a + 1.0) + p / (b + 1.0);
    EXPECT_NEAR(c3_integral(a, b, 0.0, 1, h), ref, 1e-8 * ref);
}

TEST(CheckC3, DoublingConsistentWithFit) {
    const double a = -0.3, b = -0.3, g = -0.5, h = 200.0;
    const double fit = check_C3(a, b, g, 2, h);
    const double ratio = c3_integral(a, b, g, 2, h) / c3_integral(a, b, g, 2, h / 2.0);
    EXPECT_NEAR(std::log2(ratio), fit, 0.05);
}

TEST(CheckC3, ProofExponent) {
    const double a = -0.3, b = -0.3, g = -0.5;
    EXPECT_NEAR(check_C3(a, b, g, 2, 200.0), a + b + g + 3.0, 0.1);
}

TEST(CheckD, D1Identity) {
    const auto p = check_D(DLemma::D1, 0.8, 0.7, 0.2);
    const double rhs = boost::math::beta(0.3, 0.4) * std::pow(0.5, -0.4);
    EXPECT_NEAR(p.rhs, rhs, 1e-12 * rhs);
    EXPECT_NEAR(p.lhs, rhs, 1e-6 * rhs);
}

TEST(CheckD, D1TanhSinhDualRoute) {
    boost::math::quadrature::exp_sinh<double> es;
    const double a = 0.8 - 1.5, d = 0.5;
    const double ref = es.integrate([&](double s) { return std::pow(s, a) * std::pow(s + d, a); }, 0.0,
                                    std::numeric_limits<double>::infinity());
    EXPECT_NEAR(check_D(DLemma::D1, 0.8, 0.7, 0.2).lhs, ref, 1e-8 * ref);
}

TEST(CheckD, D4Identity) {
    const auto p = check_D(DLemma::D4, 0.8, 0.6, 0.1);
    EXPECT_NEAR(p.lhs, p.rhs, 1e-6 * p.rhs);
}

TEST(CheckD, D4TanhSinhDualRoute) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double H = 0.8, u = 0.6, v = 0.1;
    // xc is the signed distance to the nearer endpoint: negative near v, positive near u.
    auto f = [&](double s, double xc) {
        const double dv = xc < 0.0 ? -xc : s - v;
        const double du = xc > 0.0 ? xc : u - s;
        return std::pow(du, H - 1.5) * std::pow(dv, 2 * H - 2);
    };
    const double ref = ts.integrate(f, v, u);
    EXPECT_NEAR(check_D(DLemma::D4, H, u, v).lhs, ref, 1e-8 * ref);
}

TEST(CheckD, D2StrictBound) {
    const auto p = check_D(DLemma::D2, 0.8, 0.9, 0.1);
    EXPECT_LT(p.lhs, p.rhs);
    EXPECT_GT(p.lhs, 0.0);
}

TEST(CheckD, D3StrictBoundBothBranches) {
    for (auto [u, v] : {std::pair{0.7, 0.2}, std::pair{0.2, 0.7}}) {
        const auto p = check_D(DLemma::D3, 0.8, u, v);
        EXPECT_LT(p.lhs, p.rhs);
        EXPECT_GT(p.lhs, 0.0);
    }
}

TEST(CheckD, D3DomainEnforced) { EXPECT_THROW((void)check_D(DLemma::D3, 0.9, 0.5, 0.2), DomainError); }

TEST(CheckD, D2GridProperty) {
    for (double H : {0.6, 0.75, 0.95})
        for (double u : {0.05, 0.5, 0.95})
            for (double v : {0.1, 0.6}) {
                if (u == v) continue;
                const auto p = check_D(DLemma::D2, H, u, v);
                EXPECT_LT(p.lhs, p.rhs) << H << " " << u << " " << v;
            }
}

TEST(CheckE1, RatioAtSmallEps) {
    const std::vector<double> eps{1e-4};
    EXPECT_NEAR(check_E1(0.85, 0.5, eps)[0], 1.0, 0.05);
}

TEST(CheckE1, MonotoneApproach) {
    const std::vector<double> eps{1e-2, 1e-3, 1e-4};
    const auto r = check_E1(0.85, 0.5, eps);
    for (std::size_t i = 1; i < r.size(); ++i) EXPECT_LT(std::abs(r[i] - 1.0), std::abs(r[i - 1] - 1.0));
}

TEST(CheckE1, RemainderBounded) {
    const std::vector<double> eps{1e-2, 1e-3, 1e-4};
    for (double v : check_E1_remainder(0.85, 0.5, eps)) {
        EXPECT_GT(v, 0.0);
        EXPECT_LE(v, 10.0);
    }
}

TEST(CheckE1, Deterministic) {
    const std::vector<double> eps{1e-3};
    EXPECT_EQ(check_E1(0.85, 0.5, eps)[0], check_E1(0.85, 0.5, eps)[0]);
    EXPECT_EQ(check_C3(-0.3, -0.3, -0.5, 2, 50.0), check_C3(-0.3, -0.3, -0.5, 2, 50.0));
}

TEST(Parallel, CoversEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(Parallel, RethrowsFirstError) {
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) { if (i == 5) throw DomainError("x"); }), DomainError);
}
