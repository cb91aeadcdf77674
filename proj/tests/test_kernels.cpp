#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "homog/gauss/hermite.hpp"
#include "homog/gauss/rng.hpp"
#include "homog/kernels/kernels.hpp"

using namespace homog;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed, double lo = -2.0, double hi = 2.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(Philox, KnownAnswerZero) {
    const auto out = gauss::philox4x32({0, 0, 0, 0}, {0, 0});
    EXPECT_EQ(out[0], 0x6627e8d5u);
    EXPECT_EQ(out[1], 0xe169c58du);
    EXPECT_EQ(out[2], 0xbc57ac4cu);
    EXPECT_EQ(out[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
    const auto out = gauss::philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
    EXPECT_EQ(out[0], 0x408f276du);
    EXPECT_EQ(out[1], 0x41c83b0eu);
    EXPECT_EQ(out[2], 0xa20bc7c6u);
    EXPECT_EQ(out[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
    const auto out = gauss::philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u});
    EXPECT_EQ(out[0], 0xd16cfe09u);
    EXPECT_EQ(out[1], 0x94fdccebu);
    EXPECT_EQ(out[2], 0x5001e420u);
    EXPECT_EQ(out[3], 0x24126ea1u);
}

TEST(GaussianStream, AddressableAndDeterministic) {
    const gauss::GaussianStream a({42, 7}), b({42, 7}), c({42, 8});
    std::vector<double> x(101), y(50);
    a.fill(x);
    b.fill(y, 51);
    for (std::size_t i = 0; i < y.size(); ++i) EXPECT_EQ(x[51 + i], y[i]);
    EXPECT_EQ(a.at(17), x[17]);
    EXPECT_NE(a.at(0), c.at(0));
}

TEST(GaussianStream, LanesDiffer) {
    const gauss::GaussianStream a({1, 0}, gauss::Lane::FbmSpectral), b({1, 0}, gauss::Lane::InitialState);
    EXPECT_NE(a.at(0), b.at(0));
}

TEST(GaussianStream, Moments) {
    const gauss::GaussianStream s({2024, 3});
    const int n = 200000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = s.at(i);
        m1 += x;
        m2 += x * x;
        m4 += x * x * x * x;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    EXPECT_LT(std::abs(m1), 4.0 / std::sqrt(n));
    EXPECT_LT(std::abs(m2 - 1.0), 4.0 * std::sqrt(2.0 / n));
    EXPECT_LT(std::abs(m4 - 3.0), 4.0 * std::sqrt(96.0 / n));
}

TEST(GaussianStream, UniformRange) {
    const gauss::GaussianStream s({5, 5});
    for (int i = 0; i < 1000; ++i) {
        const double u = s.uniform(i);
        EXPECT_GT(u, 0.0);
        EXPECT_LT(u, 1.0);
    }
}

class SimdEquivalence : public ::testing::Test {
protected:
    void SetUp() override {
        if (kernels::avx2_table() == nullptr) GTEST_SKIP() << "no AVX2 on this CPU";
    }
    const kernels::Table& s = kernels::scalar_table();
    const kernels::Table& v = *kernels::avx2_table();
};

TEST_F(SimdEquivalence, SumSqDiff) {
    for (std::size_t n : {2u, 3u, 7u, 64u, 1001u, 65537u})
        for (std::size_t stride : {1u, 2u, 5u}) {
            const auto x = random_vec(n * stride, static_cast<unsigned>(n + stride));
            const std::size_t m = (x.size() - 1) / stride + 1;
            EXPECT_LE(rel(v.sum_sq_diff(x.data(), m, stride), s.sum_sq_diff(x.data(), m, stride)), 1e-12);
        }
}

TEST_F(SimdEquivalence, DotAndDot3) {
    for (std::size_t n : {0u, 1u, 5u, 16u, 333u, 10000u}) {
        const auto a = random_vec(n, 1), b = random_vec(n, 2), w = random_vec(n, 3, 0.0, 1.0);
        const double sd = s.dot(a.data(), b.data(), n), vd = v.dot(a.data(), b.data(), n);
        const double s3 = s.dot3(w.data(), a.data(), b.data(), n), v3 = v.dot3(w.data(), a.data(), b.data(), n);
        double scale = 0.0, scale3 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            scale += std::abs(a[i] * b[i]);
            scale3 += std::abs(w[i] * a[i] * b[i]);
        }
        EXPECT_LE(std::abs(sd - vd), 1e-14 * (scale + 1.0));
        EXPECT_LE(std::abs(s3 - v3), 1e-14 * (scale3 + 1.0));
    }
}

TEST_F(SimdEquivalence, HermiteSeries) {
    const std::vector<double> c{0.0, 0.3, -1.2, 0.0, 0.7, 0.05};
    for (std::size_t n : {1u, 4u, 9u, 1000u}) {
        const auto x = random_vec(n, 11, -4.0, 4.0);
        std::vector<double> a(n), b(n);
        s.hermite_series(c.data(), c.size(), x.data(), a.data(), n);
        v.hermite_series(c.data(), c.size(), x.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_LE(std::abs(a[i] - b[i]), 1e-12 * (1.0 + std::abs(a[i])));
    }
}

TEST_F(SimdEquivalence, Mul) {
    for (std::size_t n : {1u, 3u, 8u, 1003u}) {
        const auto a = random_vec(n, 21), b = random_vec(n, 22);
        std::vector<double> x(n), y(n);
        s.mul(a.data(), b.data(), x.data(), n);
        v.mul(a.data(), b.data(), y.data(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(x[i], y[i]);
    }
}

TEST(Kernels, SelectRoundTrip) {
    const kernels::Isa before = kernels::active().isa;
    kernels::select(kernels::Isa::Scalar);
    EXPECT_EQ(kernels::active().isa, kernels::Isa::Scalar);
    if (kernels::avx2_table() != nullptr) {
        kernels::select(kernels::Isa::Avx2);
        EXPECT_EQ(kernels::active().isa, kernels::Isa::Avx2);
    }
    kernels::select(before);
}

TEST(Kernels, SumSqDiffSmall) {
    const std::vector<double> x{0.0, 1.0, 0.0, 1.0};
    EXPECT_DOUBLE_EQ(kernels::sum_sq_diff(x), 3.0);
    EXPECT_DOUBLE_EQ(kernels::sum_sq_diff(std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.0}, 2), 0.0);
}
