#pragma once

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops. Each entry has a scalar reference and, where the
// CPU allows, an AVX2+FMA variant picked once at startup. Variants agree to
// rounding (summation order differs), never bit-for-bit.
namespace homog::kernels {

enum class Isa { Scalar, Avx2 };

struct Table {
    Isa isa;
    // sum_{i<n-1} (x[(i+1)s] - x[is])^2 over n strided samples
    double (*sum_sq_diff)(const double* x, std::size_t n, std::size_t stride);
    double (*dot)(const double* a, const double* b, std::size_t n);
    // sum_i w[i] a[i] b[i]
    double (*dot3)(const double* w, const double* a, const double* b, std::size_t n);
    // out[i] = sum_q c[q] He_q(x[i])
    void (*hermite_series)(const double* c, std::size_t nc, const double* x, double* out,
                           std::size_t n);
    // out[i] = a[i] * b[i]
    void (*mul)(const double* a, const double* b, double* out, std::size_t n);
};

[[nodiscard]] const Table& scalar_table() noexcept;
// nullptr when the build or the CPU lacks AVX2+FMA.
[[nodiscard]] const Table* avx2_table() noexcept;

// Table in use. Chosen on first call; HOMOG_INFER_SIMD=scalar forces the reference.
[[nodiscard]] const Table& active() noexcept;
void select(Isa isa);
[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

inline double sum_sq_diff(std::span<const double> x, std::size_t stride = 1) {
    if (x.empty()) return 0.0;
    return active().sum_sq_diff(x.data(), (x.size() - 1) / stride + 1, stride);
}
inline double dot(std::span<const double> a, std::span<const double> b) {
    return active().dot(a.data(), b.data(), a.size() < b.size() ? a.size() : b.size());
}

}  // namespace homog::kernels
