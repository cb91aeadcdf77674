#include "detail.hpp"

#if defined(__AVX2__) && defined(__FMA__)
#include <immintrin.h>

namespace homog::kernels::detail {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_sq_diff(const double* x, std::size_t n, std::size_t stride) {
    if (n < 2) return 0.0;
    const std::size_t m = n - 1;
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    if (stride == 1) {
        for (; i + 8 <= m; i += 8) {
            const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i));
            const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 5), _mm256_loadu_pd(x + i + 4));
            acc0 = _mm256_fmadd_pd(d0, d0, acc0);
            acc1 = _mm256_fmadd_pd(d1, d1, acc1);
        }
    } else {
        const std::size_t s = stride;
        for (; i + 4 <= m; i += 4) {
            const double* p = x + i * s;
            const __m256d a = _mm256_set_pd(p[3 * s], p[2 * s], p[s], p[0]);
            const __m256d b = _mm256_set_pd(p[4 * s], p[3 * s], p[2 * s], p[s]);
            const __m256d d = _mm256_sub_pd(b, a);
            acc0 = _mm256_fmadd_pd(d, d, acc0);
        }
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < m; ++i) {
        const double d = x[(i + 1) * stride] - x[i * stride];
        acc += d * d;
    }
    return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot3(const double* w, const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d p0 = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
        const __m256d p1 = _mm256_mul_pd(_mm256_loadu_pd(w + i + 4), _mm256_loadu_pd(a + i + 4));
        acc0 = _mm256_fmadd_pd(p0, _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(p1, _mm256_loadu_pd(b + i + 4), acc1);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

void hermite_series(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
    std::size_t i = 0;
    const __m256d c0 = _mm256_set1_pd(nc > 0 ? c[0] : 0.0);
    const __m256d c1 = _mm256_set1_pd(nc > 1 ? c[1] : 0.0);
    for (; i + 4 <= n; i += 4) {
        const __m256d xi = _mm256_loadu_pd(x + i);
        __m256d hm1 = _mm256_set1_pd(1.0), h = xi;
        __m256d acc = _mm256_fmadd_pd(c1, xi, c0);
        for (std::size_t q = 1; q + 1 < nc; ++q) {
            const __m256d hp1 = _mm256_fnmadd_pd(_mm256_set1_pd(static_cast<double>(q)), hm1,
                                                 _mm256_mul_pd(xi, h));
            hm1 = h;
            h = hp1;
            acc = _mm256_fmadd_pd(_mm256_set1_pd(c[q + 1]), h, acc);
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < n) scalar.hermite_series(c, nc, x + i, out + i, n - i);
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}

const Table table{Isa::Avx2, sum_sq_diff, dot, dot3, hermite_series, mul};

}  // namespace

const Table* avx2() noexcept { return &table; }

}  // namespace homog::kernels::detail

#else

namespace homog::kernels::detail {
const Table* avx2() noexcept { return nullptr; }
}  // namespace homog::kernels::detail

#endif
