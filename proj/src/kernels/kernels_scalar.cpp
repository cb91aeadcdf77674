#include "detail.hpp"

namespace homog::kernels::detail {
namespace {

double sum_sq_diff(const double* x, std::size_t n, std::size_t stride) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = x[(i + 1) * stride] - x[i * stride];
        acc += d * d;
    }
    return acc;
}

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double dot3(const double* w, const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * a[i] * b[i];
    return acc;
}

void hermite_series(const double* c, std::size_t nc, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        double hm1 = 1.0, h = xi;
        double acc = nc > 0 ? c[0] : 0.0;
        if (nc > 1) acc += c[1] * xi;
        for (std::size_t q = 1; q + 1 < nc; ++q) {
            const double hp1 = xi * h - static_cast<double>(q) * hm1;
            hm1 = h;
            h = hp1;
            acc += c[q + 1] * h;
        }
        out[i] = acc;
    }
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

}  // namespace

const Table scalar{Isa::Scalar, sum_sq_diff, dot, dot3, hermite_series, mul};

}  // namespace homog::kernels::detail
