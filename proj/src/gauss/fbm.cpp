#include "homog/gauss/fbm.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "homog/error.hpp"

namespace homog::gauss {
namespace {

// FFTW planning is not thread-safe; execution with new arrays is.
std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}

struct FftwBuffer {
    fftw_complex* p = nullptr;
    std::size_t n = 0;
    ~FftwBuffer() { fftw_free(p); }
    fftw_complex* get(std::size_t want) {
        if (n < want) {
            fftw_free(p);
            p = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * want));
            if (p == nullptr) throw Error("fftw_malloc failed");
            n = want;
        }
        return p;
    }
};

}  // namespace

double increment_cov(double H, double dt, long long k) {
    require(dt > 0.0, "increment_cov: dt > 0");
    require(k >= 0, "increment_cov: k >= 0");
    const double h2 = 2.0 * H;
    const double kd = static_cast<double>(k);
    const double v = std::pow(kd + 1.0, h2) + std::pow(std::abs(kd - 1.0), h2) - 2.0 * std::pow(kd, h2);
    return 0.5 * std::pow(dt, h2) * v;
}

struct FbmGenerator::Plan {
    fftw_plan plan = nullptr;
    ~Plan() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (plan) fftw_destroy_plan(plan);
    }
};

FbmGenerator::FbmGenerator(double H, std::size_t n_increments, double dt)
    : H_(H), dt_(dt), n_(n_increments), m_(2), plan_(std::make_unique<Plan>()) {
    require(H > 0.0 && H < 1.0, "FbmGenerator: H in (0,1)");
    require(dt > 0.0, "FbmGenerator: dt > 0");
    require(n_increments >= 1, "FbmGenerator: at least one increment");
    while (m_ < 2 * (n_ - 1)) m_ *= 2;

    fftw_complex* in = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m_));
    fftw_complex* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * m_));
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan_->plan = fftw_plan_dft_1d(static_cast<int>(m_), in, out, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    const std::size_t half = m_ / 2;
    for (std::size_t j = 0; j <= half; ++j) {
        in[j][0] = increment_cov(H, dt, static_cast<long long>(j));
        in[j][1] = 0.0;
    }
    for (std::size_t j = half + 1; j < m_; ++j) {
        in[j][0] = in[m_ - j][0];
        in[j][1] = 0.0;
    }
    fftw_execute_dft(plan_->plan, in, out);
    double lmax = 0.0, lmin = 0.0;
    for (std::size_t j = 0; j < m_; ++j) {
        lmax = std::max(lmax, out[j][0]);
        lmin = std::min(lmin, out[j][0]);
    }
    if (lmin < -1e-8 * lmax) {
        fftw_free(in);
        fftw_free(out);
        throw EmbeddingError("circulant embedding has a negative eigenvalue beyond tolerance");
    }
    scale_.resize(m_);
    const double inv_m = 1.0 / static_cast<double>(m_);
    for (std::size_t j = 0; j < m_; ++j) scale_[j] = std::sqrt(std::max(out[j][0], 0.0) * inv_m);
    fftw_free(in);
    fftw_free(out);
}

FbmGenerator::~FbmGenerator() = default;
FbmGenerator::FbmGenerator(FbmGenerator&&) noexcept = default;
FbmGenerator& FbmGenerator::operator=(FbmGenerator&&) noexcept = default;

void FbmGenerator::increments(SeedSpec seed, std::span<double> out) const {
    require(out.size() == n_, "FbmGenerator::increments: output size mismatch");
    thread_local FftwBuffer bin, bout;
    fftw_complex* in = bin.get(m_);
    fftw_complex* res = bout.get(m_);
    const GaussianStream normals(seed, Lane::FbmSpectral);
    // Normals 2j and 2j+1 form one Box-Muller pair: real and imaginary parts.
    thread_local std::vector<double> z;
    z.resize(2 * m_);
    normals.fill(z);
    for (std::size_t j = 0; j < m_; ++j) {
        in[j][0] = scale_[j] * z[2 * j];
        in[j][1] = scale_[j] * z[2 * j + 1];
    }
    fftw_execute_dft(plan_->plan, in, res);
    for (std::size_t k = 0; k < n_; ++k) out[k] = res[k][0];
}

PathGrid fbm_path(double H, std::size_t n, double dt, SeedSpec seed) {
    require(n >= 2, "fbm_path: n >= 2");
    FbmGenerator gen(H, n - 1, dt);
    std::vector<double> inc(n - 1);
    gen.increments(seed, inc);
    std::vector<double> v(n);
    v[0] = 0.0;
    for (std::size_t k = 1; k < n; ++k) v[k] = v[k - 1] + inc[k - 1];
    return PathGrid(0.0, dt, std::move(v));
}

}  // namespace homog::gauss
