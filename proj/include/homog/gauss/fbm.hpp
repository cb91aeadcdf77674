#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "homog/gauss/rng.hpp"
#include "homog/path_grid.hpp"

namespace homog::gauss {

// Autocovariance of fBm increments at lag k on step dt.
[[nodiscard]] double increment_cov(double H, double dt, long long k);

// Exact-in-law fractional Gaussian noise by circulant embedding.
// The embedding spectrum is computed once; increments() is thread-safe.
class FbmGenerator {
public:
    FbmGenerator(double H, std::size_t n_increments, double dt);
    ~FbmGenerator();
    FbmGenerator(FbmGenerator&&) noexcept;
    FbmGenerator& operator=(FbmGenerator&&) noexcept;

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t embedding_size() const noexcept { return m_; }
    [[nodiscard]] double hurst() const noexcept { return H_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }

    // out.size() == size(); consumes lane FbmSpectral of the seed.
    void increments(SeedSpec seed, std::span<double> out) const;

private:
    double H_;
    double dt_;
    std::size_t n_;
    std::size_t m_;
    std::vector<double> scale_;  // sqrt(lambda_j / M)
    struct Plan;
    std::unique_ptr<Plan> plan_;
};

// n samples, B_0 = 0.
[[nodiscard]] PathGrid fbm_path(double H, std::size_t n, double dt, SeedSpec seed);

}  // namespace homog::gauss
