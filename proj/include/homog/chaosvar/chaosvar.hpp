#pragma once

#include <functional>
#include <vector>

#include "homog/multiscale/model.hpp"

namespace homog::chaosvar {

struct ChaosOptions {
    // Replaces the fOU covariance when set; rho(s) for s >= 0.
    std::function<double(double)> rho;
    double rel_change = 1e-5;
    bool far_field = true;
    // Far field needs both k * delta / eps above far_lag and k >= far_k.
    double far_lag = 1e3;
    int far_k = 16;
    int threads = 0;  // 0: numerics::default_threads()
};

// c_m m! / ((m - r)! sqrt(r!))
[[nodiscard]] double chaos_weight(double c_m, int m, int r);

// N delta^4 int_{[0,1]^4} rho(mu(u-v))^r rho(mu(l-s))^r rho(mu(u-s))^{m-r} rho(mu(v-l))^{m-r}, mu = delta/eps.
[[nodiscard]] double e_diag(double H, int m, int r, double eps, double delta, int N,
                            const ChaosOptions& opt = {});
// sum_{k=1}^{N-1} 2 (N-k) delta^4 I_k with the (m-r)-power factors shifted by k.
[[nodiscard]] double e_off(double H, int m, int r, double eps, double delta, int N,
                           const ChaosOptions& opt = {});

struct ChaosTerm {
    int r;
    int order;       // 2m - 2r
    double weight;   // chaos_weight squared
    double e_diag;
    double e_off;
    bool exact;      // r == m - 1
    bool sign_anomaly;  // a raw value fell below -1e-6 before clipping
};

struct VariancePrediction {
    double value;
    bool exact;  // m == 1
    std::vector<ChaosTerm> terms;
};

// sum_r weight^4 (2m-2r)! N^{2(2H'-1)} alpha^4 (e_diag + e_off); G = c_m He_m only.
[[nodiscard]] VariancePrediction variance_prediction(const multiscale::ModelSpec& model, double delta,
                                                     int N, const ChaosOptions& opt = {});

}  // namespace homog::chaosvar
