#pragma once

#include <span>
#include <vector>

namespace homog::gauss {

// Probabilists' Hermite polynomial He_n.
[[nodiscard]] double hermite_eval(int n, double x);

// Finite Hermite expansion G = sum_q c_q He_q with c_0 = 0 and G != 0.
class HermiteCoeffs {
public:
    explicit HermiteCoeffs(std::vector<double> coeffs);
    // c_m He_m only.
    [[nodiscard]] static HermiteCoeffs single(int m, double c_m = 1.0);

    [[nodiscard]] const std::vector<double>& coeffs() const noexcept { return c_; }
    [[nodiscard]] double c(int q) const noexcept {
        return q >= 0 && q < static_cast<int>(c_.size()) ? c_[q] : 0.0;
    }
    [[nodiscard]] int rank() const noexcept { return rank_; }
    [[nodiscard]] int max_order() const noexcept { return static_cast<int>(c_.size()) - 1; }
    // sum_q c_q^2 q!
    [[nodiscard]] double norm2() const noexcept;
    [[nodiscard]] bool is_single_term() const noexcept;

private:
    std::vector<double> c_;
    int rank_;
};

[[nodiscard]] double eval_G(const HermiteCoeffs& g, double x);
// out[i] = G(x[i]); SIMD kernel.
void eval_G(const HermiteCoeffs& g, std::span<const double> x, std::span<double> out);

}  // namespace homog::gauss
