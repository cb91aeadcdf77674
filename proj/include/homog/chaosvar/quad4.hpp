#pragma once

#include <functional>
#include <memory>
#include <span>

#include "homog/fou/fou.hpp"

namespace homog::chaosvar {

// Even function of a lag measured in units of delta. Batch evaluation.
class Kernel {
public:
    virtual ~Kernel() = default;
    virtual void eval(std::span<const double> x, std::span<double> out) const = 0;
    // True when the kernel needs grading toward lag 0.
    [[nodiscard]] virtual bool singular_at_zero() const noexcept { return true; }
    [[nodiscard]] double at(double x) const;
};

// rho(mu |x|)^power through a memo or an injected correlation.
class CorrelationPower final : public Kernel {
public:
    CorrelationPower(std::shared_ptr<const fou::CovarianceMemo> memo, double mu, int power);
    CorrelationPower(std::function<double(double)> rho, double mu, int power);
    void eval(std::span<const double> x, std::span<double> out) const override;
    [[nodiscard]] bool singular_at_zero() const noexcept override { return power_ > 0; }

private:
    std::shared_ptr<const fou::CovarianceMemo> memo_;
    std::function<double(double)> rho_;
    double mu_;
    int power_;
};

// |x|^e.
class PurePower final : public Kernel {
public:
    explicit PurePower(double e) : e_(e) {}
    void eval(std::span<const double> x, std::span<double> out) const override;
    [[nodiscard]] bool singular_at_zero() const noexcept override { return e_ != 0.0; }

private:
    double e_;
};

struct QuadOptions {
    int order = 8;              // Gauss-Legendre points per panel on the first pass
    int max_order = 28;
    double rel_change = 1e-5;   // accepted change between consecutive orders
    double abs_floor = 0.0;
};

struct QuadValue {
    double value;
    double rel_change;  // last order-increase change, relative
    int order;
};

// int_{-1}^{1} (1 - |w|) B(w + k) dw
[[nodiscard]] QuadValue separable_integral(const Kernel& B, int k, const QuadOptions& opt = {});

// int_{[0,1]^4} A(u-v) A(l-s) B(u-s+k) B(v-l+k) du dv dl ds over the
// three differences x = u-v, y = l-s, z = u-s with the exact length of the
// remaining u-interval as weight.
[[nodiscard]] QuadValue reduced_integral(const Kernel& A, const Kernel& B, int k,
                                         const QuadOptions& opt = {});

}  // namespace homog::chaosvar
