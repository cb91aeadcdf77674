#include "homog/chaosvar/quad4.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "homog/error.hpp"
#include "homog/kernels/kernels.hpp"
#include "homog/numerics/quadrature.hpp"

namespace homog::chaosvar {

double Kernel::at(double x) const {
    double out = 0.0;
    eval(std::span<const double>(&x, 1), std::span<double>(&out, 1));
    return out;
}

CorrelationPower::CorrelationPower(std::shared_ptr<const fou::CovarianceMemo> memo, double mu,
                                   int power)
    : memo_(std::move(memo)), mu_(mu), power_(power) {
    require(memo_ != nullptr, "CorrelationPower: memo required");
    require(mu > 0.0 && power >= 0, "CorrelationPower: mu > 0, power >= 0");
}

CorrelationPower::CorrelationPower(std::function<double(double)> rho, double mu, int power)
    : rho_(std::move(rho)), mu_(mu), power_(power) {
    require(static_cast<bool>(rho_), "CorrelationPower: correlation required");
    require(mu > 0.0 && power >= 0, "CorrelationPower: mu > 0, power >= 0");
}

void CorrelationPower::eval(std::span<const double> x, std::span<double> out) const {
    const std::size_t n = std::min(x.size(), out.size());
    if (power_ == 0) {
        std::fill(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n), 1.0);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double s = mu_ * std::abs(x[i]);
        const double r = memo_ ? (*memo_)(s) : rho_(s);
        double p = r;
        for (int q = 1; q < power_; ++q) p *= r;
        out[i] = p;
    }
}

void PurePower::eval(std::span<const double> x, std::span<double> out) const {
    const std::size_t n = std::min(x.size(), out.size());
    for (std::size_t i = 0; i < n; ++i) out[i] = e_ == 0.0 ? 1.0 : std::pow(std::abs(x[i]), e_);
}

namespace {

constexpr numerics::CompositeSpec kGrading{8, 0.15, 1e-11, true, 3, 5};

struct Rule {
    std::vector<double> x;
    std::vector<double> w;
    void clear() {
        x.clear();
        w.clear();
    }
};

void build(double a, double b, std::span<const double> breaks, std::span<const double> grades, int order,
           Rule& r) {
    r.clear();
    numerics::CompositeSpec spec = kGrading;
    spec.order = order;
    numerics::composite_rule(a, b, breaks, grades, spec, r.x, r.w);
}

template <class Fn>
QuadValue converge(Fn&& at_order, const QuadOptions& opt, const char* what) {
    require(opt.order >= 2 && opt.max_order >= opt.order, "chaosvar quadrature: bad orders");
    double prev = at_order(opt.order);
    int order = opt.order;
    double change = 0.0;
    while (order + 4 <= opt.max_order) {
        order += 4;
        const double cur = at_order(order);
        change = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        if (std::abs(cur - prev) <= opt.rel_change * std::abs(cur) + opt.abs_floor)
            return {cur, change, order};
        prev = cur;
    }
    throw QuadratureError(std::string(what) + ": order increase did not settle", prev, change);
}

double weight_W(double x, double y, double z) {
    const double hi = std::min({1.0, 1.0 + x, 1.0 + z, 1.0 + z - y});
    const double lo = std::max({0.0, x, z, z - y});
    return hi > lo ? hi - lo : 0.0;
}

}  // namespace

QuadValue separable_integral(const Kernel& B, int k, const QuadOptions& opt) {
    require(k >= 0, "separable_integral: k >= 0");
    const double kk = static_cast<double>(k);
    std::vector<double> grades;
    if (B.singular_at_zero() && k <= 1) grades.push_back(-kk);
    const double breaks[] = {0.0};
    auto at = [&](int order) {
        Rule r;
        build(-1.0, 1.0, breaks, grades, order, r);
        std::vector<double> arg(r.x.size()), val(r.x.size());
        for (std::size_t i = 0; i < r.x.size(); ++i) {
            arg[i] = r.x[i] + kk;
            r.w[i] *= 1.0 - std::abs(r.x[i]);
        }
        B.eval(arg, val);
        return kernels::dot(r.w, val);
    };
    return converge(at, opt, "separable_integral");
}

QuadValue reduced_integral(const Kernel& A, const Kernel& B, int k, const QuadOptions& opt) {
    require(k >= 0, "reduced_integral: k >= 0");
    const double kk = static_cast<double>(k);
    const bool a_sing = A.singular_at_zero();
    const bool b_sing = B.singular_at_zero() && k <= 1;
    const kernels::Table& kt = kernels::active();

    auto at = [&](int order) {
        Rule rx, ry, rz;
        std::vector<double> ax, ay, ww, b1, b2, arg1, arg2;
        std::vector<double> gx, gy, gz;
        if (a_sing) gx.push_back(0.0);
        const double bx[] = {-0.5, 0.0, 0.5};
        build(-1.0, 1.0, bx, gx, order, rx);
        ax.resize(rx.x.size());
        A.eval(rx.x, ax);

        double total = 0.0;
        for (std::size_t i = 0; i < rx.x.size(); ++i) {
            const double x = rx.x[i];
            gy.clear();
            if (a_sing) gy.push_back(0.0);
            if (b_sing) gy.push_back(-x);
            const double by[] = {0.0, x, -x, 1.0 - x, -1.0 - x};
            build(-1.0, 1.0, by, gy, order, ry);
            ay.resize(ry.x.size());
            A.eval(ry.x, ay);

            double fx = 0.0;
            for (std::size_t j = 0; j < ry.x.size(); ++j) {
                const double y = ry.x[j];
                const double lo = std::max({-1.0, y - 1.0, x - 1.0, x + y - 1.0});
                const double hi = std::min({1.0, 1.0 + y, 1.0 + x, 1.0 + x + y});
                if (!(hi > lo)) continue;
                gz.clear();
                if (b_sing) {
                    gz.push_back(-kk);
                    gz.push_back(x + y - kk);
                }
                const double bz[] = {0.0, x, y, x + y};
                build(lo, hi, bz, gz, order, rz);
                const std::size_t nz = rz.x.size();
                ww.resize(nz);
                arg1.resize(nz);
                arg2.resize(nz);
                b1.resize(nz);
                b2.resize(nz);
                for (std::size_t l = 0; l < nz; ++l) {
                    const double z = rz.x[l];
                    ww[l] = rz.w[l] * weight_W(x, y, z);
                    arg1[l] = z + kk;
                    arg2[l] = z - x - y + kk;
                }
                B.eval(arg1, b1);
                B.eval(arg2, b2);
                fx += ry.w[j] * ay[j] * kt.dot3(ww.data(), b1.data(), b2.data(), nz);
            }
            total += rx.w[i] * ax[i] * fx;
        }
        return total;
    };
    return converge(at, opt, "reduced_integral");
}

}  // namespace homog::chaosvar
