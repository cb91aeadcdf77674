#include "homog/numerics/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "homog/error.hpp"

namespace homog::numerics {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

struct Panel {
    double a, b, value, err;
    int depth;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel gk21(const Integrand& f, double a, double b, int depth) {
    const auto& xk = Kronrod::abscissa();
    const auto& wk = Kronrod::weights();
    const auto& wg = Gauss::weights();
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fc = f(c);
    double k = fc * wk[0], g = 0.0;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double s = f(c + h * xk[i]) + f(c - h * xk[i]);
        k += s * wk[i];
        if (i & 1u) g += s * wg[i / 2];
    }
    k *= h;
    g *= h;
    double err = std::abs(k - g);
    if (!std::isfinite(k)) err = std::numeric_limits<double>::infinity();
    return {a, b, k, err, depth};
}

QuadAttempt run_finite(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
    std::priority_queue<Panel> heap;
    Panel root = gk21(f, a, b, 0);
    double total = root.value, err = root.err;
    heap.push(root);
    std::vector<Panel> frozen;
    // Frozen panels hit max_depth; they still contribute their error.
    double frozen_err = 0.0;
    const int max_panels = 20000;
    int panels = 1;
    while (!heap.empty()) {
        const double target = std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
        if (err <= target) break;
        Panel p = heap.top();
        heap.pop();
        if (p.depth >= spec.max_depth || panels >= max_panels) {
            frozen.push_back(p);
            frozen_err += p.err;
            if (heap.empty()) break;
            continue;
        }
        const double m = 0.5 * (p.a + p.b);
        Panel l = gk21(f, p.a, m, p.depth + 1), r = gk21(f, m, p.b, p.depth + 1);
        total += l.value + r.value - p.value;
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        panels += 1;
    }
    // Re-sum so the value does not carry incremental rounding drift.
    double v = 0.0, e = 0.0;
    std::vector<Panel> all = std::move(frozen);
    while (!heap.empty()) {
        all.push_back(heap.top());
        heap.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const auto& p : all) {
        v += p.value;
        e += p.err;
    }
    const double target = std::max(spec.rel_tol * std::abs(v), spec.abs_tol);
    return {{v, e}, e <= target && std::isfinite(v)};
}

}  // namespace

QuadAttempt try_adaptive_quad(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                              const EndpointHint& hint) {
    require(spec.rel_tol > 0.0 && spec.abs_tol >= 0.0 && spec.max_depth >= 1,
            "QuadratureSpec: rel_tol > 0, abs_tol >= 0, max_depth >= 1");
    require(hint.left > -1.0 && hint.right > -1.0, "endpoint exponent hints must exceed -1");
    if (a == b) return {{0.0, 0.0}, true};
    require(a < b, "adaptive_quad: a < b");
    if (std::isinf(b)) {
        require(std::isfinite(a), "adaptive_quad: finite lower limit");
        QuadAttempt head{{0.0, 0.0}, true};
        double lo = a;
        if (hint.left != 0.0) {
            head = try_adaptive_quad(f, a, a + 1.0, spec, {hint.left, 0.0});
            lo = a + 1.0;
        }
        auto g = [&f, lo](double t) {
            const double u = 1.0 - t;
            return f(lo + t / u) / (u * u);
        };
        QuadAttempt tail = run_finite(g, 0.0, 1.0, spec);
        return {{head.result.value + tail.result.value, head.result.err + tail.result.err},
                head.ok && tail.ok};
    }
    if (hint.left != 0.0 && hint.right != 0.0) {
        const double m = 0.5 * (a + b);
        QuadAttempt l = try_adaptive_quad(f, a, m, spec, {hint.left, 0.0});
        QuadAttempt r = try_adaptive_quad(f, m, b, spec, {0.0, hint.right});
        return {{l.result.value + r.result.value, l.result.err + r.result.err}, l.ok && r.ok};
    }
    const double len = b - a;
    if (hint.left != 0.0) {
        // x = a + len u^beta turns (x-a)^nu dx into a bounded density.
        const double beta = 1.0 / (1.0 + hint.left);
        auto g = [&f, a, len, beta](double u) {
            return f(a + len * std::pow(u, beta)) * len * beta * std::pow(u, beta - 1.0);
        };
        return run_finite(g, 0.0, 1.0, spec);
    }
    if (hint.right != 0.0) {
        const double beta = 1.0 / (1.0 + hint.right);
        auto g = [&f, b, len, beta](double u) {
            return f(b - len * std::pow(u, beta)) * len * beta * std::pow(u, beta - 1.0);
        };
        return run_finite(g, 0.0, 1.0, spec);
    }
    return run_finite(f, a, b, spec);
}

QuadResult adaptive_quad(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                         const EndpointHint& hint) {
    QuadAttempt r = try_adaptive_quad(f, a, b, spec, hint);
    if (!r.ok)
        throw QuadratureError("adaptive_quad: tolerance not reached", r.result.value, r.result.err);
    return r.result;
}

QuadResult integrate_log_scale(const Integrand& f, double a, double b, const QuadratureSpec& spec,
                               double left_hint) {
    require(a >= 0.0 && a <= b, "integrate_log_scale: 0 <= a <= b");
    QuadResult out{0.0, 0.0};
    if (a < 1.0) {
        const double hi = std::min(b, 1.0);
        QuadResult r = adaptive_quad(f, a, hi, spec, {a == 0.0 ? left_hint : 0.0, 0.0});
        out.value += r.value;
        out.err += r.err;
    }
    if (b > 1.0) {
        const double lo = std::max(a, 1.0);
        auto g = [&f](double t) {
            const double x = std::exp(t);
            return f(x) * x;
        };
        QuadResult r = adaptive_quad(g, std::log(lo), std::log(b), spec);
        out.value += r.value;
        out.err += r.err;
    }
    return out;
}

const GaussRule& gauss_legendre(int n) {
    require(n >= 1 && n <= 512, "gauss_legendre: 1 <= n <= 512");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.x[i] = -x;
        rule.x[n - 1 - i] = x;
        rule.w[i] = w;
        rule.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.x[n / 2] = 0.0;
    return cache.emplace(n, std::move(rule)).first->second;
}

void composite_rule(double a, double b, std::span<const double> breaks,
                    std::span<const double> grade_at, const CompositeSpec& spec,
                    std::vector<double>& nodes, std::vector<double>& weights) {
    if (!(b > a)) return;
    const double L = b - a;
    std::vector<double> cuts{a, b};
    for (double x : breaks)
        if (x > a && x < b) cuts.push_back(x);
    // Geometric marks around every grading point, independent of the breaks.
    for (double g : grade_at) {
        if (g < a - L || g > b + L) continue;
        if (g > a && g < b) cuts.push_back(g);
        for (double w = L * spec.ratio; w > spec.min_width; w *= spec.ratio) {
            if (g - w > a && g - w < b) cuts.push_back(g - w);
            if (g + w > a && g + w < b) cuts.push_back(g + w);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    const double tiny = 1e-15 * std::max(1.0, L);
    std::size_t k = 0;
    for (std::size_t i = 1; i < cuts.size(); ++i)
        if (cuts[i] - cuts[k] > tiny) cuts[++k] = cuts[i];
    cuts.resize(k + 1);
    cuts.back() = b;

    const double log_r = std::log(1.0 / spec.ratio);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        int order = spec.order;
        if (spec.taper && !grade_at.empty()) {
            // Farthest point of the panel from its nearest grading point.
            double d = L;
            for (double g : grade_at) d = std::min(d, std::max(std::abs(lo - g), std::abs(hi - g)));
            const int level = d > spec.min_width ? static_cast<int>(std::log(d / spec.min_width) / log_r) : 0;
            order = std::max(spec.min_order, spec.order - std::max(0, spec.taper_levels - level));
        }
        const GaussRule& g = gauss_legendre(order);
        const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
        for (std::size_t q = 0; q < g.x.size(); ++q) {
            nodes.push_back(c + h * g.x[q]);
            weights.push_back(h * g.w[q]);
        }
    }
}

}  // namespace homog::numerics
