#include "homog/expcli/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "homog/chaosvar/chaosvar.hpp"
#include "homog/error.hpp"
#include "homog/estimators/estimators.hpp"
#include "homog/multiscale/model.hpp"
#include "homog/multiscale/simulate.hpp"
#include "homog/numerics/parallel.hpp"
#include "homog/theory/theory.hpp"

namespace homog::expcli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Oracles = std::vector<std::pair<std::string, std::string>>;

struct Layout {
    std::vector<std::string> columns;
    Oracles oracles;
};

Layout layout(Experiment e) {
    switch (e) {
        case Experiment::BiasSweep:
            return {{"eps", "delta", "n_rep", "c_mean", "c_se", "h_mean", "h_se", "c2_oracle", "bias_abs",
                     "bias_rate_pred", "c_var", "bias_exact", "bias_exact_abs"},
                    {{"c2_oracle", "theory.limit_C2"},
                     {"bias_rate_pred", "theory.bias_rate"},
                     {"bias_exact", "theory.bias_exact"},
                     {"bias_exact_abs", "theory.bias_exact - theory.limit_C2"}}};
        case Experiment::VarianceSweep:
            return {{"eps", "delta", "n_rep", "c_mean", "c_se", "c_var", "c_var_se", "var_pred", "var_ratio",
                     "var_rate_pred"},
                    {{"var_pred", "chaosvar.variance_prediction"}, {"var_rate_pred", "theory.variance_rate"}}};
        case Experiment::NoScaleSeparation:
            return {{"eps", "delta", "n_rep", "h_mean", "h_se", "c_mean", "c_se", "c2_oracle", "bias_exact"},
                    {{"c2_oracle", "theory.limit_C2"}, {"bias_exact", "theory.bias_exact"}}};
        case Experiment::PluginConsistency:
            return {{"eps", "delta", "n_rep", "h_mean", "h_se", "hprime_true", "c_hat_mean", "c_hat_se",
                     "c2_oracle", "c_hat_ratio"},
                    {{"hprime_true", "multiscale.ModelSpec.hprime"}, {"c2_oracle", "theory.limit_C2"}}};
        case Experiment::RosenblattVariance:
            return {{"eps", "delta", "n_rep", "c_mean", "c_se", "scaled_var", "scaled_var_se", "cH2_oracle",
                     "scaled_var_ratio"},
                    {{"cH2_oracle", "theory.c_H_const"}}};
        case Experiment::DriftRobustness:
            return {{"eps", "delta", "n_rep", "c_mean", "c_se", "c_drift_mean", "c_drift_se", "c2_oracle",
                     "drift_rel_dev", "zero_drift_max_diff"},
                    {{"c2_oracle", "theory.limit_C2"}}};
        case Experiment::TheoryVerify:
            return {{"eps", "delta", "N", "c2_oracle", "bias_exact", "bias_exact_abs", "bias_rate_pred", "var_pred",
                     "var_rate_pred"},
                    {{"c2_oracle", "theory.limit_C2"},
                     {"bias_exact", "theory.bias_exact"},
                     {"bias_exact_abs", "theory.bias_exact - theory.limit_C2"},
                     {"bias_rate_pred", "theory.bias_rate"},
                     {"var_pred", "chaosvar.variance_prediction"},
                     {"var_rate_pred", "theory.variance_rate"}}};
    }
    return {};
}

// NaN when the oracle does not apply to the model.
template <class F>
double oracle(F&& f) {
    try {
        return f();
    } catch (const PreconditionError&) {
        return kNaN;
    } catch (const DomainError&) {
        return kNaN;
    }
}

double c2_oracle(const multiscale::ModelSpec& m) {
    return m.regime == multiscale::Regime::Critical ? theory::limit_C2_critical(m) : theory::limit_C2(m);
}

// Largest order over r of the variance rate, order only.
double var_rate_pred(const multiscale::ModelSpec& m, double eps, double delta) {
    double best = 0.0;
    for (int r = 0; r <= m.m() - 1; ++r) best = std::max(best, theory::variance_rate(m, r).order(eps, delta));
    return best;
}

struct Moments {
    double n = 0.0;
    double mean = kNaN;
    double var = kNaN;   // sample variance, n - 1
    double se = kNaN;    // sd / sqrt(n)
    double var_se = kNaN;
};

Moments moments(const std::vector<double>& x, const std::vector<char>& ok) {
    Moments m;
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (ok[i]) {
            s += x[i];
            m.n += 1.0;
        }
    if (m.n < 1.0) return m;
    m.mean = s / m.n;
    if (m.n < 2.0) return m;
    double s2 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (ok[i]) {
            const double d = (x[i] - m.mean) * (x[i] - m.mean);
            s2 += d;
            s4 += d * d;
        }
    m.var = s2 / (m.n - 1.0);
    m.se = std::sqrt(m.var / m.n);
    const double m2 = s2 / m.n, m4 = s4 / m.n;
    m.var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / m.n);
    return m;
}

struct Replicates {
    std::vector<double> c, h, c_hat, c_drift, zero_diff;
    std::vector<char> ok;
    std::size_t failures = 0;
    std::string first_error;
};

double cos_h(double x) { return std::cos(x); }
double cauchy_g(double y) { return 1.0 / (1.0 + y * y); }

Replicates simulate(const ExperimentConfig& cfg, const multiscale::ModelSpec& model,
                    const estimators::SamplingScheme& scheme) {
    const double dt = estimators::fine_step_for(scheme, model.eps() / cfg.dt_ratio);
    const multiscale::SlowSimulator sim(model, scheme.T, dt);
    const std::size_t n = static_cast<std::size_t>(cfg.replicates);
    const bool drift = cfg.experiment == Experiment::DriftRobustness;
    multiscale::DriftSpec spec{cos_h, cauchy_g, 1.0, 1.0};
    multiscale::DriftSpec zero{[](double) { return 0.0; }, cauchy_g, 0.0, 1.0};
    if (drift) spec.spot_check();

    Replicates r;
    r.c.assign(n, kNaN);
    r.h.assign(n, kNaN);
    r.c_hat.assign(n, kNaN);
    r.c_drift.assign(n, kNaN);
    r.zero_diff.assign(n, kNaN);
    r.ok.assign(n, 0);
    std::vector<std::string> err(n);
    const int threads = cfg.threads > 0 ? cfg.threads : numerics::default_threads();

    numerics::parallel_for(n, threads, [&](std::size_t i) {
        try {
            const gauss::SeedSpec seed{cfg.base_seed, static_cast<std::uint64_t>(i)};
            std::vector<double> y(sim.size()), x(sim.size());
            sim.sample_fast(seed, y);
            multiscale::integrate_slow(model, dt, y, x);
            PathGrid path(0.0, dt, x);
            r.c[i] = estimators::c_known(path, scheme, model.hprime);
            const auto est = estimators::plugin_estimate(path, scheme);
            r.h[i] = est.h_hat;
            r.c_hat[i] = est.c_hat;
            if (drift) {
                std::vector<double> xd(sim.size()), xz(sim.size());
                multiscale::integrate_random_ode(model, spec, dt, y, xd);
                multiscale::integrate_random_ode(model, zero, dt, y, xz);
                r.c_drift[i] = estimators::c_known(PathGrid(0.0, dt, std::move(xd)), scheme, model.hprime);
                const double cz = estimators::c_known(PathGrid(0.0, dt, std::move(xz)), scheme, model.hprime);
                r.zero_diff[i] = std::abs(cz - r.c[i]);
            }
            r.ok[i] = 1;
        } catch (const std::exception& e) {
            err[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        if (!r.ok[i]) {
            if (r.failures++ == 0) r.first_error = err[i];
        }
    return r;
}

std::string sanitize(std::string s) {
    for (char& ch : s)
        if (ch == ',' || ch == '\n' || ch == '\r' || ch == '"') ch = ';';
    return s;
}

struct Cell {
    double eps;
    estimators::SamplingScheme scheme;
};

std::vector<Cell> cells(const ExperimentConfig& cfg) {
    std::vector<Cell> out;
    for (double eps : cfg.eps) {
        switch (cfg.delta.kind) {
            case DeltaRuleKind::Power:
                out.push_back({eps, estimators::SamplingScheme::power(cfg.T, eps, cfg.delta.a)});
                break;
            case DeltaRuleKind::Log:
                out.push_back({eps, estimators::SamplingScheme::log_rule(cfg.T, eps, cfg.delta.a)});
                break;
            case DeltaRuleKind::Explicit:
                for (double d : cfg.delta.values)
                    out.push_back({eps, estimators::SamplingScheme::explicit_delta(cfg.T, d)});
                break;
        }
    }
    return out;
}

void fill_cell(const ExperimentConfig& cfg, const Cell& cell, const SweepTable& t, SweepRow& row) {
    const auto model = multiscale::ModelSpec::make(cfg.H, cell.eps, gauss::HermiteCoeffs(cfg.coefficients));
    const double eps = cell.eps, delta = cell.scheme.delta, T = cell.scheme.T;
    auto set = [&](const char* name, double v) { row.values[t.column(name)] = v; };
    set("eps", eps);
    set("delta", delta);

    if (cfg.experiment == Experiment::TheoryVerify) {
        set("N", cell.scheme.N);
        const double c2 = oracle([&] { return c2_oracle(model); });
        const double be = theory::bias_exact(model, delta, T);
        set("c2_oracle", c2);
        set("bias_exact", be);
        set("bias_exact_abs", std::abs(be - c2));
        set("bias_rate_pred", oracle([&] { return theory::bias_rate(model).order(eps, delta); }));
        set("var_pred", oracle([&] {
                return delta > eps ? chaosvar::variance_prediction(model, delta, cell.scheme.N).value : kNaN;
            }));
        set("var_rate_pred", oracle([&] { return var_rate_pred(model, eps, delta); }));
        return;
    }

    const Replicates r = simulate(cfg, model, cell.scheme);
    if (r.failures == static_cast<std::size_t>(cfg.replicates))
        throw Error("all replicates failed: " + r.first_error);
    if (r.failures > 0)
        row.status = "partial: " + std::to_string(r.failures) + " replicate failures: " + r.first_error;
    const Moments c = moments(r.c, r.ok);
    set("n_rep", c.n);

    switch (cfg.experiment) {
        case Experiment::BiasSweep: {
            const Moments h = moments(r.h, r.ok);
            const double c2 = oracle([&] { return c2_oracle(model); });
            set("c_mean", c.mean);
            set("c_se", c.se);
            set("h_mean", h.mean);
            set("h_se", h.se);
            set("c2_oracle", c2);
            set("bias_abs", std::abs(c.mean - c2));
            set("bias_rate_pred", oracle([&] { return theory::bias_rate(model).order(eps, delta); }));
            set("c_var", c.var);
            const double be = oracle([&] { return theory::bias_exact(model, delta, T); });
            set("bias_exact", be);
            set("bias_exact_abs", std::abs(be - c2));
            break;
        }
        case Experiment::VarianceSweep: {
            set("c_mean", c.mean);
            set("c_se", c.se);
            set("c_var", c.var);
            set("c_var_se", c.var_se);
            const double vp = oracle([&] {
                return delta > eps ? chaosvar::variance_prediction(model, delta, cell.scheme.N).value : kNaN;
            });
            set("var_pred", vp);
            set("var_ratio", c.var / vp);
            set("var_rate_pred", oracle([&] { return var_rate_pred(model, eps, delta); }));
            break;
        }
        case Experiment::NoScaleSeparation: {
            const Moments h = moments(r.h, r.ok);
            set("h_mean", h.mean);
            set("h_se", h.se);
            set("c_mean", c.mean);
            set("c_se", c.se);
            set("c2_oracle", oracle([&] { return c2_oracle(model); }));
            set("bias_exact", oracle([&] { return theory::bias_exact(model, delta, T); }));
            break;
        }
        case Experiment::PluginConsistency: {
            const Moments h = moments(r.h, r.ok);
            const Moments ch = moments(r.c_hat, r.ok);
            const double c2 = oracle([&] { return c2_oracle(model); });
            set("h_mean", h.mean);
            set("h_se", h.se);
            set("hprime_true", model.hprime);
            set("c_hat_mean", ch.mean);
            set("c_hat_se", ch.se);
            set("c2_oracle", c2);
            set("c_hat_ratio", ch.mean / c2);
            break;
        }
        case Experiment::RosenblattVariance: {
            const double s = std::pow(delta, 2.0 * (2.0 * cfg.H - 2.0));
            const double ch = oracle([&] {
                if (!model.g.is_single_term()) throw PreconditionError("single Hermite term required");
                return theory::c_H_const(cfg.H, model.m(), model.g.c(model.m()));
            });
            set("c_mean", c.mean);
            set("c_se", c.se);
            set("scaled_var", s * c.var);
            set("scaled_var_se", s * c.var_se);
            set("cH2_oracle", ch * ch);
            set("scaled_var_ratio", s * c.var / (ch * ch));
            break;
        }
        case Experiment::DriftRobustness: {
            const Moments d = moments(r.c_drift, r.ok);
            const double c2 = oracle([&] { return c2_oracle(model); });
            double zmax = 0.0;
            for (std::size_t i = 0; i < r.ok.size(); ++i)
                if (r.ok[i]) zmax = std::max(zmax, r.zero_diff[i]);
            set("c_mean", c.mean);
            set("c_se", c.se);
            set("c_drift_mean", d.mean);
            set("c_drift_se", d.se);
            set("c2_oracle", c2);
            set("drift_rel_dev", std::abs(d.mean - c2) / c2);
            set("zero_drift_max_diff", zmax);
            break;
        }
        case Experiment::TheoryVerify: break;
    }
}

}  // namespace

std::size_t SweepTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw PreconditionError(("SweepTable: no column " + name).c_str());
}

double SweepTable::at(std::size_t row, const std::string& name) const { return rows.at(row).values[column(name)]; }

bool SweepTable::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.status == "ok"; });
}

SweepTable run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    Layout l = layout(cfg.experiment);
    SweepTable t{cfg.experiment, std::move(l.columns), std::move(l.oracles), {}};
    for (const Cell& cell : cells(cfg)) {
        SweepRow row;
        row.values.assign(t.columns.size(), kNaN);
        try {
            fill_cell(cfg, cell, t, row);
        } catch (const std::exception& e) {
            row.values.assign(t.columns.size(), kNaN);
            row.values[t.column("eps")] = cell.eps;
            row.values[t.column("delta")] = cell.scheme.delta;
            row.status = e.what();
        }
        row.status = sanitize(row.status);
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace homog::expcli
