#include <chrono>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "homog/error.hpp"
#include "homog/expcli/config.hpp"
#include "homog/expcli/output.hpp"
#include "homog/expcli/runner.hpp"
#include "homog/expcli/verify.hpp"
#include "homog/fou/fou.hpp"
#include "homog/multiscale/model.hpp"
#include "homog/theory/theory.hpp"

namespace {

using namespace homog;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfig = 2;

// null when the constant is undefined for (H, m).
template <class F>
json guarded(F&& f) {
    try {
        return f();
    } catch (const Error&) {
        return nullptr;
    }
}

int cmd_run(const std::string& path, const expcli::Overrides& o) {
    expcli::ExperimentConfig cfg;
    try {
        cfg = expcli::load_config(path);
        expcli::apply(cfg, o);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    }
    const auto t0 = std::chrono::steady_clock::now();
    const expcli::SweepTable table = expcli::run_experiment(cfg);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        expcli::emit_outputs(table, cfg, wall);
    } catch (const IoError& e) {
        std::cerr << "output error: " << e.what() << "\n";
        return kFailed;
    }
    for (const auto& r : table.rows)
        if (r.status != "ok") std::cerr << "cell failed: " << r.status << "\n";
    std::cout << "wrote " << table.rows.size() << " rows to " << cfg.output_dir << "/results.csv\n";
    return table.all_ok() ? kOk : kFailed;
}

int cmd_verify(const std::string& filter, const std::string& inject) {
    const auto rep = expcli::verify_theory({filter, inject});
    std::cout << rep.to_json() << "\n";
    return rep.all_pass() ? kOk : kFailed;
}

int cmd_constants(double H, int m, double c) {
    json j;
    try {
        const auto model = multiscale::ModelSpec::make(H, 0.01, gauss::HermiteCoeffs::single(m, c));
        j["H"] = H;
        j["m"] = m;
        j["c_m"] = c;
        j["sigma2"] = fou::sigma2(H);
        j["kappa"] = guarded([&] { return json(fou::kappa(H)); });
        j["hstar"] = model.hstar;
        j["hprime"] = model.hprime;
        j["regime"] = multiscale::regime_name(model.regime);
        j["limit_C2"] = guarded([&] {
            return json(model.regime == multiscale::Regime::Critical ? theory::limit_C2_critical(model)
                                                                     : theory::limit_C2(model));
        });
        j["bias_rate_exponent"] = guarded([&] { return json(theory::bias_rate(model).exponent); });
        j["dstar"] = guarded([&] { return json(theory::dstar(H, m)); });
        j["c_H"] = guarded([&] { return json(theory::c_H_const(H, m, c)); });
        j["hermite_K"] = guarded([&] { return json(theory::hermite_K(H, m)); });
        j["lemma62_R"] = guarded([&] { return json(theory::lemma62_R(H, m)); });
        j["a_integral"] = guarded([&] { return json(theory::a_integral(H, m, m - 1)); });
        const auto ci = theory::critical_indices(H, m);
        j["r_I"] = ci.r_I ? json(*ci.r_I) : json(nullptr);
        j["r_S"] = ci.r_S ? json(*ci.r_S) : json(nullptr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diffusivity and Hurst estimation for multiscale fOU-driven systems"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "Run an experiment from a JSON config");
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates, threads;
    run->add_option("--config", config, "Experiment config (JSON)")->required();
    run->add_option("--out", out, "Output directory");
    run->add_option("--seed", seed, "Base seed");
    run->add_option("--replicates", replicates, "Replicate count");
    run->add_option("--threads", threads, "Worker threads (fallback HOMOG_INFER_THREADS)");

    auto* verify = app.add_subcommand("verify", "Run the appendix verification battery");
    std::string filter, inject;
    verify->add_option("--filter", filter, "Run checks whose name contains this string");
    verify->add_option("--inject", inject, "Perturb the target of the named check (self-test)");

    auto* constants = app.add_subcommand("constants", "Print theory constants as JSON");
    double H = 0.0, c = 1.0;
    int m = 1;
    constants->add_option("--H", H, "Hurst parameter")->required();
    constants->add_option("--m", m, "Hermite rank")->required();
    constants->add_option("--c", c, "Coefficient c_m of G = c_m He_m");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }
    try {
        if (*run) return cmd_run(config, {out, seed, replicates, threads});
        if (*verify) return cmd_verify(filter, inject);
        if (*constants) return cmd_constants(H, m, c);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return kFailed;
}
