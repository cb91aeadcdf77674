#include "homog/expcli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "homog/error.hpp"
#include "homog/estimators/estimators.hpp"

namespace homog::expcli {

using nlohmann::json;

namespace {

struct NameEntry {
    Experiment e;
    const char* name;
};
constexpr NameEntry kNames[] = {
    {Experiment::BiasSweep, "bias-sweep"},
    {Experiment::VarianceSweep, "variance-sweep"},
    {Experiment::NoScaleSeparation, "no-scale-separation"},
    {Experiment::PluginConsistency, "plugin-consistency"},
    {Experiment::RosenblattVariance, "rosenblatt-variance"},
    {Experiment::DriftRobustness, "drift-robustness"},
    {Experiment::TheoryVerify, "theory-verify"},
};

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) throw ConfigError(where + ": unknown key '" + it.key() + "'");
}

template <class T>
T get(const json& j, const char* key, const std::string& where) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(where + "." + key + ": " + e.what());
    }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    return get<T>(j, key, where);
}

std::vector<double> cell_deltas(const ExperimentConfig& c, double eps) {
    switch (c.delta.kind) {
        case DeltaRuleKind::Power: return {estimators::SamplingScheme::power(c.T, eps, c.delta.a).delta};
        case DeltaRuleKind::Log: return {estimators::SamplingScheme::log_rule(c.T, eps, c.delta.a).delta};
        case DeltaRuleKind::Explicit: {
            std::vector<double> out;
            for (double d : c.delta.values) out.push_back(estimators::SamplingScheme::explicit_delta(c.T, d).delta);
            return out;
        }
    }
    return {};
}

}  // namespace

const char* experiment_name(Experiment e) noexcept {
    for (const auto& n : kNames)
        if (n.e == e) return n.name;
    return "?";
}

Experiment parse_experiment(const std::string& name) {
    for (const auto& n : kNames)
        if (name == n.name) return n.e;
    throw ConfigError("experiment: unknown name '" + name + "'");
}

void validate(const ExperimentConfig& c) {
    if (!(c.H > 0.0 && c.H < 1.0)) throw ConfigError("model.H: must lie in (0, 1)");
    if (c.coefficients.empty() || c.coefficients[0] != 0.0)
        throw ConfigError("model.coefficients: c_0 must be 0");
    bool nonzero = false;
    for (double x : c.coefficients) nonzero = nonzero || x != 0.0;
    if (!nonzero) throw ConfigError("model.coefficients: G must not vanish");
    if (c.eps.empty()) throw ConfigError("model.eps: at least one value");
    for (std::size_t i = 0; i < c.eps.size(); ++i) {
        if (!(c.eps[i] > 0.0 && c.eps[i] < 1.0)) throw ConfigError("model.eps: values must lie in (0, 1)");
        if (i > 0 && !(c.eps[i] < c.eps[i - 1])) throw ConfigError("model.eps: values must be strictly decreasing");
    }
    if (!(c.T > 0.0)) throw ConfigError("scheme.T: must be positive");
    if (c.replicates < 1) throw ConfigError("replicates: must be >= 1");
    if (c.threads < 0) throw ConfigError("threads: must be >= 0");
    if (!(c.dt_ratio >= 20.0)) throw ConfigError("dt_ratio: must be >= 20 to resolve the fast scale");
    if (c.delta.kind == DeltaRuleKind::Explicit && c.delta.values.empty())
        throw ConfigError("scheme.delta.values: explicit rule needs values");
    if (c.delta.kind != DeltaRuleKind::Explicit && !(c.delta.a > 0.0))
        throw ConfigError("scheme.delta.a: must be positive");
    if (c.output_dir.empty()) throw ConfigError("output_dir: must not be empty");
    for (double eps : c.eps) {
        std::vector<double> ds;
        try {
            ds = cell_deltas(c, eps);
        } catch (const Error& e) {
            throw ConfigError(std::string("scheme.delta: ") + e.what());
        }
        if (c.experiment == Experiment::NoScaleSeparation) continue;
        for (double d : ds)
            if (!(d > eps)) {
                std::ostringstream os;
                os << "scheme.delta: delta/eps must exceed 1 (eps=" << eps << ", delta=" << d << ")";
                throw ConfigError(os.str());
            }
    }
}

ExperimentConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config: top level must be an object");
    reject_unknown(j, {"experiment", "model", "scheme", "replicates", "base_seed", "threads", "dt_ratio", "output_dir"},
                   "config");
    ExperimentConfig c;
    c.experiment = parse_experiment(get<std::string>(j, "experiment", "config"));

    if (!j.contains("model") || !j["model"].is_object()) throw ConfigError("model: required object");
    const json& m = j["model"];
    reject_unknown(m, {"H", "coefficients", "eps"}, "model");
    c.H = get<double>(m, "H", "model");
    c.coefficients = get_or<std::vector<double>>(m, "coefficients", c.coefficients, "model");
    c.eps = get<std::vector<double>>(m, "eps", "model");

    if (j.contains("scheme")) {
        const json& s = j["scheme"];
        if (!s.is_object()) throw ConfigError("scheme: must be an object");
        reject_unknown(s, {"T", "delta"}, "scheme");
        c.T = get_or<double>(s, "T", 1.0, "scheme");
        if (s.contains("delta")) {
            const json& d = s["delta"];
            if (!d.is_object()) throw ConfigError("scheme.delta: must be an object");
            reject_unknown(d, {"rule", "a", "values"}, "scheme.delta");
            const std::string rule = get<std::string>(d, "rule", "scheme.delta");
            if (rule == "power") c.delta.kind = DeltaRuleKind::Power;
            else if (rule == "log") c.delta.kind = DeltaRuleKind::Log;
            else if (rule == "explicit") c.delta.kind = DeltaRuleKind::Explicit;
            else throw ConfigError("scheme.delta.rule: one of power, log, explicit");
            c.delta.a = get_or<double>(d, "a", c.delta.a, "scheme.delta");
            c.delta.values = get_or<std::vector<double>>(d, "values", {}, "scheme.delta");
        }
    }
    c.replicates = get_or<int>(j, "replicates", c.replicates, "config");
    c.base_seed = get_or<std::uint64_t>(j, "base_seed", c.base_seed, "config");
    c.threads = get_or<int>(j, "threads", c.threads, "config");
    c.dt_ratio = get_or<double>(j, "dt_ratio", c.dt_ratio, "config");
    c.output_dir = get_or<std::string>(j, "output_dir", c.output_dir, "config");
    validate(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_config(os.str());
}

std::string to_json(const ExperimentConfig& c) {
    json d = {{"rule", c.delta.kind == DeltaRuleKind::Power ? "power"
                       : c.delta.kind == DeltaRuleKind::Log ? "log"
                                                            : "explicit"}};
    if (c.delta.kind == DeltaRuleKind::Explicit) d["values"] = c.delta.values;
    else d["a"] = c.delta.a;
    json j = {
        {"experiment", experiment_name(c.experiment)},
        {"model", {{"H", c.H}, {"coefficients", c.coefficients}, {"eps", c.eps}}},
        {"scheme", {{"T", c.T}, {"delta", d}}},
        {"replicates", c.replicates},
        {"base_seed", c.base_seed},
        {"threads", c.threads},
        {"dt_ratio", c.dt_ratio},
        {"output_dir", c.output_dir},
    };
    return j.dump(2);
}

void apply(ExperimentConfig& c, const Overrides& o) {
    if (o.output_dir) c.output_dir = *o.output_dir;
    if (o.seed) c.base_seed = *o.seed;
    if (o.replicates) c.replicates = *o.replicates;
    if (o.threads) c.threads = *o.threads;
    validate(c);
}

}  // namespace homog::expcli
