#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace homog::expcli {

enum class Experiment {
    BiasSweep,
    VarianceSweep,
    NoScaleSeparation,
    PluginConsistency,
    RosenblattVariance,
    DriftRobustness,
    TheoryVerify,
};

[[nodiscard]] const char* experiment_name(Experiment e) noexcept;
// Throws ConfigError on an unknown name.
[[nodiscard]] Experiment parse_experiment(const std::string& name);

enum class DeltaRuleKind { Power, Log, Explicit };

struct DeltaRuleConfig {
    DeltaRuleKind kind = DeltaRuleKind::Power;
    double a = 0.5;              // Power, Log
    std::vector<double> values;  // Explicit: one cell per (eps, value)
};

struct ExperimentConfig {
    Experiment experiment = Experiment::BiasSweep;
    double H = 0.9;
    std::vector<double> coefficients{0.0, 1.0};  // c_q, c_0 = 0
    std::vector<double> eps;                     // strictly decreasing
    double T = 1.0;
    DeltaRuleConfig delta;
    int replicates = 100;
    std::uint64_t base_seed = 0;
    int threads = 0;  // 0: HOMOG_INFER_THREADS or hardware concurrency
    // Fine step is the largest divisor of delta/2 not above eps / dt_ratio.
    double dt_ratio = 20.0;
    std::string output_dir = "out";
};

// Throws ConfigError with the offending field named.
[[nodiscard]] ExperimentConfig parse_config(const std::string& json_text);
[[nodiscard]] ExperimentConfig load_config(const std::string& path);
void validate(const ExperimentConfig& cfg);
[[nodiscard]] std::string to_json(const ExperimentConfig& cfg);

struct Overrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    std::optional<int> threads;
};
void apply(ExperimentConfig& cfg, const Overrides& o);

}  // namespace homog::expcli
