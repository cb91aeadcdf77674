#pragma once

#include <string>

#include "homog/expcli/config.hpp"
#include "homog/expcli/runner.hpp"

namespace homog::expcli {

// Fixed column order, %.17g, LF line endings.
[[nodiscard]] std::string format_csv(const SweepTable& table);

// Writes results.csv, meta.json and plot.gp under cfg.output_dir, creating it
// if missing. Throws IoError naming the path.
void emit_outputs(const SweepTable& table, const ExperimentConfig& cfg, double wall_seconds);

}  // namespace homog::expcli
