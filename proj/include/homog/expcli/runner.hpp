#pragma once

#include <string>
#include <vector>

#include "homog/expcli/config.hpp"

namespace homog::expcli {

// One (eps, delta) cell. Column names and order are fixed per experiment;
// cells that failed keep NaN values and carry the error text in status.
struct SweepRow {
    std::vector<double> values;
    std::string status = "ok";
};

struct SweepTable {
    Experiment experiment;
    std::vector<std::string> columns;
    // Theory column -> oracle operation that produced it.
    std::vector<std::pair<std::string, std::string>> oracles;
    std::vector<SweepRow> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
    [[nodiscard]] double at(std::size_t row, const std::string& name) const;
    [[nodiscard]] bool all_ok() const;
};

[[nodiscard]] SweepTable run_experiment(const ExperimentConfig& cfg);

}  // namespace homog::expcli
