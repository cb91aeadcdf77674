#pragma once

#include <cstddef>
#include <vector>

#include "homog/error.hpp"

namespace homog {

// Uniform trajectory: sample k sits at t0 + k dt.
struct PathGrid {
    double t0 = 0.0;
    double dt = 1.0;
    std::vector<double> values;

    PathGrid() = default;
    PathGrid(double t0_, double dt_, std::vector<double> v) : t0(t0_), dt(dt_), values(std::move(v)) {
        validate();
    }
    void validate() const {
        require(dt > 0.0, "PathGrid: dt > 0");
        require(!values.empty(), "PathGrid: values nonempty");
    }
    [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
    [[nodiscard]] double time(std::size_t k) const noexcept { return t0 + static_cast<double>(k) * dt; }
    [[nodiscard]] double t_end() const noexcept { return time(values.size() - 1); }
};

}  // namespace homog
