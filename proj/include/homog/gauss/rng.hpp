#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace homog::gauss {

struct SeedSpec {
    std::uint64_t base_seed = 0;
    std::uint64_t stream_id = 0;
};

// Philox4x32-10 block function.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;
[[nodiscard]] PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key) noexcept;

// Independent sub-sequences of one SeedSpec; part of the stream identity.
enum class Lane : std::uint16_t { FbmSpectral = 0, InitialState = 1, Generic = 2 };

// Standard normals addressed by counter: value(i) depends only on
// (base_seed, stream_id, lane, i). Box-Muller on one Philox block gives
// the pair (2j, 2j+1).
class GaussianStream {
public:
    explicit GaussianStream(SeedSpec seed, Lane lane = Lane::Generic) noexcept;

    [[nodiscard]] double at(std::uint64_t index) const noexcept;
    // out[k] = at(offset + k)
    void fill(std::span<double> out, std::uint64_t offset = 0) const noexcept;
    // Uniform on (0, 1) addressed the same way, from its own counter space.
    [[nodiscard]] double uniform(std::uint64_t index) const noexcept;

private:
    [[nodiscard]] PhiloxCounter counter(std::uint64_t block, std::uint16_t tag) const noexcept;
    PhiloxKey key_;
    SeedSpec seed_;
    Lane lane_;
};

}  // namespace homog::gauss
