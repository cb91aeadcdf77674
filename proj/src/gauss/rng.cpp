#include "homog/gauss/rng.hpp"

#include <cmath>

namespace homog::gauss {
namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u, kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u, kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// 53-bit uniform strictly inside (0, 1).
inline double to_open_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

GaussianStream::GaussianStream(SeedSpec seed, Lane lane) noexcept
    : key_{static_cast<std::uint32_t>(seed.base_seed), static_cast<std::uint32_t>(seed.base_seed >> 32)},
      seed_(seed),
      lane_(lane) {}

PhiloxCounter GaussianStream::counter(std::uint64_t block, std::uint16_t tag) const noexcept {
    // Word layout: [block lo | block hi (48 bits) + lane/tag (16 bits) | stream lo | stream hi].
    const std::uint32_t hi = static_cast<std::uint32_t>((block >> 32) & 0xFFFFu) |
                             (static_cast<std::uint32_t>(static_cast<std::uint16_t>(lane_) << 8 | tag) << 16);
    return {static_cast<std::uint32_t>(block), hi, static_cast<std::uint32_t>(seed_.stream_id),
            static_cast<std::uint32_t>(seed_.stream_id >> 32)};
}

double GaussianStream::at(std::uint64_t index) const noexcept {
    const PhiloxCounter r = philox4x32(counter(index >> 1, 0), key_);
    const double u1 = to_open_unit(r[0], r[1]);
    const double u2 = to_open_unit(r[2], r[3]);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 6.283185307179586476925 * u2;
    return (index & 1u) ? rad * std::sin(ang) : rad * std::cos(ang);
}

void GaussianStream::fill(std::span<double> out, std::uint64_t offset) const noexcept {
    std::size_t k = 0;
    const std::size_t n = out.size();
    if (n == 0) return;
    if (offset & 1u) {
        out[k++] = at(offset);
    }
    std::uint64_t idx = offset + k;
    for (; k + 1 < n; k += 2, idx += 2) {
        const PhiloxCounter r = philox4x32(counter(idx >> 1, 0), key_);
        const double u1 = to_open_unit(r[0], r[1]);
        const double u2 = to_open_unit(r[2], r[3]);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        const double ang = 6.283185307179586476925 * u2;
        out[k] = rad * std::cos(ang);
        out[k + 1] = rad * std::sin(ang);
    }
    if (k < n) out[k] = at(idx);
}

double GaussianStream::uniform(std::uint64_t index) const noexcept {
    const PhiloxCounter r = philox4x32(counter(index >> 1, 1), key_);
    return (index & 1u) ? to_open_unit(r[2], r[3]) : to_open_unit(r[0], r[1]);
}

}  // namespace homog::gauss
