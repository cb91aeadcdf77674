#include <atomic>
#include <cstdlib>
#include <cstring>

#include "detail.hpp"
#include "homog/error.hpp"

namespace homog::kernels {
namespace {

bool cpu_has_avx2() noexcept {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Table* pick() noexcept {
    const char* env = std::getenv("HOMOG_INFER_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return &detail::scalar;
    if (const Table* t = avx2_table()) return t;
    return &detail::scalar;
}

std::atomic<const Table*>& slot() noexcept {
    static std::atomic<const Table*> s{pick()};
    return s;
}

}  // namespace

const Table& scalar_table() noexcept { return detail::scalar; }

const Table* avx2_table() noexcept { return cpu_has_avx2() ? detail::avx2() : nullptr; }

const Table& active() noexcept { return *slot().load(std::memory_order_acquire); }

void select(Isa isa) {
    if (isa == Isa::Scalar) {
        slot().store(&detail::scalar, std::memory_order_release);
        return;
    }
    const Table* t = avx2_table();
    if (t == nullptr) throw PreconditionError("AVX2 kernels unavailable on this CPU or build");
    slot().store(t, std::memory_order_release);
}

std::string_view isa_name(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

}  // namespace homog::kernels
