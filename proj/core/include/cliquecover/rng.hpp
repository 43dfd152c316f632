#pragma once

#include <array>
#include <cstdint>

namespace cliquecover {

struct Seed {
    std::uint64_t value = 0;

    friend bool operator==(Seed, Seed) = default;
};

// Philox4x32-10 block function (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

// Purpose tags keep the random streams of different consumers disjoint.
enum class Stream : std::uint32_t {
    gnp_edge = 1,
    step_a = 2,
    step_b = 3,
    sampling = 4,
    sub_seed = 5,
};

// A counter-based random stream addressed by (seed, stream tag, a, b, sub); sub < 2^24. Two KeyedRng
// objects with the same address produce the same sequence, no matter when or on
// which thread they are created.
class KeyedRng {
public:
    KeyedRng(Seed seed, Stream tag, std::uint32_t a, std::uint32_t b, std::uint32_t sub = 0) noexcept
        : key_{static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32)},
          a_(a), b_(b), tag_(static_cast<std::uint32_t>(tag) | (sub << 8)) {}

    std::uint64_t next_u64() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound); bound > 0. Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound) noexcept;

    // Number of failures before the first success of a Bernoulli(q) sequence, 0 < q <= 1.
    // Saturates at UINT64_MAX.
    std::uint64_t geometric(double q) noexcept;

private:
    PhiloxKey key_;
    std::uint32_t a_;
    std::uint32_t b_;
    std::uint32_t tag_;
    std::uint32_t block_ = 0;
    PhiloxCounter buffer_{};
    int used_ = 4;
};

// Deterministic child seed, e.g. for Monte Carlo repetition r of a base seed.
Seed derive_seed(Seed base, std::uint64_t index) noexcept;

}  // namespace cliquecover
