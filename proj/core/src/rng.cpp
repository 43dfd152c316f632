#include "cliquecover/rng.hpp"

#include <cmath>
#include <limits>

namespace cliquecover {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

__extension__ typedef unsigned __int128 u128;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t KeyedRng::next_u64() noexcept {
    if (used_ >= 4) {
        buffer_ = philox4x32_10({block_++, a_, b_, tag_}, key_);
        used_ = 0;
    }
    const std::uint64_t lo = buffer_[used_];
    const std::uint64_t hi = buffer_[used_ + 1];
    used_ += 2;
    return (hi << 32) | lo;
}

std::uint64_t KeyedRng::below(std::uint64_t bound) noexcept {
    u128 product = static_cast<u128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (low < threshold) {
            product = static_cast<u128>(next_u64()) * bound;
            low = static_cast<std::uint64_t>(product);
        }
    }
    return static_cast<std::uint64_t>(product >> 64);
}

std::uint64_t KeyedRng::geometric(double q) noexcept {
    if (q >= 1.0) return 0;
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (q <= 0.0) return kMax;
    // 1 - uniform() lies in (0, 1], so the log is finite.
    const double gaps = std::floor(std::log(1.0 - uniform()) / std::log1p(-q));
    if (!(gaps < 1.8e19)) return kMax;
    return static_cast<std::uint64_t>(gaps);
}

Seed derive_seed(Seed base, std::uint64_t index) noexcept {
    KeyedRng rng(base, Stream::sub_seed, static_cast<std::uint32_t>(index),
                 static_cast<std::uint32_t>(index >> 32));
    return Seed{rng.next_u64()};
}

}  // namespace cliquecover
