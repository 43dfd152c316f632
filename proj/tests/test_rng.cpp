#include <doctest.h>

#include <cmath>
#include <set>

#include "cliquecover/rng.hpp"

using namespace cliquecover;

TEST_CASE("philox4x32-10 known answers") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are addressed, not sequenced") {
    KeyedRng a(Seed{42}, Stream::step_b, 3, 7, 2);
    KeyedRng other(Seed{42}, Stream::step_a, 3, 7, 2);
    other.next_u64();
    KeyedRng b(Seed{42}, Stream::step_b, 3, 7, 2);
    for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());

    std::set<std::uint64_t> firsts;
    firsts.insert(KeyedRng(Seed{42}, Stream::step_b, 3, 7, 2).next_u64());
    firsts.insert(KeyedRng(Seed{43}, Stream::step_b, 3, 7, 2).next_u64());
    firsts.insert(KeyedRng(Seed{42}, Stream::step_a, 3, 7, 2).next_u64());
    firsts.insert(KeyedRng(Seed{42}, Stream::step_b, 7, 3, 2).next_u64());
    firsts.insert(KeyedRng(Seed{42}, Stream::step_b, 3, 7, 3).next_u64());
    CHECK(firsts.size() == 5);
}

TEST_CASE("uniform, below and geometric moments") {
    KeyedRng rng(Seed{1}, Stream::sampling, 0, 0);
    const int n = 200000;
    double sum = 0;
    std::uint64_t counts[7] = {};
    double geo = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
        const auto b = rng.below(7);
        REQUIRE(b < 7);
        ++counts[b];
        geo += static_cast<double>(rng.geometric(0.2));
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
    for (auto c : counts) CHECK(std::abs(double(c) - n / 7.0) < 4 * std::sqrt(n / 7.0));
    // Failures before the first success: mean (1-q)/q = 4.
    CHECK(geo / n == doctest::Approx(4.0).epsilon(0.02));
    CHECK(rng.geometric(1.0) == 0);
    CHECK(rng.geometric(0.0) == UINT64_MAX);
}

TEST_CASE("derived seeds differ per index and are stable") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(Seed{9}, i).value);
    CHECK(seen.size() == 1000);
    CHECK(derive_seed(Seed{9}, 5) == derive_seed(Seed{9}, 5));
}
