#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "golden.hpp"
#include "sudocrypt/errors.hpp"
#include "sudocrypt/prng.hpp"

using namespace sudocrypt;

TEST_SUITE("prng") {
    TEST_CASE("next_u64 is a pure function of the state") {
        const PrngState s{123456789};
        CHECK(next_u64(s) == next_u64(s));
        CHECK(next_u64(s).first.state == 123456789 + 0x9E3779B97F4A7C15ULL);
    }

    TEST_CASE("SplitMix64 golden outputs") {
        PrngState s{0};
        for (std::uint64_t expected : golden::kSplitMixSeed0) CHECK(draw(s) == expected);
        CHECK(next_u64(PrngState{1}).second == golden::kSplitMixSeed1First);
        CHECK(next_u64(PrngState{2}).second == golden::kSplitMixSeed2First);
        CHECK(golden::kSplitMixSeed1First != golden::kSplitMixSeed2First);
    }

    TEST_CASE("derive_permutation golden vectors") {
        const auto p = derive_permutation(42, 9);
        CHECK(std::equal(p.map().begin(), p.map().end(), golden::kPerm42x9.begin(), golden::kPerm42x9.end()));
        const auto q = derive_permutation(7, 4);
        CHECK(std::equal(q.map().begin(), q.map().end(), golden::kPerm7x4.begin(), golden::kPerm7x4.end()));
    }

    TEST_CASE("derive_permutation edge cases") {
        CHECK(derive_permutation(0xDEADBEEF, 1) == Permutation::identity(1));
        CHECK_THROWS_AS(derive_permutation(1, 0), InvalidArgument);
    }

    TEST_CASE("derive_permutation is always a bijection") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 200; ++trial) {
            const std::uint64_t seed = rng();
            const std::size_t n = 1 + rng() % 500;
            const auto p = derive_permutation(seed, n);
            std::vector<std::size_t> sorted(p.map().begin(), p.map().end());
            std::sort(sorted.begin(), sorted.end());
            std::vector<std::size_t> expected(n);
            std::iota(expected.begin(), expected.end(), std::size_t{0});
            REQUIRE(sorted == expected);
            CHECK(derive_permutation(seed, n) == p);
        }
    }

    TEST_CASE("Permutation rejects non-bijections") {
        CHECK_THROWS_AS(Permutation({0, 0, 1}), InvalidArgument);
        CHECK_THROWS_AS(Permutation({0, 3}), InvalidArgument);
        CHECK_NOTHROW(Permutation({2, 0, 1}));
    }

    TEST_CASE("invert_permutation") {
        CHECK(invert_permutation(Permutation::identity(6)) == Permutation::identity(6));
        CHECK(invert_permutation(Permutation({2, 0, 1})) == Permutation({1, 2, 0}));
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 100; ++trial) {
            const auto p = derive_permutation(rng(), 1 + rng() % 300);
            const auto inv = invert_permutation(p);
            CHECK(invert_permutation(inv) == p);
            for (std::size_t i = 0; i < p.size(); ++i) REQUIRE(inv[p[i]] == i);
        }
    }

    TEST_CASE("shuffle then inverse restores any sequence up to n = 1e5") {
        std::mt19937_64 rng(17);
        for (std::size_t n : {1u, 2u, 9u, 1000u, 54321u, 100000u}) {
            std::vector<std::uint32_t> data(n);
            for (auto& v : data) v = static_cast<std::uint32_t>(rng());
            const auto p = derive_permutation(rng(), n);
            const auto shuffled = apply_permutation<std::uint32_t>(p, data);
            const auto restored = apply_permutation<std::uint32_t>(invert_permutation(p), shuffled);
            CHECK(restored == data);
        }
    }
}
