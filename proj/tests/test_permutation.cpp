#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "kbip/permutation.hpp"

using kbip::CycleDecomposition;
using kbip::Permutation;

namespace {

Permutation random_permutation(int n, std::mt19937& rng) {
    std::vector<int> img(static_cast<std::size_t>(n));
    std::iota(img.begin(), img.end(), 0);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(std::move(img));
}

std::vector<int> sorted_cycle_lengths(const Permutation& f) {
    auto lengths = kbip::cycle_lengths(f);
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

// shift-by-k on Z_n, tabulated independently of the library
Permutation shift(int n, int k) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        img[static_cast<std::size_t>(i)] = (i + k) % n;
    return Permutation(std::move(img));
}

// a -> a*k on Z_n
Permutation scale(int n, int k) {
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        img[static_cast<std::size_t>(i)] = i * k % n;
    return Permutation(std::move(img));
}

} // namespace

TEST_CASE("permutation construction validates bijections") {
    CHECK_THROWS_AS(Permutation(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 3, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, -1, 1}), std::invalid_argument);
    CHECK(Permutation({2, 0, 1}).size() == 3);
}

TEST_CASE("compose applies the right factor first") {
    const Permutation g = kbip::to_permutation(kbip::parse_cycles("(0 1 2)(3 4)"));

    SECTION("identity absorbs") {
        CHECK(kbip::compose(Permutation::identity(5), g) == g);
        CHECK(kbip::compose(g, Permutation::identity(5)) == g);
    }
    SECTION("the worked 5-label example") {
        const Permutation f = kbip::inverse(g); // inverse of (012)(34)
        const Permutation swap01 = kbip::to_permutation(kbip::parse_cycles("(0 1)(2)(3)(4)"));
        CHECK(kbip::format_cycles(kbip::compose(f, swap01)) == "(0)(1 2)(3 4)");
    }
    SECTION("shift composition tabulated by hand") {
        CHECK(kbip::compose(shift(5, 1), shift(5, 1)) == shift(5, 2));
    }
    SECTION("size mismatch is rejected") {
        CHECK_THROWS_AS(kbip::compose(g, Permutation::identity(4)), std::invalid_argument);
    }
}

TEST_CASE("inverse") {
    CHECK(kbip::inverse(Permutation::identity(7)) == Permutation::identity(7));
    CHECK(kbip::format_cycles(kbip::inverse(kbip::to_permutation(kbip::parse_cycles("(0 1 2)(3 4)")))) ==
          "(0 2 1)(3 4)");
    // 2 * 3 == 1 mod 5, checked by table
    CHECK(kbip::inverse(scale(5, 2)) == scale(5, 3));

    std::mt19937 rng(20240811);
    for (int round = 0; round < 25; ++round) {
        const Permutation f = random_permutation(40, rng);
        CHECK(kbip::compose(kbip::inverse(f), f) == Permutation::identity(40));
        CHECK(kbip::compose(f, kbip::inverse(f)) == Permutation::identity(40));
    }
}

TEST_CASE("cycle decomposition is canonical and rebuilds the permutation") {
    CHECK(kbip::format_cycles(Permutation::identity(3)) == "(0)(1)(2)");
    // iterate 1 -> 3 -> 4 -> 2 -> 1
    CHECK(kbip::format_cycles(scale(5, 3)) == "(0)(1 3 4 2)");

    SECTION("the cyclic family difference is one full cycle") {
        const Permutation sigma = kbip::compose(kbip::inverse(shift(5, 1)), shift(5, 2));
        CHECK(kbip::format_cycles(sigma) == "(0 1 2 3 4)");
        CHECK(kbip::is_full_cycle(sigma));
    }

    std::mt19937 rng(7);
    for (int round = 0; round < 25; ++round) {
        const Permutation f = random_permutation(30, rng);
        const CycleDecomposition d = kbip::cycle_decomposition(f);
        int total = 0;
        for (const auto& cycle : d.cycles) {
            REQUIRE(!cycle.empty());
            CHECK(*std::min_element(cycle.begin(), cycle.end()) == cycle.front());
            total += static_cast<int>(cycle.size());
        }
        CHECK(total == 30);
        CHECK(std::is_sorted(d.cycles.begin(), d.cycles.end(),
                             [](const auto& a, const auto& b) { return a.front() < b.front(); }));
        CHECK(kbip::to_permutation(d) == f);
    }
}

TEST_CASE("decomposition is deterministic across equal permutations") {
    const Permutation a = kbip::compose(shift(9, 4), shift(9, 5)); // identity, built indirectly
    const Permutation b = Permutation::identity(9);
    REQUIRE(a == b);
    CHECK(kbip::format_cycles(a) == kbip::format_cycles(b));
}

TEST_CASE("conjugation") {
    const Permutation f = kbip::to_permutation(kbip::parse_cycles("(0 1)(2)"));
    const Permutation s = kbip::to_permutation(kbip::parse_cycles("(1 2)(0)"));
    SECTION("by identity") {
        CHECK(kbip::conjugate(f, Permutation::identity(3)) == f);
    }
    SECTION("three-map table over n=3") {
        CHECK(kbip::format_cycles(kbip::conjugate(f, s)) == "(0 2)(1)");
    }
    SECTION("cycle type is invariant, n=25") {
        std::mt19937 rng(99);
        for (int round = 0; round < 20; ++round) {
            const Permutation g = random_permutation(25, rng);
            const Permutation h = random_permutation(25, rng);
            CHECK(sorted_cycle_lengths(kbip::conjugate(g, h)) == sorted_cycle_lengths(g));
        }
    }
    SECTION("size mismatch is rejected") {
        CHECK_THROWS_AS(kbip::conjugate(f, Permutation::identity(4)), std::invalid_argument);
    }
}

TEST_CASE("fixed points") {
    CHECK(kbip::fixed_points(Permutation::identity(4)) == std::vector<int>{0, 1, 2, 3});
    CHECK(kbip::fixed_points(kbip::to_permutation(kbip::parse_cycles("(0)(1 2)(3 4)"))) ==
          std::vector<int>{0});
    CHECK(kbip::fixed_points(shift(5, 1)).empty());
}

TEST_CASE("full cycle test") {
    CHECK(kbip::is_full_cycle(shift(5, 1)));
    CHECK_FALSE(kbip::is_full_cycle(kbip::to_permutation(kbip::parse_cycles("(0)(1 2)(3 4)"))));
    // gcd(3, 9) = 3 gives three 3-cycles
    CHECK_FALSE(kbip::is_full_cycle(shift(9, 3)));
    CHECK(sorted_cycle_lengths(shift(9, 3)) == std::vector<int>{3, 3, 3});
}

TEST_CASE("cycle notation round trip") {
    SECTION("parses the documented example") {
        const CycleDecomposition d = kbip::parse_cycles("(0)(1 3 4 2)");
        CHECK(kbip::to_permutation(d) == scale(5, 3));
        CHECK(kbip::format_cycles(d) == "(0)(1 3 4 2)");
    }
    SECTION("non-canonical input is canonicalized") {
        CHECK(kbip::format_cycles(kbip::parse_cycles("(3 4 2 1)(0)")) == "(0)(1 3 4 2)");
    }
    SECTION("fixed points can be suppressed in rendering") {
        CHECK(kbip::format_cycles(kbip::parse_cycles("(0)(1 3 4 2)"), false) == "(1 3 4 2)");
    }
    SECTION("bad notation is rejected") {
        CHECK_THROWS_AS(kbip::parse_cycles(""), std::invalid_argument);
        CHECK_THROWS_AS(kbip::parse_cycles("(0 1"), std::invalid_argument);
        CHECK_THROWS_AS(kbip::parse_cycles("(0)(0 1)"), std::invalid_argument);
        CHECK_THROWS_AS(kbip::parse_cycles("(0)(2 3)"), std::invalid_argument); // misses 1
        CHECK_THROWS_AS(kbip::parse_cycles("()"), std::invalid_argument);
        CHECK_THROWS_AS(kbip::parse_cycles("(0 x)"), std::invalid_argument);
    }
    SECTION("random round trips") {
        std::mt19937 rng(4242);
        for (int round = 0; round < 20; ++round) {
            const Permutation f = random_permutation(17, rng);
            CHECK(kbip::to_permutation(kbip::parse_cycles(kbip::format_cycles(f))) == f);
        }
    }
}
