#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "kbip/field.hpp"

using kbip::FieldContext;

TEST_CASE("mod_inverse") {
    CHECK(kbip::mod_inverse(1, 7) == 1);
    CHECK(kbip::mod_inverse(2, 5) == 3);  // 2*3 = 6
    CHECK(kbip::mod_inverse(7, 11) == 8); // 7*8 = 56
    CHECK_THROWS_AS(kbip::mod_inverse(0, 5), std::invalid_argument);
    CHECK_THROWS_AS(kbip::mod_inverse(10, 5), std::invalid_argument);
    for (int p : {3, 5, 7, 13, 97})
        for (int a = 1; a < p; ++a)
            CHECK(static_cast<long long>(a) * kbip::mod_inverse(a, p) % p == 1);
}

TEST_CASE("primality") {
    CHECK(kbip::is_odd_prime(3));
    CHECK(kbip::is_odd_prime(97));
    CHECK_FALSE(kbip::is_odd_prime(2));
    CHECK_FALSE(kbip::is_odd_prime(9));
    CHECK_FALSE(kbip::is_odd_prime(1));
    CHECK_FALSE(kbip::is_odd_prime(91)); // 7 * 13
    CHECK(kbip::is_prime(2147483647));   // largest int prime, trial division still fine
}

TEST_CASE("make_context derives the documented constants") {
    const FieldContext ctx = kbip::make_context(5);
    CHECK(ctx.x == 2);
    CHECK(ctx.y == 3);
    CHECK(ctx.x_prime == 1); // (2-1)^-1
    CHECK(ctx.y_prime == 3); // (3-1)^-1 = 2^-1
    CHECK(ctx.x_partial == std::vector<int>{2, 1, 4}); // 2, 2+4, 2+4+8 mod 5
    CHECK(ctx.y_partial == std::vector<int>{3, 2, 4}); // 3, 3+9, 3+9+27 mod 5
}

TEST_CASE("make_context rejects bad input") {
    CHECK_THROWS_AS(kbip::make_context(9), std::invalid_argument);
    CHECK_THROWS_AS(kbip::make_context(2), std::invalid_argument);
    CHECK_THROWS_AS(kbip::make_context(5, 4), std::invalid_argument); // 4^2 = 16 = 1 mod 5
    CHECK_THROWS_AS(kbip::make_context(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(kbip::make_context(5, 5), std::invalid_argument);
    CHECK(kbip::make_context(5, 3).x == 3); // any generator is accepted
}

TEST_CASE("context invariants for a range of primes") {
    for (int p : {3, 5, 7, 11, 13, 17, 97}) {
        const FieldContext ctx = kbip::make_context(p);
        CAPTURE(p);
        CHECK(static_cast<long long>(ctx.x) * ctx.y % p == 1);
        CHECK(static_cast<long long>(ctx.x_prime) * (ctx.x - 1) % p == 1);
        CHECK(static_cast<long long>(ctx.y_prime) * (ctx.y - 1 + p) % p == 1);

        // powers of x enumerate 1..p-1 exactly once; same for y
        std::set<int> xpow, ypow;
        for (int k = 0; k <= p - 2; ++k) {
            xpow.insert(kbip::mod_pow(ctx.x, k, p));
            ypow.insert(kbip::mod_pow(ctx.y, k, p));
        }
        CHECK(static_cast<int>(xpow.size()) == p - 1);
        CHECK(static_cast<int>(ypow.size()) == p - 1);
        CHECK(kbip::is_generator(ctx.y, p));

        // partial sums satisfy the stepping recurrence
        for (std::size_t i = 1; i < ctx.x_partial.size(); ++i) {
            const int step = kbip::mod_pow(ctx.x, static_cast<int>(i) + 1, p);
            CHECK((ctx.x_partial[i - 1] + step) % p == ctx.x_partial[i]);
        }
    }
}

TEST_CASE("pair encoding") {
    CHECK(kbip::encode_pair(2, 3, 5) == 13);
    CHECK(kbip::decode_pair(13, 5) == std::pair<int, int>{2, 3});
    for (int a = 0; a < 7; ++a)
        for (int b = 0; b < 7; ++b)
            CHECK(kbip::decode_pair(kbip::encode_pair(a, b, 7), 7) == std::pair<int, int>{a, b});
}
