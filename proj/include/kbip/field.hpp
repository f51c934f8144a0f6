#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kbip {

// Largest prime accepted by the p^2-side constructions; beyond this the
// n = p^2 verifier no longer fits comfortably in memory.
inline constexpr int kMaxPSquaredPrime = 97;

/// Deterministic primality by trial division; sufficient for p < 2^31.
inline bool is_prime(int p) {
    if (p < 2)
        return false;
    if (p % 2 == 0)
        return p == 2;
    for (long long d = 3; d * d <= p; d += 2)
        if (p % d == 0)
            return false;
    return true;
}

inline bool is_odd_prime(int p) { return p > 2 && is_prime(p); }

inline int mod_pow(long long base, long long exp, int p) {
    base %= p;
    if (base < 0)
        base += p;
    long long acc = 1;
    while (exp > 0) {
        if (exp & 1)
            acc = acc * base % p;
        base = base * base % p;
        exp >>= 1;
    }
    return static_cast<int>(acc);
}

/// Multiplicative inverse mod p by extended Euclid; a must be nonzero mod p.
inline int mod_inverse(long long a, int p) {
    a %= p;
    if (a < 0)
        a += p;
    if (a == 0)
        throw std::invalid_argument("mod_inverse: argument is 0 mod " + std::to_string(p));
    long long t = 0, new_t = 1;
    long long r = p, new_r = a;
    while (new_r != 0) {
        const long long q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1)
        throw std::invalid_argument("mod_inverse: " + std::to_string(a) +
                                    " is not invertible mod " + std::to_string(p));
    return static_cast<int>(t < 0 ? t + p : t);
}

inline std::vector<int> prime_factors(int value) {
    std::vector<int> factors;
    for (int d = 2; static_cast<long long>(d) * d <= value; ++d) {
        if (value % d == 0) {
            factors.push_back(d);
            while (value % d == 0)
                value /= d;
        }
    }
    if (value > 1)
        factors.push_back(value);
    return factors;
}

/// True iff g generates the multiplicative group mod the odd prime p.
inline bool is_generator(int g, int p) {
    g %= p;
    if (g < 0)
        g += p;
    if (g == 0)
        return false;
    for (int q : prime_factors(p - 1))
        if (mod_pow(g, (p - 1) / q, p) == 1)
            return false;
    return true;
}

inline int smallest_generator(int p) {
    for (int g = 2; g < p; ++g)
        if (is_generator(g, p))
            return g;
    throw std::logic_error("smallest_generator: no generator found for " + std::to_string(p));
}

/// Prime arithmetic context: generator x, its inverse y, the constants
/// x' = (x-1)^-1 and y' = (y-1)^-1, and the partial geometric sums
/// x_i = x + x^2 + ... + x^i (likewise y_i) for i = 1..p-2.
struct FieldContext {
    int p = 0;
    int x = 0;
    int y = 0;
    int x_prime = 0;
    int y_prime = 0;
    std::vector<int> x_partial; // x_partial[i-1] holds x_i
    std::vector<int> y_partial;
};

/// Builds the context for an odd prime p. When `gen` is omitted the smallest
/// generator is chosen, keeping downstream artifacts reproducible.
inline FieldContext make_context(int p, std::optional<int> gen = std::nullopt) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("make_context: " + std::to_string(p) +
                                    " is not an odd prime");
    FieldContext ctx;
    ctx.p = p;
    ctx.x = gen.value_or(smallest_generator(p));
    if (ctx.x <= 0 || ctx.x >= p || !is_generator(ctx.x, p))
        throw std::invalid_argument("make_context: " + std::to_string(gen.value_or(ctx.x)) +
                                    " is not a generator mod " + std::to_string(p));
    ctx.y = mod_inverse(ctx.x, p);
    ctx.x_prime = mod_inverse(ctx.x - 1, p);
    ctx.y_prime = mod_inverse(ctx.y - 1, p);
    ctx.x_partial.reserve(static_cast<std::size_t>(p - 2));
    ctx.y_partial.reserve(static_cast<std::size_t>(p - 2));
    long long xs = 0, ys = 0, xpow = 1, ypow = 1;
    for (int i = 1; i <= p - 2; ++i) {
        xpow = xpow * ctx.x % p;
        ypow = ypow * ctx.y % p;
        xs = (xs + xpow) % p;
        ys = (ys + ypow) % p;
        ctx.x_partial.push_back(static_cast<int>(xs));
        ctx.y_partial.push_back(static_cast<int>(ys));
    }
    return ctx;
}

// Composite labels (a,b) over Z_p x Z_p are flattened as a*p + b, matching
// the color index c_{ap+b} used by the p^2 constructions.
inline int encode_pair(int a, int b, int p) { return a * p + b; }
inline std::pair<int, int> decode_pair(int label, int p) { return {label / p, label % p}; }

} // namespace kbip
