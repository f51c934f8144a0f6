#pragma once

#include <algorithm>
#include <atomic>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbip/detail/parallel.hpp"
#include "kbip/field.hpp"
#include "kbip/graph_types.hpp"
#include "kbip/permutation.hpp"

namespace kbip {

enum class FamilyKind { cyclic, p_squared };

inline const char* to_string(FamilyKind kind) {
    return kind == FamilyKind::cyclic ? "cyclic" : "p_squared";
}

/// Candidate perfect 1-factorization of K_{n,n}: n perfect matchings stored
/// as permutations (edges are materialized lazily by the ops that need them).
/// Matching index is i for the cyclic family and a*p+b for the p^2 family.
struct Factorization {
    int n = 0;
    FamilyKind kind = FamilyKind::cyclic;
    std::vector<Permutation> matchings;
    std::optional<FieldContext> context;
};

/// The shift family a -> a+i mod n. Defined for any odd n >= 3; the union
/// property only holds when n is prime.
inline Factorization cyclic_factorization(int n) {
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("cyclic_factorization: n must be odd and >= 3, got " +
                                    std::to_string(n));
    Factorization f;
    f.n = n;
    f.kind = FamilyKind::cyclic;
    f.matchings.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        f.matchings.push_back(permutation_from_map(n, [&](int a) { return (a + i) % n; }));
    return f;
}

/// The matching permutation for factor (a,b) of the p^2 family over labels
/// (c,d) encoded c*p + d:
///   (c=0, a+b+d != 0) -> (a, a+b+d)
///   (c=0, a+b+d == 0) -> (a + x*b, 0)
///   (c!=0, b+d == 0)  -> (a + c + x*b, 0)
///   (c!=0, b+d != 0)  -> (a + c, b + d)
inline Permutation p_squared_matching(const FieldContext& ctx, int a, int b) {
    const int p = ctx.p;
    const long long x = ctx.x;
    return permutation_from_map(p * p, [&](int label) {
        const auto [c, d] = decode_pair(label, p);
        if (c == 0) {
            const int s = (a + b + d) % p;
            if (s != 0)
                return encode_pair(a, s, p);
            return encode_pair(static_cast<int>((a + x * b) % p), 0, p);
        }
        if ((b + d) % p == 0)
            return encode_pair(static_cast<int>((a + c + x * b) % p), 0, p);
        return encode_pair((a + c) % p, (b + d) % p, p);
    });
}

/// The p^2 matchings indexed by a*p+b for (a,b) over Z_p x Z_p.
inline Factorization p_squared_factorization(const FieldContext& ctx) {
    if (ctx.p > kMaxPSquaredPrime)
        throw std::invalid_argument("p_squared_factorization: p = " + std::to_string(ctx.p) +
                                    " exceeds the supported cap of " +
                                    std::to_string(kMaxPSquaredPrime));
    Factorization f;
    f.n = ctx.p * ctx.p;
    f.kind = FamilyKind::p_squared;
    f.context = ctx;
    f.matchings.reserve(static_cast<std::size_t>(f.n));
    for (int a = 0; a < ctx.p; ++a)
        for (int b = 0; b < ctx.p; ++b)
            f.matchings.push_back(p_squared_matching(ctx, a, b));
    return f;
}

/// The distinguished transversal matching M: a -> a*x for the cyclic family
/// over Z_p, and (c,d) -> (y*c, x*d) for the p^2 family.
inline Permutation transversal_matching(FamilyKind kind, const FieldContext& ctx) {
    const int p = ctx.p;
    if (kind == FamilyKind::cyclic)
        return permutation_from_map(
            p, [&](int a) { return static_cast<int>(static_cast<long long>(a) * ctx.x % p); });
    return permutation_from_map(p * p, [&](int label) {
        const auto [c, d] = decode_pair(label, p);
        return encode_pair(static_cast<int>(static_cast<long long>(ctx.y) * c % p),
                           static_cast<int>(static_cast<long long>(ctx.x) * d % p), p);
    });
}

struct P1FFailure {
    int i = 0;
    int j = 0;
    std::vector<int> cycle_lengths;
};

struct P1FReport {
    bool ok = true;
    long long pairs_checked = 0;
    std::vector<P1FFailure> failing_pairs;
};

/// Checks the Hamiltonian-union property: for every i < j the permutation
/// inverse(M_i) ∘ M_j must be one full n-cycle. The default mode reports
/// every failing pair with its cycle-length multiset; stop_at_first_failure
/// bails out at the first one.
inline P1FReport validate_p1f(const Factorization& f, bool stop_at_first_failure = false,
                              int threads = 0) {
    const int n = f.n;
    if (static_cast<int>(f.matchings.size()) != n)
        throw std::invalid_argument("validate_p1f: factorization must hold exactly n matchings");
    for (const Permutation& m : f.matchings)
        if (m.size() != n)
            throw std::invalid_argument("validate_p1f: matching size mismatch");
    P1FReport report;
    if (stop_at_first_failure) {
        for (int i = 0; i < n && report.ok; ++i) {
            const Permutation inv_i = inverse(f.matchings[static_cast<std::size_t>(i)]);
            for (int j = i + 1; j < n; ++j) {
                const Permutation g = compose(inv_i, f.matchings[static_cast<std::size_t>(j)]);
                ++report.pairs_checked;
                if (!is_full_cycle(g)) {
                    report.ok = false;
                    auto lengths = cycle_lengths(g);
                    std::sort(lengths.begin(), lengths.end());
                    report.failing_pairs.push_back({i, j, std::move(lengths)});
                    break;
                }
            }
        }
        return report;
    }

    // Full scan; pairs are independent, so evaluation order cannot change
    // the result and chunks may run concurrently.
    const long long total = static_cast<long long>(n) * (n - 1) / 2;
    std::mutex merge_mutex;
    detail::parallel_chunks(static_cast<long long>(n), threads, [&](long long begin, long long end) {
        std::vector<P1FFailure> local;
        for (long long i = begin; i < end; ++i) {
            const Permutation inv_i = inverse(f.matchings[static_cast<std::size_t>(i)]);
            for (int j = static_cast<int>(i) + 1; j < n; ++j) {
                const Permutation g = compose(inv_i, f.matchings[static_cast<std::size_t>(j)]);
                if (!is_full_cycle(g)) {
                    auto lengths = cycle_lengths(g);
                    std::sort(lengths.begin(), lengths.end());
                    local.push_back({static_cast<int>(i), j, std::move(lengths)});
                }
            }
        }
        if (!local.empty()) {
            const std::lock_guard<std::mutex> lock(merge_mutex);
            report.failing_pairs.insert(report.failing_pairs.end(), local.begin(), local.end());
        }
    });
    report.pairs_checked = total;
    std::sort(report.failing_pairs.begin(), report.failing_pairs.end(),
              [](const P1FFailure& a, const P1FFailure& b) {
                  return a.i != b.i ? a.i < b.i : a.j < b.j;
              });
    report.ok = report.failing_pairs.empty();
    return report;
}

/// Graph cycle in the union of two matchings. Edges are listed in traversal
/// order; even positions come from m_b, odd positions from m_a, consecutive
/// edges share a vertex and the last edge closes back onto the first.
struct AlternatingCycle {
    std::vector<Edge> edges;
};

/// Expands each length-l (l >= 2) cycle of inverse(m_a) ∘ m_b into the
/// corresponding 2l-edge graph cycle of K_{n,n}, alternating edges of the
/// two matchings.
inline std::vector<AlternatingCycle> union_cycles(const Permutation& m_a,
                                                  const Permutation& m_b) {
    if (m_a.size() != m_b.size())
        throw std::invalid_argument("union_cycles: size mismatch");
    std::vector<AlternatingCycle> out;
    const CycleDecomposition decomp = cycle_decomposition(compose(inverse(m_a), m_b));
    for (const auto& cycle : decomp.cycles) {
        if (cycle.size() < 2)
            continue;
        AlternatingCycle graph_cycle;
        graph_cycle.edges.reserve(cycle.size() * 2);
        const std::size_t len = cycle.size();
        for (std::size_t k = 0; k < len; ++k) {
            const int label = cycle[k];
            const int next = cycle[(k + 1) % len];
            // m_b(label) == m_a(next), so these two edges meet at a bottom
            // vertex and the walk closes after the final m_a edge.
            graph_cycle.edges.push_back({label, m_b(label)});
            graph_cycle.edges.push_back({next, m_a(next)});
        }
        out.push_back(std::move(graph_cycle));
    }
    return out;
}

} // namespace kbip
