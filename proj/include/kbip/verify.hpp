#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbip/detail/parallel.hpp"
#include "kbip/graph_types.hpp"

// Construction-independent verification. This module reads only
// (n, num_colors, edge -> color) and deliberately imports nothing from the
// construction side beyond the shared data types.

namespace kbip {

struct ProperViolation {
    bool top_side = true;
    int vertex = 0;
    int color = 0;
};

struct BichromaticWitness {
    int color_a = 0;
    int color_b = 0;
    std::vector<Edge> cycle; // closed walk, strictly alternating the two colors
};

struct VerificationReport {
    bool proper = false;
    std::vector<ProperViolation> proper_violations;
    bool acyclic = false;
    std::optional<BichromaticWitness> bichromatic_witness;
    long long pairs_checked = 0;
};

namespace detail {

inline void require_total(const EdgeColoring& c) {
    if (c.n < 1 || c.num_colors < 1)
        throw std::invalid_argument("verify: coloring has invalid dimensions");
    const std::size_t expected =
        static_cast<std::size_t>(c.n) * static_cast<std::size_t>(c.n);
    if (c.color.size() != expected)
        throw std::invalid_argument("verify: coloring is not total over the n^2 edges");
    for (int value : c.color)
        if (value < 0 || value >= c.num_colors)
            throw std::invalid_argument("verify: color id out of range");
}

// Union-find over the 2n vertices with version-stamped resets so one buffer
// serves many color pairs.
class PairForest {
public:
    explicit PairForest(int vertices)
        : parent_(static_cast<std::size_t>(vertices)),
          stamp_(static_cast<std::size_t>(vertices), 0) {}

    void reset() { ++version_; }

    int find(int v) {
        if (stamp_[static_cast<std::size_t>(v)] != version_) {
            stamp_[static_cast<std::size_t>(v)] = version_;
            parent_[static_cast<std::size_t>(v)] = v;
        }
        while (parent_[static_cast<std::size_t>(v)] != v) {
            const int up = parent_[static_cast<std::size_t>(v)];
            parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(up)];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }

    // Returns false if the endpoints were already connected (a cycle edge).
    bool link(int a, int b) {
        const int ra = find(a), rb = find(b);
        if (ra == rb)
            return false;
        parent_[static_cast<std::size_t>(ra)] = rb;
        return true;
    }

private:
    std::vector<int> parent_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t version_ = 0;
};

// Extracts one cycle from the union of two color classes (each a partial
// matching, so components are paths and cycles). Only called for pairs the
// forest has already flagged.
inline BichromaticWitness extract_witness(const EdgeColoring& c, int color_a, int color_b,
                                          const std::vector<Edge>& class_a,
                                          const std::vector<Edge>& class_b) {
    const int n = c.n;
    std::vector<int> a_top(static_cast<std::size_t>(n), -1), b_top(static_cast<std::size_t>(n), -1);
    std::vector<int> a_bot(static_cast<std::size_t>(n), -1), b_bot(static_cast<std::size_t>(n), -1);
    for (const Edge& e : class_a) {
        a_top[static_cast<std::size_t>(e.top)] = e.bottom;
        a_bot[static_cast<std::size_t>(e.bottom)] = e.top;
    }
    for (const Edge& e : class_b) {
        b_top[static_cast<std::size_t>(e.top)] = e.bottom;
        b_bot[static_cast<std::size_t>(e.bottom)] = e.top;
    }
    for (int start = 0; start < n; ++start) {
        if (a_top[static_cast<std::size_t>(start)] < 0 ||
            b_top[static_cast<std::size_t>(start)] < 0)
            continue; // a cycle vertex has one edge of each color
        std::vector<Edge> walk;
        int u = start;
        while (true) {
            const int v = a_top[static_cast<std::size_t>(u)];
            if (v < 0)
                break;
            walk.push_back({u, v});
            const int next = b_bot[static_cast<std::size_t>(v)];
            if (next < 0)
                break;
            walk.push_back({next, v});
            if (next == start)
                return {color_a, color_b, std::move(walk)};
            u = next;
        }
    }
    throw std::logic_error("verify: flagged color pair has no extractable cycle");
}

} // namespace detail

/// Properness: at every vertex of either side the n incident edges must use
/// n distinct colors. Rejects non-total input.
inline VerificationReport check_proper(const EdgeColoring& c) {
    detail::require_total(c);
    VerificationReport report;
    std::vector<int> count(static_cast<std::size_t>(c.num_colors), 0);
    const auto scan = [&](bool top_side) {
        for (int v = 0; v < c.n; ++v) {
            std::fill(count.begin(), count.end(), 0);
            for (int w = 0; w < c.n; ++w)
                ++count[static_cast<std::size_t>(top_side ? c.at(v, w) : c.at(w, v))];
            for (int col = 0; col < c.num_colors; ++col)
                if (count[static_cast<std::size_t>(col)] > 1)
                    report.proper_violations.push_back({top_side, v, col});
        }
    };
    scan(true);
    scan(false);
    report.proper = report.proper_violations.empty();
    return report;
}

/// Acyclicity: no unordered pair of color classes may contain a cycle.
/// Requires a proper coloring (rejected otherwise); pairs are checked
/// concurrently and the scan stops early once some witness is found, so the
/// boolean is deterministic but the witness identity may vary.
inline VerificationReport check_acyclic(const EdgeColoring& c, int threads = 0) {
    VerificationReport report = check_proper(c);
    if (!report.proper)
        throw std::invalid_argument("check_acyclic: coloring is not proper");

    const int k = c.num_colors;
    std::vector<std::vector<Edge>> by_color(static_cast<std::size_t>(k));
    for (int u = 0; u < c.n; ++u)
        for (int v = 0; v < c.n; ++v)
            by_color[static_cast<std::size_t>(c.at(u, v))].push_back({u, v});

    std::atomic<bool> found{false};
    std::atomic<long long> pairs_checked{0};
    std::mutex witness_mutex;
    std::optional<BichromaticWitness> witness;

    detail::parallel_chunks(k, threads, [&](long long begin, long long end) {
        detail::PairForest forest(2 * c.n);
        long long local_checked = 0;
        for (long long a = begin; a < end && !found.load(std::memory_order_relaxed); ++a) {
            const auto& class_a = by_color[static_cast<std::size_t>(a)];
            for (int b = static_cast<int>(a) + 1; b < k; ++b) {
                if (found.load(std::memory_order_relaxed))
                    break;
                const auto& class_b = by_color[static_cast<std::size_t>(b)];
                forest.reset();
                bool cyclic = false;
                for (const auto* cls : {&class_a, &class_b}) {
                    for (const Edge& e : *cls) {
                        if (!forest.link(e.top, c.n + e.bottom)) {
                            cyclic = true;
                            break;
                        }
                    }
                    if (cyclic)
                        break;
                }
                ++local_checked;
                if (cyclic) {
                    auto w = detail::extract_witness(c, static_cast<int>(a), b, class_a, class_b);
                    const std::lock_guard<std::mutex> lock(witness_mutex);
                    if (!witness)
                        witness = std::move(w);
                    found.store(true, std::memory_order_relaxed);
                    break;
                }
            }
        }
        pairs_checked.fetch_add(local_checked, std::memory_order_relaxed);
    });

    report.pairs_checked = pairs_checked.load();
    report.bichromatic_witness = std::move(witness);
    report.acyclic = !report.bichromatic_witness.has_value();
    return report;
}

struct LowerBoundResult {
    bool exists = false;
    std::optional<EdgeColoring> witness;
};

/// Exhaustive search for a proper acyclic coloring of K_{n,n} with at most
/// `num_colors` colors. Edges are filled in row-major order with colors
/// tried ascending; the first vertex's edges are pinned to colors 0..n-1
/// (color classes are interchangeable, so this loses no colorings) and every
/// partial assignment is pruned on properness and on closing a two-colored
/// cycle. Only n <= 3 is accepted: the space grows as k^(n^2).
inline LowerBoundResult exhaustive_lower_bound(int n, int num_colors) {
    if (n < 1 || n % 2 == 0 || n > 3)
        throw std::invalid_argument("exhaustive_lower_bound: only small odd n (n <= 3) is "
                                    "searchable; got n = " + std::to_string(n));
    if (num_colors < 1 || num_colors > 64)
        throw std::invalid_argument("exhaustive_lower_bound: color count out of range");
    if (num_colors < n)
        return {}; // properness alone needs n colors at every vertex

    const int total = n * n;
    std::vector<int> color(static_cast<std::size_t>(total), -1);
    // incidence[side][vertex * num_colors + c] = matched vertex or -1
    std::vector<int> top_by_color(static_cast<std::size_t>(n * num_colors), -1);
    std::vector<int> bot_by_color(static_cast<std::size_t>(n * num_colors), -1);
    std::vector<std::uint64_t> top_used(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> bot_used(static_cast<std::size_t>(n), 0);

    const auto closes_bichromatic_cycle = [&](int u, int v, int c) {
        // A cycle through the new edge (u,v,c) alternates c with some other
        // color c', leaving u along c'; each vertex holds at most one edge
        // per color, so the walk is forced.
        for (int other = 0; other < num_colors; ++other) {
            if (other == c || (top_used[static_cast<std::size_t>(u)] >> other & 1) == 0)
                continue;
            int cur = top_by_color[static_cast<std::size_t>(u * num_colors + other)];
            bool via_other = true; // color of the next edge to follow from `cur`
            while (true) {
                if (via_other) { // cur is a bottom vertex reached along c'
                    if (cur == v)
                        return true;
                    cur = bot_by_color[static_cast<std::size_t>(cur * num_colors + c)];
                } else {
                    cur = top_by_color[static_cast<std::size_t>(cur * num_colors + other)];
                }
                if (cur < 0)
                    break;
                via_other = !via_other;
            }
        }
        return false;
    };

    const auto assign = [&](int u, int v, int c) {
        color[static_cast<std::size_t>(u * n + v)] = c;
        top_used[static_cast<std::size_t>(u)] |= std::uint64_t{1} << c;
        bot_used[static_cast<std::size_t>(v)] |= std::uint64_t{1} << c;
        top_by_color[static_cast<std::size_t>(u * num_colors + c)] = v;
        bot_by_color[static_cast<std::size_t>(v * num_colors + c)] = u;
    };
    const auto unassign = [&](int u, int v, int c) {
        color[static_cast<std::size_t>(u * n + v)] = -1;
        top_used[static_cast<std::size_t>(u)] &= ~(std::uint64_t{1} << c);
        bot_used[static_cast<std::size_t>(v)] &= ~(std::uint64_t{1} << c);
        top_by_color[static_cast<std::size_t>(u * num_colors + c)] = -1;
        bot_by_color[static_cast<std::size_t>(v * num_colors + c)] = -1;
    };

    for (int j = 0; j < n; ++j)
        assign(0, j, j); // symmetry pin: first vertex uses colors 0..n-1

    const auto search = [&](auto&& self, int index) -> bool {
        if (index == total)
            return true;
        const int u = index / n, v = index % n;
        for (int c = 0; c < num_colors; ++c) {
            if (top_used[static_cast<std::size_t>(u)] >> c & 1)
                continue;
            if (bot_used[static_cast<std::size_t>(v)] >> c & 1)
                continue;
            if (closes_bichromatic_cycle(u, v, c))
                continue;
            assign(u, v, c);
            if (self(self, index + 1))
                return true;
            unassign(u, v, c);
        }
        return false;
    };

    LowerBoundResult result;
    result.exists = search(search, n); // row 0 already assigned
    if (result.exists) {
        EdgeColoring witness;
        witness.n = n;
        witness.num_colors = num_colors;
        witness.construction = "search";
        witness.color = color;
        result.witness = std::move(witness);
    }
    return result;
}

} // namespace kbip
