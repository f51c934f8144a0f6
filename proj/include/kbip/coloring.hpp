#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kbip/factorization.hpp"
#include "kbip/field.hpp"
#include "kbip/graph_types.hpp"
#include "kbip/permutation.hpp"

namespace kbip {

/// Thrown when the distinguished matching fails to meet some factor in
/// exactly one edge.
class TransversalError : public std::invalid_argument {
public:
    TransversalError(std::string message, std::vector<int> factors)
        : std::invalid_argument(std::move(message)), offending_factors(std::move(factors)) {}

    std::vector<int> offending_factors;
};

struct FrameOptions {
    // When set, that factor keeps its whole matching under its factor color
    // (its transversal edge is then excluded from the two extra classes).
    std::optional<int> keep_full_factor;
};

namespace detail {

// Sources s_i of the common edges e_i = (s_i -> m(s_i)); throws unless
// |M ∩ M_i| == 1 for every factor.
inline std::vector<int> transversal_sources(const Factorization& f, const Permutation& m) {
    if (m.size() != f.n)
        throw std::invalid_argument("transversal: matching size does not fit the factorization");
    if (static_cast<int>(f.matchings.size()) != f.n)
        throw std::invalid_argument("transversal: factorization must hold exactly n matchings");
    for (const Permutation& factor : f.matchings)
        if (factor.size() != f.n)
            throw std::invalid_argument("transversal: factor size mismatch");
    std::vector<int> sources(static_cast<std::size_t>(f.n), -1);
    std::vector<int> offending;
    for (int i = 0; i < f.n; ++i) {
        const Permutation& factor = f.matchings[static_cast<std::size_t>(i)];
        int found = -1;
        bool unique = true;
        for (int v = 0; v < f.n; ++v) {
            if (m(v) == factor(v)) {
                if (found >= 0)
                    unique = false;
                found = v;
            }
        }
        if (found < 0 || !unique)
            offending.push_back(i);
        else
            sources[static_cast<std::size_t>(i)] = found;
    }
    if (!offending.empty()) {
        std::string msg = "transversal condition violated: |M ∩ M_i| != 1 for factors {";
        for (std::size_t k = 0; k < offending.size(); ++k)
            msg += (k ? ", " : "") + std::to_string(offending[k]);
        msg += "}";
        throw TransversalError(std::move(msg), std::move(offending));
    }
    return sources;
}

} // namespace detail

/// The framework coloring with n+2 colors: edges of M_i minus its transversal
/// edge get color i, and the transversal matching splits by label class into
/// colors n (class 1) and n+1 (class 2). Preconditions are re-validated here
/// rather than trusted from the constructors.
inline EdgeColoring frame_coloring(const Factorization& f, const Permutation& m,
                                   const LabelPartition& part, const FrameOptions& opts = {}) {
    const int n = f.n;
    if (part.n != n)
        throw std::invalid_argument("frame_coloring: partition size mismatch");
    part.require_both_classes();
    if (opts.keep_full_factor && (*opts.keep_full_factor < 0 || *opts.keep_full_factor >= n))
        throw std::invalid_argument("frame_coloring: keep_full_factor out of range");

    const std::vector<int> sources = detail::transversal_sources(f, m);

    EdgeColoring coloring;
    coloring.n = n;
    coloring.num_colors = n + 2;
    coloring.construction = "frame";
    coloring.color.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);

    const auto place = [&](int u, int v, int color) {
        int& cell = coloring.at(u, v);
        if (cell != -1)
            throw std::logic_error("frame_coloring: edge colored twice");
        cell = color;
    };

    for (int i = 0; i < n; ++i) {
        const Permutation& factor = f.matchings[static_cast<std::size_t>(i)];
        const int skip = (opts.keep_full_factor && *opts.keep_full_factor == i)
                             ? -1
                             : sources[static_cast<std::size_t>(i)];
        for (int v = 0; v < n; ++v) {
            if (v == skip)
                continue;
            place(v, factor(v), i);
        }
    }
    const int kept_source =
        opts.keep_full_factor ? sources[static_cast<std::size_t>(*opts.keep_full_factor)] : -1;
    for (int v = 0; v < n; ++v) {
        if (v == kept_source)
            continue; // that transversal edge already carries its factor color
        place(v, m(v), part.in_class2(v) ? n + 1 : n);
    }
    for (int cell : coloring.color)
        if (cell == -1)
            throw std::logic_error("frame_coloring: uncolored edge left behind");
    return coloring;
}

/// I^(2) = {0, 1} for the K_{p,p} instance.
inline LabelPartition kpp_label_partition(int p) {
    return LabelPartition::from_class2(p, {0, 1});
}

/// I^(2) = {(0,1), (1,0)} ∪ {(z,z), (z,zx) : z != 0} for the K_{p^2,p^2}
/// instance; always of size 2p.
inline LabelPartition kp2_label_partition(const FieldContext& ctx) {
    const int p = ctx.p;
    std::vector<int> class2 = {encode_pair(0, 1, p), encode_pair(1, 0, p)};
    for (int z = 1; z < p; ++z) {
        class2.push_back(encode_pair(z, z, p));
        class2.push_back(encode_pair(z, static_cast<int>(static_cast<long long>(z) * ctx.x % p), p));
    }
    return LabelPartition::from_class2(p * p, class2);
}

/// Acyclic (p+2)-coloring of K_{p,p} from the cyclic family with transversal
/// a -> a*x and I^(2) = {0, 1}.
inline EdgeColoring color_kpp(const FieldContext& ctx) {
    const Factorization f = cyclic_factorization(ctx.p);
    const Permutation m = transversal_matching(FamilyKind::cyclic, ctx);
    FrameOptions opts;
    // At p = 3 the three non-fixed label cycles are exactly the three label
    // pairs, so no 2-class partition can split them all and the uniform
    // removal admits a two-colored cycle. Keeping M_0 whole (the second
    // transversal class shrinks to {(1 -> x)}) restores acyclicity there.
    if (ctx.p == 3)
        opts.keep_full_factor = 0;
    EdgeColoring coloring = frame_coloring(f, m, kpp_label_partition(ctx.p), opts);
    coloring.construction = "kpp";
    coloring.p = ctx.p;
    coloring.x = ctx.x;
    return coloring;
}

/// Acyclic (p^2+2)-coloring of K_{p^2,p^2} from the p^2 family. Requires
/// p >= 5; p = 3 builds only with allow_p3 (that instance is proper but not
/// acyclic, which the verifier demonstrates).
inline EdgeColoring color_kp2(const FieldContext& ctx, bool allow_p3 = false) {
    if (ctx.p < 5 && !allow_p3)
        throw std::invalid_argument(
            "color_kp2: p >= 5 required; p = 3 only with the explicit override");
    const Factorization f = p_squared_factorization(ctx);
    const Permutation m = transversal_matching(FamilyKind::p_squared, ctx);
    EdgeColoring coloring = frame_coloring(f, m, kp2_label_partition(ctx));
    coloring.construction = "kp2";
    coloring.p = ctx.p;
    coloring.x = ctx.x;
    return coloring;
}

struct PartitionViolation {
    int factor = 0;
    std::vector<int> cycle;
    int class1_count = 0;
    int class2_count = 0;
};

struct PartitionConditionReport {
    bool ok = true;
    long long cycles_checked = 0;
    std::vector<PartitionViolation> violations;
};

/// Checks the acyclicity-bearing condition of the framework: every cycle of
/// length >= 2 of inverse(m) ∘ M_i must contain labels from both classes.
inline PartitionConditionReport check_partition_condition(const Factorization& f,
                                                          const Permutation& m,
                                                          const LabelPartition& part) {
    if (part.n != f.n)
        throw std::invalid_argument("check_partition_condition: partition size mismatch");
    part.require_both_classes();
    detail::transversal_sources(f, m); // precondition: transversal holds

    PartitionConditionReport report;
    const Permutation m_inv = inverse(m);
    for (int i = 0; i < f.n; ++i) {
        const CycleDecomposition decomp =
            cycle_decomposition(compose(m_inv, f.matchings[static_cast<std::size_t>(i)]));
        for (const auto& cycle : decomp.cycles) {
            if (cycle.size() < 2)
                continue;
            ++report.cycles_checked;
            int class2 = 0;
            for (int label : cycle)
                class2 += part.in_class2(label) ? 1 : 0;
            const int class1 = static_cast<int>(cycle.size()) - class2;
            if (class1 == 0 || class2 == 0)
                report.violations.push_back({i, cycle, class1, class2});
        }
    }
    report.ok = report.violations.empty();
    return report;
}

/// Restriction of a coloring to the vertices outside drop_top/drop_bottom,
/// with surviving labels re-densified. A restriction of a proper acyclic
/// coloring stays proper and acyclic.
inline EdgeColoring derive_subcoloring(const EdgeColoring& c, const std::vector<int>& drop_top,
                                       const std::vector<int>& drop_bottom) {
    if (drop_top.size() != drop_bottom.size())
        throw std::invalid_argument("derive_subcoloring: must drop equally many on both sides");
    const auto survivors = [&](const std::vector<int>& dropped) {
        std::vector<char> gone(static_cast<std::size_t>(c.n), 0);
        for (int v : dropped) {
            if (v < 0 || v >= c.n)
                throw std::invalid_argument("derive_subcoloring: vertex " + std::to_string(v) +
                                            " out of range");
            if (gone[static_cast<std::size_t>(v)])
                throw std::invalid_argument("derive_subcoloring: vertex " + std::to_string(v) +
                                            " dropped twice");
            gone[static_cast<std::size_t>(v)] = 1;
        }
        std::vector<int> keep;
        for (int v = 0; v < c.n; ++v)
            if (!gone[static_cast<std::size_t>(v)])
                keep.push_back(v);
        return keep;
    };
    const std::vector<int> top = survivors(drop_top);
    const std::vector<int> bottom = survivors(drop_bottom);
    if (top.empty())
        throw std::invalid_argument("derive_subcoloring: cannot drop every vertex");

    EdgeColoring out;
    out.n = static_cast<int>(top.size());
    out.num_colors = c.num_colors;
    out.construction = "restriction";
    out.color.resize(static_cast<std::size_t>(out.n) * static_cast<std::size_t>(out.n));
    for (int u = 0; u < out.n; ++u)
        for (int v = 0; v < out.n; ++v)
            out.at(u, v) = c.at(top[static_cast<std::size_t>(u)], bottom[static_cast<std::size_t>(v)]);
    return out;
}

} // namespace kbip
