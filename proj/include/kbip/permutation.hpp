#pragma once

#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kbip {

/// Permutation of the dense label set {0..n-1}, stored as an image table.
/// Immutable after construction; all operations below are pure functions.
class Permutation {
public:
    /// Validates that `image` is a bijection on {0..n-1}.
    explicit Permutation(std::vector<int> image) : image_(std::move(image)) {
        const int n = size();
        if (n < 1)
            throw std::invalid_argument("Permutation: label set must be non-empty");
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        for (int v : image_) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("Permutation: image is not a bijection on {0.." +
                                            std::to_string(n - 1) + "}");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }

    static Permutation identity(int n) {
        if (n < 1)
            throw std::invalid_argument("Permutation: label set must be non-empty");
        std::vector<int> img(static_cast<std::size_t>(n));
        std::iota(img.begin(), img.end(), 0);
        return Permutation(std::move(img));
    }

    int size() const noexcept { return static_cast<int>(image_.size()); }
    int operator()(int label) const { return image_[static_cast<std::size_t>(label)]; }
    const std::vector<int>& image() const noexcept { return image_; }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> image_;
};

/// Builds a permutation from a label map; the map must be a bijection.
template <typename MapFn>
Permutation permutation_from_map(int n, MapFn&& fn) {
    if (n < 1)
        throw std::invalid_argument("permutation_from_map: n must be positive");
    std::vector<int> img(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        img[static_cast<std::size_t>(i)] = fn(i);
    return Permutation(std::move(img));
}

/// Composition with g applied first: result(i) == f(g(i)).
inline Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.size() != g.size())
        throw std::invalid_argument("compose: size mismatch (" + std::to_string(f.size()) +
                                    " vs " + std::to_string(g.size()) + ")");
    std::vector<int> img(static_cast<std::size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i)
        img[static_cast<std::size_t>(i)] = f(g(i));
    return Permutation(std::move(img));
}

inline Permutation inverse(const Permutation& f) {
    std::vector<int> img(static_cast<std::size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i)
        img[static_cast<std::size_t>(f(i))] = i;
    return Permutation(std::move(img));
}

/// s^-1 ∘ f ∘ s (s applied first); preserves the cycle-length multiset.
inline Permutation conjugate(const Permutation& f, const Permutation& s) {
    return compose(inverse(s), compose(f, s));
}

/// Labels fixed by f, in ascending order.
inline std::vector<int> fixed_points(const Permutation& f) {
    std::vector<int> fixed;
    for (int i = 0; i < f.size(); ++i)
        if (f(i) == i)
            fixed.push_back(i);
    return fixed;
}

/// Disjoint cycle decomposition in canonical form: every cycle starts at its
/// smallest label and cycles are sorted by leading label. Singleton cycles
/// (fixed points) are kept; rendering may suppress them.
struct CycleDecomposition {
    int n = 0;
    std::vector<std::vector<int>> cycles;
};

inline CycleDecomposition cycle_decomposition(const Permutation& f) {
    CycleDecomposition out;
    out.n = f.size();
    std::vector<char> seen(static_cast<std::size_t>(f.size()), 0);
    // Scanning labels in ascending order makes each cycle start at its
    // smallest element and orders cycles by leading label.
    for (int start = 0; start < f.size(); ++start) {
        if (seen[static_cast<std::size_t>(start)])
            continue;
        std::vector<int> cycle;
        int cur = start;
        do {
            seen[static_cast<std::size_t>(cur)] = 1;
            cycle.push_back(cur);
            cur = f(cur);
        } while (cur != start);
        out.cycles.push_back(std::move(cycle));
    }
    return out;
}

/// Rebuilds the permutation; the cycles must partition {0..n-1}.
inline Permutation to_permutation(const CycleDecomposition& d) {
    if (d.n < 1)
        throw std::invalid_argument("to_permutation: empty label set");
    std::vector<int> img(static_cast<std::size_t>(d.n), -1);
    for (const auto& cycle : d.cycles) {
        if (cycle.empty())
            throw std::invalid_argument("to_permutation: empty cycle");
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            const int from = cycle[k];
            const int to = cycle[(k + 1) % cycle.size()];
            if (from < 0 || from >= d.n)
                throw std::invalid_argument("to_permutation: label out of range");
            if (img[static_cast<std::size_t>(from)] != -1)
                throw std::invalid_argument("to_permutation: cycles are not disjoint");
            img[static_cast<std::size_t>(from)] = to;
        }
    }
    for (int v : img)
        if (v == -1)
            throw std::invalid_argument("to_permutation: cycles do not cover {0..n-1}");
    return Permutation(std::move(img));
}

inline bool is_full_cycle(const Permutation& f) {
    if (f.size() == 1)
        return true;
    int cur = f(0);
    int steps = 1;
    while (cur != 0) {
        cur = f(cur);
        ++steps;
    }
    return steps == f.size();
}

/// Cycle lengths in canonical decomposition order; sums to n.
inline std::vector<int> cycle_lengths(const Permutation& f) {
    std::vector<int> lengths;
    for (const auto& cycle : cycle_decomposition(f).cycles)
        lengths.push_back(static_cast<int>(cycle.size()));
    return lengths;
}

/// Formats a decomposition as "(0)(1 3 4 2)"; include_fixed=false drops
/// singleton cycles.
inline std::string format_cycles(const CycleDecomposition& d, bool include_fixed = true) {
    std::string out;
    for (const auto& cycle : d.cycles) {
        if (cycle.size() == 1 && !include_fixed)
            continue;
        out += '(';
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            if (k > 0)
                out += ' ';
            out += std::to_string(cycle[k]);
        }
        out += ')';
    }
    return out;
}

inline std::string format_cycles(const Permutation& f, bool include_fixed = true) {
    return format_cycles(cycle_decomposition(f), include_fixed);
}

/// Parses cycle notation such as "(0)(1 3 4 2)". The cycles must cover
/// {0..n-1} where n is the number of labels present; the result is
/// canonicalized.
inline CycleDecomposition parse_cycles(const std::string& text) {
    std::vector<std::vector<int>> cycles;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(')
            throw std::invalid_argument("parse_cycles: expected '(' at position " +
                                        std::to_string(i));
        ++i;
        std::vector<int> cycle;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!std::isdigit(static_cast<unsigned char>(text[i])))
                throw std::invalid_argument("parse_cycles: expected label at position " +
                                            std::to_string(i));
            int value = 0;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                value = value * 10 + (text[i] - '0');
                ++i;
            }
            cycle.push_back(value);
            skip_ws();
        }
        if (i >= text.size())
            throw std::invalid_argument("parse_cycles: unterminated cycle");
        ++i; // ')'
        if (cycle.empty())
            throw std::invalid_argument("parse_cycles: empty cycle");
        cycles.push_back(std::move(cycle));
        skip_ws();
    }
    if (cycles.empty())
        throw std::invalid_argument("parse_cycles: no cycles found");
    int n = 0;
    for (const auto& cycle : cycles)
        n += static_cast<int>(cycle.size());
    // Round-trip through the image table validates the partition and
    // canonicalizes rotation and cycle order.
    CycleDecomposition raw{n, std::move(cycles)};
    return cycle_decomposition(to_permutation(raw));
}

} // namespace kbip
