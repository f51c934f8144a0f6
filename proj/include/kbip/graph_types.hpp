#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Data types shared between the construction side and the verifier. The
// verifier must stay independent of construction code, so nothing in this
// header builds or colors anything.

namespace kbip {

/// Edge u -> v of K_{n,n}: u labels the top side, v the bottom side.
struct Edge {
    int top = 0;
    int bottom = 0;
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Two-class partition of the label set {0..n-1}; class ids are 1 and 2.
struct LabelPartition {
    int n = 0;
    std::vector<std::uint8_t> class_of; // length n, values 1 or 2

    static LabelPartition from_class2(int n, const std::vector<int>& class2_labels) {
        if (n < 1)
            throw std::invalid_argument("LabelPartition: n must be positive");
        LabelPartition part;
        part.n = n;
        part.class_of.assign(static_cast<std::size_t>(n), 1);
        for (int label : class2_labels) {
            if (label < 0 || label >= n)
                throw std::invalid_argument("LabelPartition: label " + std::to_string(label) +
                                            " out of range");
            part.class_of[static_cast<std::size_t>(label)] = 2;
        }
        part.require_both_classes();
        return part;
    }

    bool in_class2(int label) const {
        return class_of[static_cast<std::size_t>(label)] == 2;
    }

    int class2_size() const {
        int count = 0;
        for (auto c : class_of)
            count += (c == 2);
        return count;
    }

    void require_both_classes() const {
        const int c2 = class2_size();
        if (c2 == 0 || c2 == n)
            throw std::invalid_argument("LabelPartition: both classes must be non-empty");
    }
};

/// Total edge coloring of K_{n,n}. The color of (u -> v) lives at u*n + v.
/// construction/p/x are certificate metadata; verification never reads them.
struct EdgeColoring {
    int n = 0;
    int num_colors = 0;
    std::string construction;
    std::optional<int> p;
    std::optional<int> x;
    std::vector<int> color; // size n*n, values in [0, num_colors)

    int at(int u, int v) const {
        return color[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(v)];
    }
    int& at(int u, int v) {
        return color[static_cast<std::size_t>(u) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(v)];
    }
};

} // namespace kbip
