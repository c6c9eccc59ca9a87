#pragma once

#include <cstdint>

#include "fandec/errors.hpp"

namespace fandec {

// An edge of the complete k-partite graph: one endpoint in each of two
// distinct classes, canonically stored with class_a < class_b.  The global
// edge id is lexicographic in (class pair, vert_a, vert_b), which fixes the
// matrix/vector layouts everywhere downstream.
struct Edge {
    int class_a = 0;
    int vert_a = 0;
    int class_b = 0;
    int vert_b = 0;

    bool operator==(const Edge&) const = default;
};

inline Edge make_edge(int c1, int v1, int c2, int v2) {
    if (c1 == c2) throw argument_error("edge endpoints must lie in distinct classes");
    if (c1 < c2) return Edge{c1, v1, c2, v2};
    return Edge{c2, v2, c1, v1};
}

inline void check_edge(const Edge& e, int k, int n) {
    if (e.class_a < 0 || e.class_b >= k || e.class_a >= e.class_b || e.vert_a < 0 ||
        e.vert_a >= n || e.vert_b < 0 || e.vert_b >= n)
        throw argument_error("malformed edge for the given parameters");
}

/// Index of the unordered class pair (a,b), a < b, in lexicographic order.
inline int pair_index(int k, int a, int b) {
    return a * k - a * (a + 1) / 2 + (b - a - 1);
}

inline int num_pairs(int k) { return k * (k - 1) / 2; }

inline std::uint32_t edge_space(int k, int n) {
    return static_cast<std::uint32_t>(num_pairs(k)) * static_cast<std::uint32_t>(n) *
           static_cast<std::uint32_t>(n);
}

inline std::uint32_t edge_id(const Edge& e, int k, int n) {
    return (static_cast<std::uint32_t>(pair_index(k, e.class_a, e.class_b)) * n + e.vert_a) * n +
           e.vert_b;
}

inline Edge edge_from_id(std::uint32_t id, int k, int n) {
    int vb = static_cast<int>(id % n);
    id /= n;
    int va = static_cast<int>(id % n);
    int p = static_cast<int>(id / n);
    // invert pair_index
    int a = 0;
    while (p >= k - 1 - a) {
        p -= k - 1 - a;
        ++a;
    }
    return Edge{a, va, a + 1 + p, vb};
}

inline int vertex_id(int cls, int v, int n) { return cls * n + v; }

} // namespace fandec
