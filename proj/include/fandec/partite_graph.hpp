#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fandec/edge.hpp"
#include "fandec/errors.hpp"
#include "fandec/rational.hpp"

namespace fandec {

// A triangle with one vertex in each of three distinct classes, stored as
// global vertex ids (class * n + index) in increasing class order.
struct Triangle {
    std::array<int, 3> v{};
    bool operator==(const Triangle&) const = default;
};

// Balanced k-partite graph on k*n vertices, as a subgraph of the complete
// multipartite graph.  Only cross-class pairs are representable; the edge
// mask is one byte per unordered pair and a per-vertex per-class degree
// table is kept in sync with it.
class PartiteGraph {
public:
    static PartiteGraph complete(int k, int n) { return PartiteGraph(k, n, true); }
    static PartiteGraph empty_graph(int k, int n) { return PartiteGraph(k, n, false); }

    int k() const { return k_; }
    int n() const { return n_; }
    std::uint32_t edge_space_size() const { return edge_space(k_, n_); }
    std::size_t edge_count() const { return edge_count_; }

    bool has_id(std::uint32_t id) const { return present_[id] != 0; }
    bool has(const Edge& e) const {
        check_edge(e, k_, n_);
        return has_id(edge_id(e, k_, n_));
    }

    void set_edge(const Edge& e, bool on) {
        check_edge(e, k_, n_);
        std::uint32_t id = edge_id(e, k_, n_);
        if ((present_[id] != 0) == on) return;
        present_[id] = on ? 1 : 0;
        int d = on ? 1 : -1;
        deg_at(e.class_a, e.vert_a, e.class_b) += d;
        deg_at(e.class_b, e.vert_b, e.class_a) += d;
        edge_count_ += on ? 1 : -1;
    }
    void add(const Edge& e) { set_edge(e, true); }
    void remove(const Edge& e) { set_edge(e, false); }

    /// Neighbors of (cls, v) inside foreign class c.
    int degree(int cls, int v, int c) const { return deg_at(cls, v, c); }

    /// Total degree of vertex (cls, v).
    int degree(int cls, int v) const {
        int d = 0;
        for (int c = 0; c < k_; ++c) d += deg_at(cls, v, c);
        return d;
    }

    int min_degree() const {
        int best = (k_ - 1) * n_;
        for (int c = 0; c < k_; ++c)
            for (int v = 0; v < n_; ++v) best = std::min(best, degree(c, v));
        return best;
    }

    /// Every vertex sees the same number of neighbors in each foreign class.
    bool is_locally_balanced() const {
        for (int c = 0; c < k_; ++c)
            for (int v = 0; v < n_; ++v) {
                int ref = -1;
                for (int f = 0; f < k_; ++f) {
                    if (f == c) continue;
                    if (ref < 0)
                        ref = deg_at(c, v, f);
                    else if (deg_at(c, v, f) != ref)
                        return false;
                }
            }
        return true;
    }

    /// Smallest c with delta(G) >= (1-c)(k-1)n, i.e. 1 - delta/((k-1)n).
    Rat min_degree_deficiency() const {
        return Rat(1) - make_rat(Int(min_degree()), Int(k_ - 1) * n_);
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(edge_count_);
        const std::uint32_t m = edge_space_size();
        for (std::uint32_t id = 0; id < m; ++id)
            if (present_[id]) out.push_back(edge_from_id(id, k_, n_));
        return out;
    }

    /// Triangles across all class triples, lexicographic in (classes, verts).
    std::vector<Triangle> triangles() const {
        std::vector<Triangle> out;
        for (int a = 0; a < k_; ++a)
            for (int b = a + 1; b < k_; ++b)
                for (int c = b + 1; c < k_; ++c)
                    for (int u = 0; u < n_; ++u) {
                        for (int v = 0; v < n_; ++v) {
                            if (!has_id(edge_id(Edge{a, u, b, v}, k_, n_))) continue;
                            for (int w = 0; w < n_; ++w) {
                                if (has_id(edge_id(Edge{a, u, c, w}, k_, n_)) &&
                                    has_id(edge_id(Edge{b, v, c, w}, k_, n_)))
                                    out.push_back(Triangle{
                                        {vertex_id(a, u, n_), vertex_id(b, v, n_),
                                         vertex_id(c, w, n_)}});
                            }
                        }
                    }
        return out;
    }

    /// m-cliques with one vertex in each class of an m-subset of classes,
    /// in the same canonical order as triangles().
    std::vector<std::vector<int>> cliques(int m) const {
        if (m < 2 || m > k_) throw argument_error("clique size out of range");
        std::vector<std::vector<int>> out;
        std::vector<int> cls(static_cast<std::size_t>(m));
        std::vector<int> pick(static_cast<std::size_t>(m));
        // iterate class subsets
        for (int i = 0; i < m; ++i) cls[static_cast<std::size_t>(i)] = i;
        while (true) {
            extend_cliques(cls, pick, 0, out);
            int i = m - 1;
            while (i >= 0 && cls[static_cast<std::size_t>(i)] == k_ - m + i) --i;
            if (i < 0) break;
            ++cls[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                cls[static_cast<std::size_t>(j)] = cls[static_cast<std::size_t>(j - 1)] + 1;
        }
        return out;
    }

    PartiteGraph complement() const {
        PartiteGraph g = empty_graph(k_, n_);
        const std::uint32_t m = edge_space_size();
        for (std::uint32_t id = 0; id < m; ++id)
            if (!present_[id]) g.set_edge(edge_from_id(id, k_, n_), true);
        return g;
    }

    bool operator==(const PartiteGraph& o) const {
        return k_ == o.k_ && n_ == o.n_ && present_ == o.present_;
    }

private:
    PartiteGraph(int k, int n, bool complete_mask)
        : k_(k), n_(n), present_(edge_space(k, n), complete_mask ? 1 : 0),
          deg_(static_cast<std::size_t>(k) * n * k, complete_mask ? n : 0),
          edge_count_(complete_mask ? edge_space(k, n) : 0) {
        if (k < 3) throw argument_error("partite graphs need k >= 3 classes");
        if (n < 1) throw argument_error("partite graphs need n >= 1");
        if (complete_mask)
            for (int c = 0; c < k; ++c)
                for (int v = 0; v < n; ++v) deg_at(c, v, c) = 0;
    }

    int& deg_at(int cls, int v, int c) {
        return deg_[(static_cast<std::size_t>(cls) * n_ + v) * k_ + c];
    }
    const int& deg_at(int cls, int v, int c) const {
        return deg_[(static_cast<std::size_t>(cls) * n_ + v) * k_ + c];
    }

    void extend_cliques(const std::vector<int>& cls, std::vector<int>& pick, int depth,
                        std::vector<std::vector<int>>& out) const {
        const int m = static_cast<int>(cls.size());
        if (depth == m) {
            std::vector<int> q(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                q[static_cast<std::size_t>(i)] =
                    vertex_id(cls[static_cast<std::size_t>(i)], pick[static_cast<std::size_t>(i)],
                              n_);
            out.push_back(std::move(q));
            return;
        }
        for (int v = 0; v < n_; ++v) {
            bool ok = true;
            for (int i = 0; i < depth && ok; ++i)
                ok = has_id(edge_id(Edge{cls[static_cast<std::size_t>(i)],
                                         pick[static_cast<std::size_t>(i)],
                                         cls[static_cast<std::size_t>(depth)], v},
                                    k_, n_));
            if (!ok) continue;
            pick[static_cast<std::size_t>(depth)] = v;
            extend_cliques(cls, pick, depth + 1, out);
        }
    }

    int k_, n_;
    std::vector<std::uint8_t> present_;
    std::vector<int> deg_;
    std::size_t edge_count_;
};

inline PartiteGraph complete_multipartite(int k, int n) { return PartiteGraph::complete(k, n); }

inline std::vector<Triangle> enumerate_triangles(const PartiteGraph& g) { return g.triangles(); }

inline std::vector<std::vector<int>> enumerate_cliques(const PartiteGraph& g, int m) {
    return g.cliques(m);
}

inline PartiteGraph partite_complement(const PartiteGraph& g) { return g.complement(); }

// --- graph file format -----------------------------------------------------
// header "partite k n", then one line "c1 v1 c2 v2" per present edge in
// canonical order.  Round-trips bit-exactly.

inline void write_graph(std::ostream& os, const PartiteGraph& g) {
    os << "partite " << g.k() << ' ' << g.n() << '\n';
    for (const Edge& e : g.edges())
        os << e.class_a << ' ' << e.vert_a << ' ' << e.class_b << ' ' << e.vert_b << '\n';
}

inline PartiteGraph read_graph(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw parse_error("graph file: empty input");
    std::istringstream head(line);
    std::string tag;
    int k = 0, n = 0;
    if (!(head >> tag >> k >> n) || tag != "partite")
        throw parse_error("graph file: expected header 'partite k n'");
    if (k < 3 || n < 1) throw parse_error("graph file: invalid k or n");
    PartiteGraph g = PartiteGraph::empty_graph(k, n);
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        int c1, v1, c2, v2;
        if (!(ls >> c1)) continue; // blank line
        std::string extra;
        if (!(ls >> v1 >> c2 >> v2) || (ls >> extra))
            throw parse_error("graph file: expected 'c1 v1 c2 v2' per edge line");
        Edge e;
        try {
            e = make_edge(c1, v1, c2, v2);
            check_edge(e, k, n);
        } catch (const argument_error& ex) {
            throw parse_error(std::string("graph file: ") + ex.what());
        }
        if (g.has(e)) throw parse_error("graph file: duplicate edge");
        g.add(e);
    }
    return g;
}

inline PartiteGraph parse_graph(const std::string& text) {
    std::istringstream is(text);
    return read_graph(is);
}

} // namespace fandec
