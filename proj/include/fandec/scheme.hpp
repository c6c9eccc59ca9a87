#pragma once

// Second level of the Hamming lattice: the association scheme on edges of
// the complete k-partite graph (rank-2 subwords).  Everything here is exact
// integer/rational arithmetic; these tables are the oracle for the floating
// point solver downstream.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "fandec/edge.hpp"
#include "fandec/errors.hpp"
#include "fandec/krawtchouk.hpp"
#include "fandec/matrix.hpp"
#include "fandec/rational.hpp"

namespace fandec {

// Associate classes for two edges e, f of the complete k-partite graph:
//   0 identical
//   1 same class pair, sharing one endpoint
//   2 same class pair, disjoint
//   3 three classes touched, sharing one endpoint
//   4 three classes touched, disjoint
//   5 four classes touched (k >= 4 only)
enum class EdgeRelation : int {
    identical = 0,
    same_pair_adjacent = 1,
    same_pair_disjoint = 2,
    three_classes_adjacent = 3,
    three_classes_disjoint = 4,
    four_classes = 5,
};

inline int rel_index(EdgeRelation r) { return static_cast<int>(r); }

/// Number of associate classes: 5 for k = 3, 6 for k >= 4.
inline int relation_count(int k) { return k >= 4 ? 6 : 5; }

inline EdgeRelation relation_of(const SchemeParams& p, const Edge& e, const Edge& f) {
    p.validate();
    if (p.k < 3) throw argument_error("relation_of requires k >= 3");
    check_edge(e, p.k, p.n);
    check_edge(f, p.k, p.n);
    if (e == f) return EdgeRelation::identical;
    if (e.class_a == f.class_a && e.class_b == f.class_b) {
        int shared = (e.vert_a == f.vert_a ? 1 : 0) + (e.vert_b == f.vert_b ? 1 : 0);
        return shared == 1 ? EdgeRelation::same_pair_adjacent : EdgeRelation::same_pair_disjoint;
    }
    // count shared classes and whether the shared-class endpoints coincide
    int shared_classes = 0;
    bool share_vertex = false;
    auto consider = [&](int ec, int ev, int fc, int fv) {
        if (ec == fc) {
            ++shared_classes;
            if (ev == fv) share_vertex = true;
        }
    };
    consider(e.class_a, e.vert_a, f.class_a, f.vert_a);
    consider(e.class_a, e.vert_a, f.class_b, f.vert_b);
    consider(e.class_b, e.vert_b, f.class_a, f.vert_a);
    consider(e.class_b, e.vert_b, f.class_b, f.vert_b);
    if (shared_classes == 0) return EdgeRelation::four_classes;
    return share_vertex ? EdgeRelation::three_classes_adjacent
                        : EdgeRelation::three_classes_disjoint;
}

/// Degrees nu_0..nu_5 of the relations (last entry 0 when k = 3).
inline std::vector<Int> relation_degrees(int k, int n) {
    std::vector<Int> nu(6);
    nu[0] = 1;
    nu[1] = 2 * (n - 1);
    nu[2] = Int(n - 1) * (n - 1);
    nu[3] = 2 * (k - 2) * n;
    nu[4] = Int(2 * (k - 2) * n) * (n - 1);
    nu[5] = binom(k - 2, 2) * n * n;
    return nu;
}

// Structure constants a^h_{ij}, degrees, and idempotent coefficients for
// the scheme at t = 2.
struct SchemeTable {
    SchemeParams params;
    int classes = 5;
    std::vector<Int> a;        // flattened (h, i, j)
    std::vector<Int> degrees;  // nu_0 .. nu_{classes-1}
    std::vector<Int> eigenvalues;  // theta_0, theta_1, theta_2
    Matrix<Rat> idempotent_coeffs; // 3 x classes, row j = coefficients of E_j

    const Int& stc(int h, int i, int j) const {
        return a[static_cast<std::size_t>((h * classes + i) * classes + j)];
    }
    Int& stc(int h, int i, int j) {
        return a[static_cast<std::size_t>((h * classes + i) * classes + j)];
    }
};

/// Idempotent coefficients for k = 3 on A'_0..A'_4 (rows E_0, E_1, E_2).
inline Matrix<Rat> idempotent_coeffs_k3(int n) {
    if (n < 2) throw argument_error("idempotent_coeffs_k3 requires n >= 2");
    Int n2 = Int(n) * n;
    Matrix<Rat> m(3, 5);
    for (int i = 0; i < 5; ++i) m(0, i) = make_rat(Int(1), 3 * n2);
    m(1, 0) = make_rat(Int(n - 1), n2);
    m(1, 1) = make_rat(Int(n - 2), 2 * n2);
    m(1, 2) = make_rat(Int(-1), n2);
    m(1, 3) = make_rat(Int(n - 1), 2 * n2);
    m(1, 4) = make_rat(Int(-1), 2 * n2);
    m(2, 0) = make_rat(Int(n - 1) * (n - 1), n2);
    m(2, 1) = make_rat(Int(-(n - 1)), n2);
    m(2, 2) = make_rat(Int(1), n2);
    m(2, 3) = Rat(0);
    m(2, 4) = Rat(0);
    return m;
}

namespace detail {

/// F_s(h,i) = n^h (n-1)^i sum_l C(h, i-l) C(2s, l), zero when h or i is out
/// of range (generating-function convention).
inline Int fs_count(int n, int s, int h, int i) {
    if (h < 0 || i < 0) return Int(0);
    Int sum(0);
    for (int l = 0; l <= 2 * s; ++l) sum += binom(h, i - l) * binom(2 * s, l);
    return ipow(n, static_cast<unsigned long>(h)) * ipow(n - 1, static_cast<unsigned long>(i)) *
           sum;
}

} // namespace detail

/// Per-relation coefficients of W A_i W^T at level t = 2, in relation order
/// A'_0..A'_5 (the A'_5 entry vanishes for k = 3).
inline std::vector<Rat> waw_expansion_t2(const SchemeParams& p, int i) {
    p.validate();
    if (p.t != 2) throw argument_error("waw_expansion_t2 requires t = 2");
    if (p.k < 3) throw argument_error("waw_expansion_t2 requires k >= 3");
    if (i < 0 || i > p.k) throw argument_error("distance out of range");
    std::vector<Rat> c(6);
    c[0] = Rat(detail::fs_count(p.n, 0, p.k - 2, i));
    c[1] = Rat(detail::fs_count(p.n, 0, p.k - 2, i - 1));
    c[2] = Rat(detail::fs_count(p.n, 0, p.k - 2, i - 2));
    c[3] = Rat(detail::fs_count(p.n, 1, p.k - 3, i));
    c[4] = Rat(detail::fs_count(p.n, 1, p.k - 3, i - 1));
    c[5] = Rat(detail::fs_count(p.n, 2, p.k - 4, i));
    return c;
}

/// Constant row sum of W A_i W^T: C(k,t) C(k,i) n^{k-t} (n-1)^i.
inline Int waw_rowsum(const SchemeParams& p, int i) {
    p.validate();
    if (i < 0 || i > p.k) throw argument_error("distance out of range");
    return binom(p.k, p.t) * binom(p.k, i) * ipow(p.n, static_cast<unsigned long>(p.k - p.t)) *
           ipow(p.n - 1, static_cast<unsigned long>(i));
}

/// Nonzero eigenvalues theta_j = C(k-j, k-t) n^{k-t} of M = W W^T with
/// multiplicities C(k,j)(n-1)^j for j = 0..t, followed by the kernel pair
/// (0, #rank-t subwords - sum of the above).
inline std::vector<std::pair<Int, Int>> eigenvalues_M(const SchemeParams& p) {
    p.validate();
    std::vector<std::pair<Int, Int>> out;
    Int total_mult(0);
    for (int j = 0; j <= p.t; ++j) {
        Int theta = binom(p.k - j, p.k - p.t) * ipow(p.n, static_cast<unsigned long>(p.k - p.t));
        Int mult = binom(p.k, j) * ipow(p.n - 1, static_cast<unsigned long>(j));
        out.emplace_back(theta, mult);
        total_mult += mult;
    }
    Int dim = binom(p.k, p.t) * ipow(p.n, static_cast<unsigned long>(p.t));
    out.emplace_back(Int(0), dim - total_mult);
    return out;
}

/// Idempotent coefficients for general k >= 3 at t = 2, derived from
/// E'_j = theta_j^{-1} W E_j W^T and the per-relation expansion of W A_i W^T:
///   q_{j,r} = (sum_i kappa_j(i) coeff_r(i)) / (theta_j n^k).
/// Reproduces the k = 3 table exactly.
inline Matrix<Rat> idempotent_coeffs_t2(const SchemeParams& p) {
    p.validate();
    if (p.t != 2) throw argument_error("idempotent_coeffs_t2 requires t = 2");
    if (p.k < 3) throw argument_error("idempotent_coeffs_t2 requires k >= 3");
    Int nk = ipow(p.n, static_cast<unsigned long>(p.k));
    std::vector<std::vector<Rat>> coef;
    for (int i = 0; i <= p.k; ++i) coef.push_back(waw_expansion_t2(p, i));
    Matrix<Rat> q(3, 6);
    for (int j = 0; j <= 2; ++j) {
        Int theta = binom(p.k - j, p.k - 2) * ipow(p.n, static_cast<unsigned long>(p.k - 2));
        for (int r = 0; r < 6; ++r) {
            Int acc(0);
            for (int i = 0; i <= p.k; ++i)
                acc += krawtchouk(p, j, i) *
                       coef[static_cast<std::size_t>(i)][static_cast<std::size_t>(r)].get_num();
            q(static_cast<std::size_t>(j), static_cast<std::size_t>(r)) =
                make_rat(acc, theta * nk);
        }
    }
    return q;
}

namespace detail {

inline void check_dense_guard(const SchemeParams& p, const char* what) {
    long guard = static_cast<long>(p.k) * num_pairs(p.k) * p.n * p.n;
    if (guard > 20000) throw resource_error(std::string(what) + ": dense size guard exceeded");
}

/// Dense 0/1 adjacency matrix of relation r over all edges.
inline Matrix<long long> relation_matrix(const SchemeParams& p, int r) {
    const std::uint32_t m = edge_space(p.k, p.n);
    std::vector<Edge> es(m);
    for (std::uint32_t id = 0; id < m; ++id) es[id] = edge_from_id(id, p.k, p.n);
    Matrix<long long> a(m, m);
    for (std::uint32_t x = 0; x < m; ++x)
        for (std::uint32_t y = 0; y < m; ++y)
            a(x, y) = rel_index(relation_of(p, es[x], es[y])) == r ? 1 : 0;
    return a;
}

} // namespace detail

/// Structure constants, degrees, eigenvalues, idempotent coefficients at
/// t = 2.  k = 3 uses the closed forms (polynomials in n); k >= 4 counts
/// from representative pairs under the dense-size guard.
inline SchemeTable build_scheme_table(const SchemeParams& p) {
    p.validate();
    if (p.t != 2) throw unsupported_error("scheme tables are only built for t = 2");
    if (p.k < 3) throw argument_error("build_scheme_table requires k >= 3");

    SchemeTable tbl;
    tbl.params = p;
    tbl.classes = relation_count(p.k);
    const int R = tbl.classes;
    tbl.a.assign(static_cast<std::size_t>(R * R * R), Int(0));
    std::vector<Int> nu = relation_degrees(p.k, p.n);
    tbl.degrees.assign(nu.begin(), nu.begin() + R);
    for (int j = 0; j <= 2; ++j)
        tbl.eigenvalues.push_back(binom(p.k - j, p.k - 2) *
                                  ipow(p.n, static_cast<unsigned long>(p.k - 2)));

    if (p.k == 3) {
        const long n = p.n;
        // trivial slices: a^h_{0j} = delta_{hj}, a^h_{i0} = delta_{ih}
        for (int h = 0; h < R; ++h) {
            tbl.stc(h, 0, h) = 1;
            tbl.stc(h, h, 0) = 1;
        }
        auto set = [&](int h, int i, int j, Int v) {
            tbl.stc(h, i, j) = v;
            tbl.stc(h, j, i) = v;
        };
        set(0, 1, 1, Int(2 * n - 2));
        set(0, 2, 2, Int(n - 1) * (n - 1));
        set(0, 3, 3, Int(2 * n));
        set(0, 4, 4, Int(2 * n) * (n - 1));
        set(1, 1, 1, Int(n - 2));
        set(1, 1, 2, Int(n - 1));
        set(1, 2, 2, Int(n - 1) * (n - 2));
        set(1, 3, 3, Int(n));
        set(1, 3, 4, Int(n));
        set(1, 4, 4, Int(n) * (2 * n - 3));
        set(2, 1, 1, Int(2));
        set(2, 1, 2, Int(2 * n - 4));
        set(2, 2, 2, Int(n - 2) * (n - 2));
        set(2, 3, 4, Int(2 * n));
        set(2, 4, 4, Int(n) * (2 * n - 4));
        set(3, 1, 3, Int(n - 1));
        set(3, 1, 4, Int(n - 1));
        set(3, 2, 4, Int(n - 1) * (n - 1));
        set(3, 3, 3, Int(1));
        set(3, 3, 4, Int(n - 1));
        set(3, 4, 4, Int(n - 1) * (n - 1));
        set(4, 1, 3, Int(1));
        set(4, 1, 4, Int(2 * n - 3));
        set(4, 2, 3, Int(n - 1));
        set(4, 2, 4, Int(n - 1) * (n - 2));
        set(4, 3, 3, Int(1));
        set(4, 3, 4, Int(n - 1));
        set(4, 4, 4, Int(n - 1) * (n - 1));
        tbl.idempotent_coeffs = idempotent_coeffs_k3(p.n);
        return tbl;
    }

    // k >= 4: count around one representative pair per relation.  The scheme
    // property (verified separately) makes the choice of representatives
    // immaterial.
    detail::check_dense_guard(p, "build_scheme_table");
    const Edge e0 = Edge{0, 0, 1, 0};
    std::array<Edge, 6> reps = {
        e0,
        Edge{0, 0, 1, 1},
        Edge{0, 1, 1, 1},
        Edge{1, 0, 2, 0},
        Edge{1, 1, 2, 0},
        Edge{2, 0, 3, 0},
    };
    const std::uint32_t m = edge_space(p.k, p.n);
    for (int h = 0; h < R; ++h) {
        const Edge& f = reps[static_cast<std::size_t>(h)];
        if (rel_index(relation_of(p, e0, f)) != h)
            throw argument_error("internal: bad representative pair");
        for (std::uint32_t id = 0; id < m; ++id) {
            Edge z = edge_from_id(id, p.k, p.n);
            int i = rel_index(relation_of(p, e0, z));
            int j = rel_index(relation_of(p, z, f));
            tbl.stc(h, i, j) += 1;
        }
    }
    tbl.idempotent_coeffs = idempotent_coeffs_t2(p);
    return tbl;
}

/// Dense confirmation that A'_i A'_j = sum_h a^h_{ij} A'_h holds entrywise
/// for every pair (i, j), using exact integer products over all edges.
inline bool verify_structure_constants(const SchemeParams& p) {
    p.validate();
    if (p.t != 2) throw unsupported_error("verify_structure_constants requires t = 2");
    if (p.k < 3) throw argument_error("verify_structure_constants requires k >= 3");
    detail::check_dense_guard(p, "verify_structure_constants");

    SchemeTable tbl = build_scheme_table(p);
    const int R = tbl.classes;
    const std::uint32_t m = edge_space(p.k, p.n);
    std::vector<Edge> es(m);
    for (std::uint32_t id = 0; id < m; ++id) es[id] = edge_from_id(id, p.k, p.n);
    std::vector<Matrix<long long>> adj;
    adj.reserve(static_cast<std::size_t>(R));
    for (int r = 0; r < R; ++r) adj.push_back(detail::relation_matrix(p, r));

    std::vector<int> rel(static_cast<std::size_t>(m) * m);
    for (std::uint32_t x = 0; x < m; ++x)
        for (std::uint32_t y = 0; y < m; ++y)
            rel[static_cast<std::size_t>(x) * m + y] = rel_index(relation_of(p, es[x], es[y]));

    for (int i = 0; i < R; ++i) {
        for (int j = i; j < R; ++j) {
            Matrix<long long> prod =
                adj[static_cast<std::size_t>(i)] * adj[static_cast<std::size_t>(j)];
            for (std::uint32_t x = 0; x < m; ++x)
                for (std::uint32_t y = 0; y < m; ++y) {
                    int h = rel[static_cast<std::size_t>(x) * m + y];
                    if (Int(static_cast<long>(prod(x, y))) != tbl.stc(h, i, j)) return false;
                }
        }
    }
    return true;
}

/// Dense exact verification of the t = 2 idempotents: with D clearing all
/// coefficient denominators and P_j = D E'_j,
///   P_i P_j = delta_{ij} D P_i,  M P_j = theta_j P_j,  K = D I - sum P_j,
///   K^2 = D K,  M K = 0,  tr(P_j) = D C(k,j)(n-1)^j.
inline bool verify_idempotents(const SchemeParams& p) {
    p.validate();
    if (p.t != 2) throw unsupported_error("verify_idempotents requires t = 2");
    if (p.k < 3) throw argument_error("verify_idempotents requires k >= 3");
    detail::check_dense_guard(p, "verify_idempotents");

    Matrix<Rat> q = idempotent_coeffs_t2(p);
    Int d(1);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t r = 0; r < 6; ++r)
            mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q(j, r).get_den().get_mpz_t());

    const std::uint32_t m = edge_space(p.k, p.n);
    std::vector<Edge> es(m);
    for (std::uint32_t id = 0; id < m; ++id) es[id] = edge_from_id(id, p.k, p.n);

    // scaled idempotents and M = n^{k-2} A'_0 + n^{k-3} A'_3 + n^{k-4} A'_5
    std::array<Matrix<Int>, 3> pj;
    for (auto& mat : pj) mat = Matrix<Int>(m, m);
    Matrix<Int> mm(m, m);
    Int mdiag = ipow(p.n, static_cast<unsigned long>(p.k - 2));
    Int m3 = ipow(p.n, static_cast<unsigned long>(p.k - 3));
    Int m5 = p.k >= 4 ? ipow(p.n, static_cast<unsigned long>(p.k - 4)) : Int(0);
    for (std::uint32_t x = 0; x < m; ++x)
        for (std::uint32_t y = 0; y < m; ++y) {
            int r = rel_index(relation_of(p, es[x], es[y]));
            for (std::size_t j = 0; j < 3; ++j) {
                Rat scaled = q(j, static_cast<std::size_t>(r)) * Rat(d);
                pj[j](x, y) = scaled.get_num(); // denominator divides d
            }
            if (r == 0)
                mm(x, y) = mdiag;
            else if (r == 3)
                mm(x, y) = m3;
            else if (r == 5)
                mm(x, y) = m5;
        }

    std::array<Int, 3> theta;
    for (int j = 0; j <= 2; ++j)
        theta[static_cast<std::size_t>(j)] =
            binom(p.k - j, p.k - 2) * ipow(p.n, static_cast<unsigned long>(p.k - 2));

    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i; j < 3; ++j) {
            Matrix<Int> prod = pj[i] * pj[j];
            Matrix<Int> want = pj[i];
            want *= (i == j ? d : Int(0));
            if (!(prod == want)) return false;
        }
        Matrix<Int> mp = mm * pj[i];
        Matrix<Int> tp = pj[i];
        tp *= theta[i];
        if (!(mp == tp)) return false;
        Int tr(0);
        for (std::uint32_t x = 0; x < m; ++x) tr += pj[i](x, x);
        if (tr != d * binom(p.k, static_cast<long>(i)) *
                      ipow(p.n - 1, static_cast<unsigned long>(i)))
            return false;
    }

    Matrix<Int> kd = Matrix<Int>::identity(m, d);
    for (std::size_t j = 0; j < 3; ++j) kd -= pj[j];
    Matrix<Int> k2 = kd * kd;
    Matrix<Int> kds = kd;
    kds *= d;
    if (!(k2 == kds)) return false;
    if (!(mm * kd).is_zero()) return false;
    return true;
}

} // namespace fandec
