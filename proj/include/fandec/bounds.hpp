#pragma once

// Norm and threshold calculators.  Every float reported here is a rounding
// of an exact rational computed first; the rationals stay in the reports.

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fandec/errors.hpp"
#include "fandec/partite_graph.hpp"
#include "fandec/rational.hpp"
#include "fandec/scheme.hpp"

namespace fandec {

/// Exact coefficients of A^{-1} on A'_0..A'_4 for A = M + 2n K (k = 3),
/// assembled from A^{-1} = theta_0^{-1}E_0 + theta_1^{-1}E_1 +
/// theta_2^{-1}E_2 + eta^{-1}K with eta = theta_1 (so the E_1 term drops):
///   A^{-1} = (1/2n) I - (1/6n) E_0 + (1/2n) E_2.
inline std::array<Rat, 5> fan_inverse_coeffs_k3(int n) {
    if (n < 2) throw argument_error("fan_inverse_coeffs_k3 requires n >= 2");
    Matrix<Rat> e = idempotent_coeffs_k3(n);
    Rat half_eta = make_rat(Int(1), Int(2) * n);   // 1/(2n)
    Rat e0_fac = make_rat(Int(-1), Int(6) * n);    // 1/(3n) - 1/(2n)
    Rat e2_fac = half_eta;                         // 1/n - 1/(2n)
    std::array<Rat, 5> c;
    for (std::size_t r = 0; r < 5; ++r) {
        c[r] = e0_fac * e(0, r) + e2_fac * e(2, r);
        if (r == 0) c[r] += half_eta;
    }
    return c;
}

struct NormReport {
    int n = 0;
    Rat norm_exact;          // ||A^{-1}||_inf as an exact rational
    Rat scaled_exact;        // n * norm
    double inv_inf_norm = 0; // rounding of norm_exact
    double scaled = 0;       // rounding of scaled_exact
    double predicted_leading = 23.0 / 9.0;
};

/// Exact infinity norm of (M + 2nK)^{-1} for K_{n,n,n}: assembles the dense
/// inverse by relation class and takes the maximal absolute row sum.
inline NormReport inv_inf_norm_exact(int n) {
    if (n < 2) throw argument_error("inv_inf_norm_exact requires n >= 2");
    if (3L * n * n > 5000) throw resource_error("inv_inf_norm_exact: dense guard exceeded");
    std::array<Rat, 5> c = fan_inverse_coeffs_k3(n);
    SchemeParams p{3, n, 2};
    const std::uint32_t m = edge_space(3, n);
    std::vector<Edge> es(m);
    for (std::uint32_t id = 0; id < m; ++id) es[id] = edge_from_id(id, 3, n);
    Rat best(0);
    for (std::uint32_t e = 0; e < m; ++e) {
        Rat row(0);
        for (std::uint32_t f = 0; f < m; ++f)
            row += rat_abs(c[static_cast<std::size_t>(rel_index(relation_of(p, es[e], es[f])))]);
        if (row > best) best = row;
    }
    NormReport r;
    r.n = n;
    r.norm_exact = best;
    r.scaled_exact = best * n;
    r.inv_inf_norm = to_double(r.norm_exact);
    r.scaled = to_double(r.scaled_exact);
    return r;
}

struct ThresholdSet {
    Rat c_basic = make_rat(3, 80);
    double c_refined = (std::sqrt(409.0) - 17.0) / 80.0;
    Rat tau_basic = make_rat(77, 80);
    double tau_refined = 0.96; // strict upper label, not attained
    int k = 3, t = 2;
};

inline ThresholdSet thresholds_k3() { return ThresholdSet{}; }

/// The refined degree-deficiency inequality 28c/3 + (40c/3)^2/(1-40c/3) < 1,
/// evaluated exactly (requires 40c/3 < 1).
inline bool refined_feasible(const Rat& c) {
    Rat u = c * make_rat(40, 3);
    if (u >= 1) return false;
    Rat lhs = c * make_rat(28, 3) + u * u / (Rat(1) - u);
    return lhs < 1;
}

inline bool refined_feasible(double c) {
    Rat q(c); // dyadic, exact
    return refined_feasible(q);
}

struct ProdnormBound {
    Rat total;                  // 40c/3
    std::array<Rat, 5> breakdown; // per-relation row-sum contributions
};

/// Leading bound on ||A^{-1} dA||_inf and its per-relation split
/// (2c, 2c, 10c/9, 4c, 38c/9).
inline ProdnormBound prodnorm_bound(const Rat& c) {
    if (c < 0 || c > 1) throw argument_error("prodnorm_bound requires 0 <= c <= 1");
    ProdnormBound b;
    b.total = c * make_rat(40, 3);
    b.breakdown = {c * 2, c * 2, c * make_rat(10, 9), c * 4, c * make_rat(38, 9)};
    return b;
}

struct PerturbationReport {
    Int delta_inf;   // exact ||M[G] - M_G||_inf
    Rat c;           // degree deficiency of G
    Rat bound;       // 6 c n
    bool within = false;
};

/// Exact perturbation norm ||M[G] - M_G||_inf for a locally balanced
/// 3-partite G: per edge of G, each host triangle through it that is
/// missing from G contributes 1 + (number of its other two edges that
/// survive in G).
inline PerturbationReport perturbation_norm(const PartiteGraph& g) {
    if (g.k() != 3) throw argument_error("perturbation_norm is a 3-partite calculator");
    if (!g.is_locally_balanced())
        throw precondition_error("perturbation_norm requires a locally balanced graph");
    const int n = g.n();
    Int best(0);
    for (const Edge& e : g.edges()) {
        long row = 0;
        int third = 3 - e.class_a - e.class_b;
        for (int w = 0; w < n; ++w) {
            Edge f = make_edge(e.class_a, e.vert_a, third, w);
            Edge h = make_edge(e.class_b, e.vert_b, third, w);
            bool pf = g.has(f), ph = g.has(h);
            if (pf && ph) continue; // triangle survives in G
            row += 1 + (pf ? 1 : 0) + (ph ? 1 : 0);
        }
        if (Int(row) > best) best = row;
    }
    PerturbationReport r;
    r.delta_inf = best;
    r.c = g.min_degree_deficiency();
    r.bound = r.c * 6 * n;
    r.within = Rat(r.delta_inf) <= r.bound;
    return r;
}

/// Leading coefficient of ||A^{-1}||_inf for K_k fans:
/// 4 - (k^3 + k - 4) / (2 C(k,2)^2).
inline Rat clique_leading_coeff(int k) {
    if (k < 3) throw argument_error("clique_leading_coeff requires k >= 3");
    Int k3 = Int(k) * k * k;
    Int c2 = binom(k, 2);
    return Rat(4) - make_rat(k3 + k - 4, 2 * c2 * c2);
}

/// Missing-clique perturbation coefficient B(k): sharp constants for
/// k = 3, 4; the generic missing-clique count C(k,2)^2 beyond.
inline Int missing_clique_coeff(int k) {
    if (k < 3) throw argument_error("missing_clique_coeff requires k >= 3");
    if (k == 3) return Int(6);
    if (k == 4) return Int(24);
    Int c2 = binom(k, 2);
    return c2 * c2;
}

/// Fan-decomposition degree threshold 1 - 1/(2 B(k) L(k)); the k = 3 value
/// from this generic route is weaker than the dedicated thresholds_k3().
inline Rat tau_clique(int k) {
    Rat denom = Rat(2) * Rat(missing_clique_coeff(k)) * clique_leading_coeff(k);
    return Rat(1) - Rat(1) / denom;
}

struct HypergraphBound {
    Int drop_coeff;        // 2^t C(k,t)^2
    Rat pre_drop;          // C(k,t) sum_j C(k,j) / C(k-j,k-t)^2
    Rat c_threshold_order; // 1 / (2 * 2^t * C(k,t)^4)
};

/// Large-shift inverse-norm coefficients for t-uniform fans.
inline HypergraphBound hypergraph_bound(int k, int t) {
    if (t < 2 || t > k) throw argument_error("hypergraph_bound requires 2 <= t <= k");
    HypergraphBound b;
    Int ckt = binom(k, t);
    b.drop_coeff = ipow(2, static_cast<unsigned long>(t)) * ckt * ckt;
    Rat sum(0);
    for (int j = 0; j <= t; ++j) {
        Int d = binom(k - j, k - t);
        sum += make_rat(binom(k, j), d * d);
    }
    b.pre_drop = Rat(ckt) * sum;
    Int c4 = ckt * ckt * ckt * ckt;
    b.c_threshold_order = make_rat(Int(1), 2 * ipow(2, static_cast<unsigned long>(t)) * c4);
    return b;
}

/// sum_j C(k,j) C(k-j,k-t) = 2^t C(k,t).
inline bool binomial_identity_check(int k, int t) {
    Int s(0);
    for (int j = 0; j <= t; ++j) s += binom(k, j) * binom(k - j, k - t);
    return s == ipow(2, static_cast<unsigned long>(t)) * binom(k, t);
}

} // namespace fandec
