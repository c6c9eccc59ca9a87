#pragma once

// Fan systems: M_G x = 1 solved through the kernel-shifted operator
// A_G = M_G + eta K[G], where K projects onto ker(M) of the complete
// multipartite host graph.  The shift leaves the unshifted solution intact
// (A_G is applied matrix-free; K has exact per-relation coefficients).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "fandec/edge.hpp"
#include "fandec/errors.hpp"
#include "fandec/matrix.hpp"
#include "fandec/partite_graph.hpp"
#include "fandec/scheme.hpp"

namespace fandec {

struct SolverConfig {
    double solve_tol = 1e-10;    // infinity-norm residual target, b = 1
    double cert_tol = 1e-8;      // certification tolerance
    double eta_multiplier = 1.0; // shift = multiplier * theta_1
    std::size_t dense_cutoff = 512;
    std::size_t max_iterations = 2000;
};

enum class SolveStatus {
    ok,
    iteration_limit, // residual stagnated or cap reached; best iterate kept
    breakdown,       // conjugate-direction breakdown (operator not PD enough)
    singular,        // dense factorization failed
};

struct FanWeights {
    std::vector<double> values; // indexed by E(G) in canonical edge order
    double eta = 0.0;
    std::size_t iterations = 0;
    double final_residual = std::numeric_limits<double>::quiet_NaN();
};

struct TriangleWeights {
    std::vector<double> values; // indexed by T(G) (k-cliques) canonically
};

struct SolveReport {
    double fan_residual_inf = std::numeric_limits<double>::quiet_NaN();
    double unshifted_residual_inf = std::numeric_limits<double>::quiet_NaN();
    double decomposition_residual_inf = std::numeric_limits<double>::quiet_NaN();
    double min_triangle_weight = std::numeric_limits<double>::quiet_NaN();
    double min_fan_weight = std::numeric_limits<double>::quiet_NaN();
    bool certified = false;
    SolveStatus status = SolveStatus::ok;
    std::size_t iterations = 0;
    double eta = 0.0;
    bool dense_path = false;
};

struct SolveResult {
    FanWeights fan;
    TriangleWeights lifted; // clamped copy used for certification
    SolveReport report;
};

namespace detail {

// Per-relation coefficients of the kernel projector K = I - E_0 - E_1 - E_2
// over the complete host graph, as doubles for the solver hot path:
// K(e,f) = delta_{ef} - wq[rel(e,f)].
struct KernelWeights {
    int k = 3, n = 2;
    std::array<double, 6> wq{};

    static KernelWeights make(int k, int n) {
        KernelWeights kw;
        kw.k = k;
        kw.n = n;
        Matrix<Rat> q = idempotent_coeffs_t2(SchemeParams{k, n, 2});
        for (int r = 0; r < 6; ++r) {
            Rat s = q(0, static_cast<std::size_t>(r)) + q(1, static_cast<std::size_t>(r)) +
                    q(2, static_cast<std::size_t>(r));
            kw.wq[static_cast<std::size_t>(r)] = to_double(s);
        }
        return kw;
    }
};

/// K y over the full edge space of the complete host graph, via O(kn + k^2)
/// aggregated sums; never materializes the projector.
inline void kernel_apply_full(const KernelWeights& kw, const std::vector<double>& y,
                              std::vector<double>& out) {
    const int k = kw.k, n = kw.n;
    const int pairs = num_pairs(k);
    out.assign(y.size(), 0.0);

    std::vector<double> pairsum(static_cast<std::size_t>(pairs), 0.0);
    // rv[(c*n+v)*k + f]: mass of y on edges from vertex (c,v) into class f
    std::vector<double> rv(static_cast<std::size_t>(k) * n * k, 0.0);
    double total = 0.0;

    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            int p = pair_index(k, a, b);
            std::size_t base = static_cast<std::size_t>(p) * n * n;
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v) {
                    double val = y[base + static_cast<std::size_t>(u) * n + v];
                    pairsum[static_cast<std::size_t>(p)] += val;
                    rv[(static_cast<std::size_t>(a) * n + u) * k + b] += val;
                    rv[(static_cast<std::size_t>(b) * n + v) * k + a] += val;
                }
            total += pairsum[static_cast<std::size_t>(p)];
        }

    for (int a = 0; a < k; ++a)
        for (int b = a + 1; b < k; ++b) {
            int p = pair_index(k, a, b);
            std::size_t base = static_cast<std::size_t>(p) * n * n;
            for (int u = 0; u < n; ++u) {
                double ru = rv[(static_cast<std::size_t>(a) * n + u) * k + b];
                for (int v = 0; v < n; ++v) {
                    std::size_t id = base + static_cast<std::size_t>(u) * n + v;
                    double ye = y[id];
                    double rvv = rv[(static_cast<std::size_t>(b) * n + v) * k + a];
                    double a1 = (ru - ye) + (rvv - ye);
                    double a2 = pairsum[static_cast<std::size_t>(p)] - ru - rvv + ye;
                    double a3 = 0.0, a4 = 0.0, adj = 0.0;
                    for (int c = 0; c < k; ++c) {
                        if (c == a || c == b) continue;
                        double su = rv[(static_cast<std::size_t>(a) * n + u) * k + c];
                        double sv = rv[(static_cast<std::size_t>(b) * n + v) * k + c];
                        double pac = pairsum[static_cast<std::size_t>(pair_index(
                            k, std::min(a, c), std::max(a, c)))];
                        double pbc = pairsum[static_cast<std::size_t>(pair_index(
                            k, std::min(b, c), std::max(b, c)))];
                        a3 += su + sv;
                        a4 += (pac - su) + (pbc - sv);
                        adj += pac + pbc;
                    }
                    double a5 = total - pairsum[static_cast<std::size_t>(p)] - adj;
                    out[id] = ye - (kw.wq[0] * ye + kw.wq[1] * a1 + kw.wq[2] * a2 +
                                    kw.wq[3] * a3 + kw.wq[4] * a4 + kw.wq[5] * a5);
                }
            }
        }
}

} // namespace detail

// Matrix-free fan system over a fixed graph: compact edge indexing, the
// flattened k-clique fan lists, and the kernel projector of the host graph.
class FanSystem {
public:
    explicit FanSystem(const PartiteGraph& g)
        : k_(g.k()), n_(g.n()), compact_(g.edge_space_size(), -1),
          kw_(detail::KernelWeights::make(g.k(), g.n())) {
        const std::uint32_t space = g.edge_space_size();
        for (std::uint32_t id = 0; id < space; ++id)
            if (g.has_id(id)) {
                compact_[id] = static_cast<std::int32_t>(ids_.size());
                ids_.push_back(id);
            }
        epc_ = num_pairs(k_);
        auto cl = g.cliques(k_);
        ncliques_ = cl.size();
        cliq_.reserve(ncliques_ * static_cast<std::size_t>(epc_));
        for (const auto& q : cl) {
            for (int i = 0; i < k_; ++i)
                for (int j = i + 1; j < k_; ++j) {
                    Edge e = make_edge(q[static_cast<std::size_t>(i)] / n_,
                                       q[static_cast<std::size_t>(i)] % n_,
                                       q[static_cast<std::size_t>(j)] / n_,
                                       q[static_cast<std::size_t>(j)] % n_);
                    cliq_.push_back(static_cast<std::uint32_t>(compact_[edge_id(e, k_, n_)]));
                }
        }
    }

    int k() const { return k_; }
    int n() const { return n_; }
    std::size_t edge_count() const { return ids_.size(); }
    std::size_t clique_count() const { return ncliques_; }
    const std::vector<std::uint32_t>& edge_ids() const { return ids_; }
    const std::vector<std::uint32_t>& clique_edges() const { return cliq_; }
    int edges_per_clique() const { return epc_; }

    /// M_G y: accumulate fan sums over k-cliques, cost O(|cliques| k^2).
    void mg(const std::vector<double>& y, std::vector<double>& out) const {
        if (y.size() != ids_.size()) throw argument_error("mg: vector length != edge count");
        out.assign(y.size(), 0.0);
        const std::size_t epc = static_cast<std::size_t>(epc_);
        for (std::size_t c = 0; c < ncliques_; ++c) {
            const std::uint32_t* e = cliq_.data() + c * epc;
            double s = 0.0;
            for (std::size_t i = 0; i < epc; ++i) s += y[e[i]];
            for (std::size_t i = 0; i < epc; ++i) out[e[i]] += s;
        }
    }

    /// K[G] y = restriction of the host-graph kernel projector.
    void kg(const std::vector<double>& y, std::vector<double>& out) const {
        if (y.size() != ids_.size()) throw argument_error("kg: vector length != edge count");
        std::vector<double> full(compact_.size(), 0.0);
        for (std::size_t i = 0; i < ids_.size(); ++i) full[ids_[i]] = y[i];
        std::vector<double> kfull;
        detail::kernel_apply_full(kw_, full, kfull);
        out.resize(y.size());
        for (std::size_t i = 0; i < ids_.size(); ++i) out[i] = kfull[ids_[i]];
    }

    /// (M_G + eta K[G]) y.
    void apply(double eta, const std::vector<double>& y, std::vector<double>& out) const {
        mg(y, out);
        std::vector<double> ky;
        kg(y, ky);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += eta * ky[i];
    }

    /// Number of cliques through each edge (0 means the fan system is
    /// infeasible at that edge).
    std::vector<std::size_t> fan_sizes() const {
        std::vector<std::size_t> c(ids_.size(), 0);
        const std::size_t epc = static_cast<std::size_t>(epc_);
        for (std::size_t q = 0; q < ncliques_; ++q)
            for (std::size_t i = 0; i < epc; ++i) ++c[cliq_[q * epc + i]];
        return c;
    }

    std::vector<double> lift(const std::vector<double>& x) const {
        if (x.size() != ids_.size()) throw argument_error("lift: vector length != edge count");
        const std::size_t epc = static_cast<std::size_t>(epc_);
        std::vector<double> z(ncliques_, 0.0);
        for (std::size_t c = 0; c < ncliques_; ++c) {
            double s = 0.0;
            for (std::size_t i = 0; i < epc; ++i) s += x[cliq_[c * epc + i]];
            z[c] = s;
        }
        return z;
    }

    double theta1() const {
        double t = static_cast<double>(k_ - 1);
        for (int i = 0; i < k_ - 2; ++i) t *= n_;
        return t;
    }

private:
    int k_, n_, epc_ = 3;
    std::vector<std::uint32_t> ids_;
    std::vector<std::int32_t> compact_;
    std::vector<std::uint32_t> cliq_;
    std::size_t ncliques_ = 0;
    detail::KernelWeights kw_;
};

/// M_G y as a one-shot convenience (tests and small experiments).
inline std::vector<double> mg_matvec(const PartiteGraph& g, const std::vector<double>& y) {
    FanSystem s(g);
    std::vector<double> out;
    s.mg(y, out);
    return out;
}

/// K y over the full edge space of K_{n,n,n}.
inline std::vector<double> k_matvec(int n, const std::vector<double>& y) {
    auto kw = detail::KernelWeights::make(3, n);
    if (y.size() != edge_space(3, n)) throw argument_error("k_matvec: vector length != 3n^2");
    std::vector<double> out;
    detail::kernel_apply_full(kw, y, out);
    return out;
}

/// K[G] y for a spanning subgraph G of the complete host graph.
inline std::vector<double> kg_matvec(const PartiteGraph& g, const std::vector<double>& y) {
    FanSystem s(g);
    std::vector<double> out;
    s.kg(y, out);
    return out;
}

/// The kernel vectors v_beta of ker(M) for K_{n,n,n}: -1 on edges entering
/// beta from the predecessor class, +1 on edges leaving beta to the
/// successor class (classes ordered cyclically 0 -> 1 -> 2 -> 0).
inline std::vector<std::vector<double>> kernel_basis(int n) {
    if (n < 1) throw argument_error("kernel_basis requires n >= 1");
    std::vector<std::vector<double>> vs;
    vs.reserve(static_cast<std::size_t>(3 * n));
    for (int c = 0; c < 3; ++c)
        for (int b = 0; b < n; ++b) {
            std::vector<double> v(edge_space(3, n), 0.0);
            int pred = (c + 2) % 3, succ = (c + 1) % 3;
            for (int a = 0; a < n; ++a) v[edge_id(make_edge(pred, a, c, b), 3, n)] = -1.0;
            for (int g = 0; g < n; ++g) v[edge_id(make_edge(c, b, succ, g), 3, n)] = +1.0;
            vs.push_back(std::move(v));
        }
    return vs;
}

/// Pure decomposition check: recomputes per-edge weight sums of z from the
/// graph alone (independent of how z was produced).
inline SolveReport verify_decomposition(const PartiteGraph& g, const TriangleWeights& z,
                                        double cert_tol) {
    auto cl = g.cliques(g.k());
    if (z.values.size() != cl.size())
        throw argument_error("verify_decomposition: weight count != clique count");
    const int k = g.k(), n = g.n();
    std::vector<double> edge_sum(g.edge_space_size(), 0.0);
    for (std::size_t c = 0; c < cl.size(); ++c) {
        const auto& q = cl[c];
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                Edge e = make_edge(q[static_cast<std::size_t>(i)] / n,
                                   q[static_cast<std::size_t>(i)] % n,
                                   q[static_cast<std::size_t>(j)] / n,
                                   q[static_cast<std::size_t>(j)] % n);
                edge_sum[edge_id(e, k, n)] += z.values[c];
            }
    }
    SolveReport r;
    double resid = 0.0;
    const std::uint32_t space = g.edge_space_size();
    for (std::uint32_t id = 0; id < space; ++id)
        if (g.has_id(id)) resid = std::max(resid, std::fabs(edge_sum[id] - 1.0));
    double mn = z.values.empty() ? 0.0 : *std::min_element(z.values.begin(), z.values.end());
    r.decomposition_residual_inf = resid;
    r.min_triangle_weight = mn;
    r.certified = resid <= cert_tol && mn >= -cert_tol;
    return r;
}

/// z = W_G^T x.
inline TriangleWeights lift_to_triangles(const PartiteGraph& g, const FanWeights& x) {
    FanSystem s(g);
    return TriangleWeights{s.lift(x.values)};
}

namespace detail {

inline double inf_norm(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

inline double residual_inf(const FanSystem& s, double eta, const std::vector<double>& x) {
    std::vector<double> ax;
    s.apply(eta, x, ax);
    double m = 0.0;
    for (double v : ax) m = std::max(m, std::fabs(v - 1.0));
    return m;
}

/// Conjugate gradients on the shifted operator, tracking the best iterate by
/// true residual.  Returns (x, iterations, status).
inline std::tuple<std::vector<double>, std::size_t, SolveStatus>
cg_solve(const FanSystem& s, double eta, const SolverConfig& cfg) {
    const std::size_t m = s.edge_count();
    std::vector<double> x(m, 1.0 / (static_cast<double>(s.k()) * (s.k() - 1) / 2 *
                                    std::pow(static_cast<double>(s.n()), s.k() - 2)));
    std::vector<double> ax, r(m), p, ap;
    s.apply(eta, x, ax);
    for (std::size_t i = 0; i < m; ++i) r[i] = 1.0 - ax[i];
    p = r;
    double rs = 0.0;
    for (double v : r) rs += v * v;

    std::vector<double> best_x = x;
    double best_res = inf_norm(r);
    std::size_t it = 0;
    for (; it < cfg.max_iterations; ++it) {
        if (best_res <= cfg.solve_tol) {
            // the recurrence residual can drift; accept only a true residual
            double true_res = residual_inf(s, eta, best_x);
            if (true_res <= cfg.solve_tol) break;
            best_res = true_res; // drifted estimate, keep iterating
        }
        s.apply(eta, p, ap);
        double pap = 0.0;
        for (std::size_t i = 0; i < m; ++i) pap += p[i] * ap[i];
        if (!(pap > 0.0)) return {best_x, it, SolveStatus::breakdown};
        double alpha = rs / pap;
        for (std::size_t i = 0; i < m; ++i) x[i] += alpha * p[i];
        bool refresh = (it % 50 == 49);
        if (refresh) {
            s.apply(eta, x, ax);
            for (std::size_t i = 0; i < m; ++i) r[i] = 1.0 - ax[i];
        } else {
            for (std::size_t i = 0; i < m; ++i) r[i] -= alpha * ap[i];
        }
        double rs2 = 0.0;
        for (double v : r) rs2 += v * v;
        double rinf = inf_norm(r);
        if (rinf < best_res) {
            best_res = rinf;
            best_x = x;
        }
        double beta = rs2 / rs;
        rs = rs2;
        for (std::size_t i = 0; i < m; ++i) p[i] = r[i] + beta * p[i];
    }
    // settle the verdict on the true residual of the best iterate
    double true_res = residual_inf(s, eta, best_x);
    SolveStatus st = true_res <= cfg.solve_tol ? SolveStatus::ok : SolveStatus::iteration_limit;
    return {best_x, it, st};
}

inline std::tuple<std::vector<double>, SolveStatus> dense_solve(const PartiteGraph& g,
                                                                const FanSystem& s, double eta) {
    const std::size_t m = s.edge_count();
    SchemeParams sp{g.k(), g.n(), 2};
    Matrix<Rat> q = idempotent_coeffs_t2(sp);
    std::array<double, 6> wq{};
    for (int r = 0; r < 6; ++r)
        wq[static_cast<std::size_t>(r)] =
            to_double(q(0, static_cast<std::size_t>(r)) + q(1, static_cast<std::size_t>(r)) +
                      q(2, static_cast<std::size_t>(r)));

    Matrix<double> a(m, m, 0.0);
    // M_G = sum over cliques of the fan indicator outer product
    {
        const auto& cq = s.clique_edges();
        const std::size_t epc = static_cast<std::size_t>(s.edges_per_clique());
        for (std::size_t c = 0; c < s.clique_count(); ++c) {
            const std::uint32_t* e = cq.data() + c * epc;
            for (std::size_t i = 0; i < epc; ++i)
                for (std::size_t j = 0; j < epc; ++j) a(e[i], e[j]) += 1.0;
        }
    }
    // + eta K[G] using the per-relation closed form
    {
        const int k = g.k(), n = g.n();
        std::vector<Edge> es;
        es.reserve(m);
        for (auto id : s.edge_ids()) es.push_back(edge_from_id(id, k, n));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                int r = rel_index(relation_of(sp, es[i], es[j]));
                double kij = (i == j ? 1.0 : 0.0) - wq[static_cast<std::size_t>(r)];
                a(i, j) += eta * kij;
            }
    }
    auto x = solve_dense(a, std::vector<double>(m, 1.0));
    if (!x) return {std::vector<double>(m, 0.0), SolveStatus::singular};
    return {*x, SolveStatus::ok};
}

} // namespace detail

/// Solve (M_G + eta K[G]) x = 1 and certify the lifted decomposition.
/// Dense factorization is used up to config.dense_cutoff edges, conjugate
/// directions (matrix-free) beyond.  Non-convergence is a reported result
/// carrying the best iterate, not an exception.
inline SolveResult solve_fans(const PartiteGraph& g, const SolverConfig& cfg = {}) {
    if (g.n() < 2) throw precondition_error("solve_fans requires class size n >= 2");
    if (!g.is_locally_balanced())
        throw precondition_error("solve_fans requires a locally balanced graph");
    FanSystem s(g);
    for (auto c : s.fan_sizes())
        if (c == 0) throw precondition_error("solve_fans: an edge of G lies in no clique");

    const double eta = cfg.eta_multiplier * s.theta1();
    SolveResult res;
    res.report.eta = eta;
    res.fan.eta = eta;

    std::vector<double> x;
    SolveStatus st = SolveStatus::ok;
    std::size_t iters = 0;
    if (s.edge_count() <= cfg.dense_cutoff) {
        res.report.dense_path = true;
        std::tie(x, st) = detail::dense_solve(g, s, eta);
    } else {
        std::tie(x, iters, st) = detail::cg_solve(s, eta, cfg);
    }

    res.fan.values = x;
    res.fan.iterations = iters;
    res.report.iterations = iters;
    res.report.status = st;

    // residuals of the shifted and unshifted systems
    std::vector<double> ax;
    s.apply(eta, x, ax);
    double fr = 0.0;
    for (double v : ax) fr = std::max(fr, std::fabs(v - 1.0));
    s.mg(x, ax);
    double ur = 0.0;
    for (double v : ax) ur = std::max(ur, std::fabs(v - 1.0));
    res.report.fan_residual_inf = fr;
    res.report.unshifted_residual_inf = ur;
    res.fan.final_residual = fr;
    if (st == SolveStatus::ok && ur > cfg.solve_tol) res.report.status = SolveStatus::iteration_limit;
    res.report.min_fan_weight =
        x.empty() ? 0.0 : *std::min_element(x.begin(), x.end());

    // lift, clamp negatives inside the certification slack, re-verify
    std::vector<double> z = s.lift(x);
    double min_raw = z.empty() ? 0.0 : *std::min_element(z.begin(), z.end());
    for (double& v : z)
        if (v < 0.0 && v > -cfg.cert_tol) v = 0.0;
    res.lifted.values = std::move(z);
    SolveReport check = verify_decomposition(g, res.lifted, cfg.cert_tol);
    res.report.decomposition_residual_inf = check.decomposition_residual_inf;
    res.report.min_triangle_weight = min_raw;
    res.report.certified =
        check.decomposition_residual_inf <= cfg.cert_tol && min_raw >= -cfg.cert_tol;
    return res;
}

// --- weight vector file format ----------------------------------------------
// header "<kind> k n count" with kind in {fanweights, triangleweights},
// then one value per line, 17 significant digits (binary round-trip).

struct WeightsFile {
    std::string kind;
    int k = 0, n = 0;
    std::vector<double> values;
};

inline void write_weights(std::ostream& os, const std::string& kind, int k, int n,
                          const std::vector<double>& values) {
    os << kind << ' ' << k << ' ' << n << ' ' << values.size() << '\n';
    char buf[64];
    for (double v : values) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        os << buf << '\n';
    }
}

inline WeightsFile read_weights(std::istream& is) {
    WeightsFile w;
    std::size_t count = 0;
    if (!(is >> w.kind >> w.k >> w.n >> count) ||
        (w.kind != "fanweights" && w.kind != "triangleweights"))
        throw parse_error("weights file: expected header '<kind> k n count'");
    w.values.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        if (!(is >> w.values[i])) throw parse_error("weights file: truncated value list");
    return w;
}

} // namespace fandec
