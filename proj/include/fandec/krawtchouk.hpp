#pragma once

#include <cstdint>
#include <vector>

#include "fandec/errors.hpp"
#include "fandec/matrix.hpp"
#include "fandec/rational.hpp"

namespace fandec {

// Parameters of the Hamming lattice over k coordinate classes of size n.
// t is the level (subword rank) under consideration; the triangle machinery
// lives at t = 2, the top level at t = k.
struct SchemeParams {
    int k = 3;
    int n = 2;
    int t = 2;

    void validate() const {
        if (k < 1) throw argument_error("scheme parameter k must be >= 1");
        if (n < 2) throw argument_error("scheme parameter n must be >= 2");
        if (t < 1 || t > k) throw argument_error("scheme parameter t must satisfy 1 <= t <= k");
    }
};

/// Krawtchouk polynomial value kappa_i(x) for the Hamming scheme H(k,n):
///   kappa_i(x) = sum_l (-1)^l (n-1)^{i-l} C(k-x, i-l) C(x, l),
/// evaluated exactly in integers.
inline Int krawtchouk(const SchemeParams& p, int i, int x) {
    p.validate();
    if (i < 0 || i > p.k || x < 0 || x > p.k)
        throw argument_error("krawtchouk degree and point must lie in [0, k]");
    Int acc(0);
    for (int l = 0; l <= i; ++l) {
        Int term = ipow(p.n - 1, static_cast<unsigned long>(i - l)) * binom(p.k - x, i - l) *
                   binom(x, l);
        if (l % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

namespace detail {

/// Hamming distance between words u, v in [n]^k encoded base n.
inline int hamming_dist(std::uint64_t u, std::uint64_t v, int k, int n) {
    int d = 0;
    for (int i = 0; i < k; ++i) {
        if (u % n != v % n) ++d;
        u /= n;
        v /= n;
    }
    return d;
}

} // namespace detail

/// Dense verification of the Krawtchouk transform on H(k,n): builds the
/// distance matrices A_i and the scaled idempotents P_j = n^k E_j =
/// sum_i kappa_j(i) A_i, then checks, exactly in integers,
///   P_j P_l = delta_{jl} n^k P_j,   sum_j P_j = n^k I,   n^k A_i = sum_j kappa_i(j) P_j.
/// The n^k x n^k matrices are only sensible at desk scale (guard n^k <= 4096).
inline bool krawtchouk_transform_check(const SchemeParams& p) {
    p.validate();
    Int words = ipow(p.n, static_cast<unsigned long>(p.k));
    if (words > 4096) throw resource_error("krawtchouk_transform_check: n^k exceeds 4096");
    const std::size_t nw = static_cast<std::size_t>(words.get_ui());
    const long long scale = static_cast<long long>(nw);

    // Entries of P_j are kappa_j(dist); |kappa_j| <= n^k <= 4096, so all
    // products below stay far inside long long range.
    std::vector<long long> kv(static_cast<std::size_t>((p.k + 1) * (p.k + 1)));
    for (int j = 0; j <= p.k; ++j)
        for (int i = 0; i <= p.k; ++i)
            kv[static_cast<std::size_t>(j * (p.k + 1) + i)] = krawtchouk(p, j, i).get_si();

    std::vector<int> dist(nw * nw);
    for (std::size_t u = 0; u < nw; ++u)
        for (std::size_t v = 0; v < nw; ++v)
            dist[u * nw + v] = detail::hamming_dist(u, v, p.k, p.n);

    auto scaled_idem = [&](int j) {
        Matrix<long long> m(nw, nw);
        for (std::size_t u = 0; u < nw; ++u)
            for (std::size_t v = 0; v < nw; ++v)
                m(u, v) = kv[static_cast<std::size_t>(j * (p.k + 1) + dist[u * nw + v])];
        return m;
    };

    // sum_j P_j = n^k I
    Matrix<long long> acc(nw, nw);
    for (int j = 0; j <= p.k; ++j) acc += scaled_idem(j);
    for (std::size_t u = 0; u < nw; ++u)
        for (std::size_t v = 0; v < nw; ++v)
            if (acc(u, v) != (u == v ? scale : 0)) return false;

    // P_j P_l = delta n^k P_j
    for (int j = 0; j <= p.k; ++j) {
        Matrix<long long> pj = scaled_idem(j);
        for (int l = j; l <= p.k; ++l) {
            Matrix<long long> prod = pj * scaled_idem(l);
            for (std::size_t u = 0; u < nw; ++u)
                for (std::size_t v = 0; v < nw; ++v) {
                    long long want = (j == l) ? scale * pj(u, v) : 0;
                    if (prod(u, v) != want) return false;
                }
        }
    }

    // n^k A_i = sum_j kappa_i(j) P_j
    for (int i = 0; i <= p.k; ++i) {
        Matrix<long long> rhs(nw, nw);
        for (int j = 0; j <= p.k; ++j) {
            Matrix<long long> pj = scaled_idem(j);
            pj *= kv[static_cast<std::size_t>(i * (p.k + 1) + j)];
            rhs += pj;
        }
        for (std::size_t u = 0; u < nw; ++u)
            for (std::size_t v = 0; v < nw; ++v) {
                long long want = (dist[u * nw + v] == i) ? scale : 0;
                if (rhs(u, v) != want) return false;
            }
    }
    return true;
}

} // namespace fandec
