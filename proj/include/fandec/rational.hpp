#pragma once

#include <gmpxx.h>

#include <string>

namespace fandec {

// All combinatorial bookkeeping is done in arbitrary precision.  Floating
// point appears only in the iterative solver and in report fields that are
// explicitly roundings of an exact rational computed first.
using Int = mpz_class;
using Rat = mpq_class;

/// Binomial coefficient with out-of-range arguments mapped to 0.
/// The zero convention is relied on by the generating-function style
/// expansions (negative "slots" simply contribute nothing).
inline Int binom(long n, long r) {
    if (n < 0 || r < 0 || r > n) return Int(0);
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
    return b;
}

inline Int ipow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int ipow(long base, unsigned long e) { return ipow(Int(base), e); }

/// num/den as a canonical rational (den must be nonzero).
inline Rat make_rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline double to_double(const Rat& q) { return q.get_d(); }

/// "p/q" (or plain "p" for integers), the form used in JSON reports.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

} // namespace fandec
