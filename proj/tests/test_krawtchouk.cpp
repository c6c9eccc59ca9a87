#include "doctest.h"

#include "fandec/errors.hpp"
#include "fandec/krawtchouk.hpp"

#include "support/oracles.hpp"

using namespace fandec;
using namespace fandec::testsupport;

TEST_CASE("krawtchouk pinned values") {
    CHECK(krawtchouk(SchemeParams{3, 2, 2}, 0, 2) == 1);       // kappa_0 == 1
    CHECK(krawtchouk(SchemeParams{4, 3, 2}, 2, 4) == 6);       // kappa_2(k) = C(k,2)
    CHECK(krawtchouk(SchemeParams{3, 2, 2}, 1, 1) == 1);       // frozen from poly oracle
    CHECK(krawtchouk_poly_oracle(3, 2, 1, 1) == 1);
}

TEST_CASE("krawtchouk agrees with generating-function oracle") {
    for (int k = 1; k <= 6; ++k)
        for (int n = 2; n <= 4; ++n)
            for (int i = 0; i <= k; ++i)
                for (int x = 0; x <= k; ++x)
                    CHECK(krawtchouk(SchemeParams{k, n, 1}, i, x) ==
                          krawtchouk_poly_oracle(k, n, i, x));
}

TEST_CASE("krawtchouk domain errors") {
    CHECK_THROWS_AS(krawtchouk(SchemeParams{3, 2, 2}, -1, 0), argument_error);
    CHECK_THROWS_AS(krawtchouk(SchemeParams{3, 2, 2}, 0, 4), argument_error);
    CHECK_THROWS_AS(krawtchouk(SchemeParams{3, 1, 2}, 0, 0), argument_error);
}

TEST_CASE("krawtchouk orthogonality") {
    // sum_i C(k,i)(n-1)^i kappa_j(i) kappa_l(i) = delta_jl n^k C(k,j)(n-1)^j
    for (int k = 1; k <= 6; ++k)
        for (int n = 2; n <= 4; ++n) {
            SchemeParams p{k, n, 1};
            for (int j = 0; j <= k; ++j)
                for (int l = j; l <= k; ++l) {
                    Int s(0);
                    for (int i = 0; i <= k; ++i)
                        s += binom(k, i) * ipow(n - 1, static_cast<unsigned long>(i)) *
                             krawtchouk(p, j, i) * krawtchouk(p, l, i);
                    Int want = j == l ? ipow(n, static_cast<unsigned long>(k)) * binom(k, j) *
                                            ipow(n - 1, static_cast<unsigned long>(j))
                                      : Int(0);
                    CHECK(s == want);
                }
        }
}

TEST_CASE("hamming scheme transform check at small sizes") {
    CHECK(krawtchouk_transform_check(SchemeParams{2, 2, 1}));
    CHECK(krawtchouk_transform_check(SchemeParams{3, 2, 2}));
    CHECK(krawtchouk_transform_check(SchemeParams{1, 3, 1})); // complete-graph scheme
    CHECK(krawtchouk_transform_check(SchemeParams{3, 3, 2}));
    CHECK(krawtchouk_transform_check(SchemeParams{4, 2, 2}));
    CHECK(krawtchouk_transform_check(SchemeParams{2, 4, 2}));
}

TEST_CASE("transform check size guard") {
    CHECK_THROWS_AS(krawtchouk_transform_check(SchemeParams{13, 2, 2}), resource_error);
}

TEST_CASE("dimension bookkeeping") {
    for (int k = 1; k <= 7; ++k)
        for (int n = 2; n <= 4; ++n) {
            Int sum(0);
            for (int j = 0; j <= k; ++j)
                sum += binom(k, j) * ipow(n - 1, static_cast<unsigned long>(j));
            CHECK(sum == ipow(n, static_cast<unsigned long>(k)));
        }
}
