#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "pairlab/exactlin.hpp"

using namespace pairlab;

namespace {

// Independent span oracle: iterate every coefficient tuple. Exponential, for
// tiny fixtures only.
std::set<std::vector<i64>> brute_span(const ZnMatrix& a) {
    i64 n = a.modulus();
    std::set<std::vector<i64>> out;
    std::vector<i64> coeff(a.rows(), 0);
    while (true) {
        out.insert(row_times_matrix(coeff, a));
        int k = a.rows() - 1;
        while (k >= 0 && ++coeff[k] == n) coeff[k--] = 0;
        if (k < 0) break;
    }
    if (a.rows() == 0) out.insert(std::vector<i64>(a.cols(), 0));
    return out;
}

std::vector<std::vector<i64>> all_vectors(i64 n, int len) {
    std::vector<std::vector<i64>> out;
    std::vector<i64> v(len, 0);
    while (true) {
        out.push_back(v);
        int k = len - 1;
        while (k >= 0 && ++v[k] == n) v[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

ZnMatrix mk(i64 n, std::vector<std::vector<i64>> rows, int cols) {
    return ZnMatrix::from_rows(n, rows, cols);
}

}  // namespace

TEST_CASE("howell form of frozen fixtures") {
    // Z/4: span{(2,2),(0,2)} = {00,22,02,20}; canonical form has rows (2,0),(0,2)
    ZnMatrix a = mk(4, {{2, 2}, {0, 2}}, 2);
    ZnMatrix h = howell_form(a);
    CHECK(h == mk(4, {{2, 0}, {0, 2}}, 2));
    CHECK(brute_span(a) == brute_span(h));

    // zero span collapses to no rows
    CHECK(howell_form(mk(4, {{0}}, 1)).rows() == 0);

    // identity is canonical already
    ZnMatrix id = ZnMatrix::identity(6, 2);
    CHECK(howell_form(id) == id);
}

TEST_CASE("howell form is idempotent and span-preserving on a generated corpus") {
    for (i64 n : {2, 4, 6, 8, 9, 12}) {
        Rng rng(mix_seed(17, static_cast<u64>(n)));
        for (int trial = 0; trial < 60; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(3));
            ZnMatrix a(n, rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) a.set(i, j, rng.below(n));
            ZnMatrix h = howell_form(a);
            CHECK(howell_form(h) == h);
            if (span_size(h) <= 256) CHECK(brute_span(a) == brute_span(h));
            CHECK(static_cast<i64>(brute_span(h).size()) == span_size(h));
            // every span element reduces to zero, and nothing else does
            for (const auto& v : brute_span(a)) CHECK(in_span(h, v));
        }
    }
}

TEST_CASE("howell form is a span invariant") {
    // scrambling rows by invertible operations must not change the form
    for (i64 n : {4, 6, 9}) {
        Rng rng(mix_seed(99, static_cast<u64>(n)));
        for (int trial = 0; trial < 40; ++trial) {
            ZnMatrix a(n, 3, 2);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 2; ++j) a.set(i, j, rng.below(n));
            ZnMatrix b(n, 0, 2);
            // rows of b: random unimodular-ish combinations plus row repeats
            b.append_row(row_times_matrix({1, 1, 0}, a));
            b.append_row(row_times_matrix({0, 1, 0}, a));
            b.append_row(row_times_matrix({0, 0, 1}, a));
            b.append_row(row_times_matrix({1, 0, 1}, a));
            CHECK(howell_form(a) == howell_form(b));
        }
    }
}

TEST_CASE("kernel against exhaustive enumeration") {
    // frozen: Z/4, A=[[2]]: kernel is {0,2} = span [[2]]
    CHECK(kernel(mk(4, {{2}}, 1)) == mk(4, {{2}}, 1));
    // unit entry: trivial kernel
    CHECK(kernel(mk(6, {{1}}, 1)).rows() == 0);
    // zero map: full kernel
    CHECK(kernel(mk(4, {{0}}, 1)) == mk(4, {{1}}, 1));

    for (i64 n : {4, 6, 8, 9}) {
        Rng rng(mix_seed(3, static_cast<u64>(n)));
        for (int trial = 0; trial < 50; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(2));
            ZnMatrix a(n, rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) a.set(i, j, rng.below(n));
            ZnMatrix k = kernel(a);
            std::set<std::vector<i64>> expect;
            for (const auto& x : all_vectors(n, rows)) {
                auto y = row_times_matrix(x, a);
                if (std::all_of(y.begin(), y.end(), [](i64 v) { return v == 0; })) expect.insert(x);
            }
            CHECK(brute_span(k) == expect);
        }
    }
}

TEST_CASE("solve: frozen fixtures and exhaustive soundness") {
    // Z/4, A=[[2]], b=[2]: solutions are exactly {1,3}
    auto s = solve(mk(4, {{2}}, 1), {2});
    REQUIRE(s.solvable);
    CHECK(row_times_matrix(s.particular, mk(4, {{2}}, 1)) == std::vector<i64>{2});
    std::set<std::vector<i64>> sols;
    for (const auto& h : brute_span(s.homogeneous)) {
        std::vector<i64> x(1);
        x[0] = mod_reduce(s.particular[0] + h[0], 4);
        sols.insert(x);
    }
    CHECK(sols == std::set<std::vector<i64>>{{1}, {3}});

    // Z/4, A=[[2]], b=[1]: 2x only reaches {0,2}
    CHECK_FALSE(solve(mk(4, {{2}}, 1), {1}).solvable);

    // Z/6, A=[[1]], b=[5]
    auto s2 = solve(mk(6, {{1}}, 1), {5});
    REQUIRE(s2.solvable);
    CHECK(s2.particular == std::vector<i64>{5});
    CHECK(s2.homogeneous.rows() == 0);

    // dimension mismatch is a contract violation
    CHECK_THROWS_AS(solve(mk(4, {{2}}, 1), {1, 2}), ContractError);

    for (i64 n : {4, 6, 9}) {
        Rng rng(mix_seed(7, static_cast<u64>(n)));
        for (int trial = 0; trial < 60; ++trial) {
            int rows = 1 + static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(2));
            ZnMatrix a(n, rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) a.set(i, j, rng.below(n));
            std::vector<i64> b(cols);
            for (int j = 0; j < cols; ++j) b[j] = rng.below(n);
            auto r = solve(a, b);
            std::set<std::vector<i64>> expect;
            for (const auto& x : all_vectors(n, rows))
                if (row_times_matrix(x, a) == b) expect.insert(x);
            if (r.solvable) {
                CHECK(row_times_matrix(r.particular, a) == b);
                std::set<std::vector<i64>> got;
                for (const auto& h : brute_span(r.homogeneous)) {
                    std::vector<i64> x(rows);
                    for (int j = 0; j < rows; ++j) x[j] = mod_reduce(r.particular[j] + h[j], n);
                    got.insert(x);
                }
                CHECK(got == expect);
            } else {
                CHECK(expect.empty());
            }
        }
    }
}

namespace {

// Oracle for invariant factors: compare order statistics of the enumerated
// cokernel with every divisor chain of matching cardinality.
std::vector<i64> oracle_invariant_factors(const ZnMatrix& a, i64 n) {
    // enumerate coker = all vectors / span equivalence
    ZnMatrix h = howell_form(a);
    std::map<std::vector<i64>, int> rep;
    std::vector<std::vector<i64>> classes;
    for (const auto& v : all_vectors(n, a.cols())) {
        auto r = howell_reduce(h, v);
        if (!rep.count(r)) {
            rep[r] = static_cast<int>(classes.size());
            classes.push_back(r);
        }
    }
    i64 size = static_cast<i64>(classes.size());
    // element order counts: for each k | n, count cosets with k*v in span
    std::map<i64, i64> count_dividing;
    for (i64 k : divisors(n)) {
        i64 c = 0;
        for (const auto& v : classes) {
            std::vector<i64> kv(v.size());
            for (size_t j = 0; j < v.size(); ++j) kv[j] = mul_mod(k, v[j], n);
            if (in_span(h, kv)) ++c;
        }
        count_dividing[k] = c;
    }
    // candidate chains: divisor chains over divisors of n with matching product
    std::vector<std::vector<i64>> candidates;
    std::vector<i64> cur;
    std::function<void(i64, i64)> rec = [&](i64 minf, i64 prod) {
        if (prod == size) candidates.push_back(cur);
        if (prod >= size) return;
        for (i64 d : divisors(n)) {
            if (d < 2 || d < minf || d % minf != 0) continue;
            if (size % (prod * d) != 0) continue;
            cur.push_back(d);
            rec(d, prod * d);
            cur.pop_back();
        }
    };
    rec(1, 1);
    std::vector<std::vector<i64>> matches;
    for (const auto& cand : candidates) {
        bool ok = true;
        for (i64 k : divisors(n)) {
            i64 expect = 1;
            for (i64 d : cand) expect *= gcd_ll(k, d);
            if (expect != count_dividing[k]) {
                ok = false;
                break;
            }
        }
        if (ok) matches.push_back(cand);
    }
    REQUIRE(matches.size() == 1);
    return matches[0];
}

}  // namespace

TEST_CASE("invariant factors: frozen fixtures") {
    CHECK(invariant_factors(mk(4, {{2}}, 1)) == std::vector<i64>{2});
    CHECK(invariant_factors(ZnMatrix(4, 0, 1)) == std::vector<i64>{4});
    // Z/2 + Z/3 over Z/6 is cyclic of order 6
    CHECK(invariant_factors(mk(6, {{2, 0}, {0, 3}}, 2)) == std::vector<i64>{6});
    CHECK(oracle_invariant_factors(mk(6, {{2, 0}, {0, 3}}, 2), 6) == std::vector<i64>{6});
}

TEST_CASE("invariant factors: divisor chain property and cokernel cardinality") {
    for (i64 n : {4, 6, 8, 12}) {
        Rng rng(mix_seed(23, static_cast<u64>(n)));
        for (int trial = 0; trial < 40; ++trial) {
            int rows = static_cast<int>(rng.below(3));
            int cols = 1 + static_cast<int>(rng.below(2));
            ZnMatrix a(n, rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) a.set(i, j, rng.below(n));
            auto chain = invariant_factors(a);
            i64 prod = 1;
            i64 prev = 1;
            for (i64 d : chain) {
                CHECK(d > 1);
                CHECK(d % prev == 0);
                CHECK(n % d == 0);
                prev = d;
                prod *= d;
            }
            // cardinality check against full enumeration
            ZnMatrix h = howell_form(a);
            std::set<std::vector<i64>> reduced;
            for (const auto& v : all_vectors(n, cols)) reduced.insert(howell_reduce(h, v));
            CHECK(prod == static_cast<i64>(reduced.size()));
            CHECK(chain == oracle_invariant_factors(a, n));
        }
    }
}

TEST_CASE("coker_form round trips coordinates") {
    for (i64 n : {4, 6, 9, 12}) {
        Rng rng(mix_seed(31, static_cast<u64>(n)));
        for (int trial = 0; trial < 30; ++trial) {
            int rows = static_cast<int>(rng.below(3));
            int g = 1 + static_cast<int>(rng.below(3));
            ZnMatrix a(n, rows, g);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < g; ++j) a.set(i, j, rng.below(n));
            auto ck = coker_form(a, g);
            int k = static_cast<int>(ck.chain.size());
            // from∘to is the identity modulo the relation span
            ZnMatrix hrel = howell_form(a);
            for (const auto& x : all_vectors(n, g)) {
                auto c = row_times_matrix(x, ck.to_canonical);
                for (int j = 0; j < k; ++j) c[j] = mod_reduce(c[j], ck.chain[j]);
                auto back = row_times_matrix(c, ck.from_canonical);
                std::vector<i64> diff(g);
                for (int j = 0; j < g; ++j) diff[j] = mod_reduce(x[j] - back[j], n);
                CHECK(in_span(hrel, diff));
            }
        }
    }
}

TEST_CASE("enumerate_span matches brute force") {
    ZnMatrix a = mk(6, {{2, 3}, {3, 3}}, 2);
    auto got = enumerate_span(a, 4096);
    auto expect = brute_span(a);
    CHECK(std::set<std::vector<i64>>(got.begin(), got.end()) == expect);
    CHECK_THROWS_AS(enumerate_span(a, 2), CapError);
}
