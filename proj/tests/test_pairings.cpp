#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "pairlab/pairings.hpp"

using namespace pairlab;

namespace {

const Caps kCaps;

Pairing mult4() { return mult_pairing(zmod(4), kCaps); }

Pairing degenerate4() {
    // beta(v, w) = 2vw on Z/4 x Z/4
    Module v = free_module(zmod(4), Side::right, 1, kCaps);
    Module w = free_module(zmod(4), Side::left, 1, kCaps);
    ZnMatrix b(4, 1, 1);
    b.set(0, 0, 2);
    return make_pairing(v, w, b);
}

// Brute-force perp oracle over enumerated elements.
std::set<Elem> brute_perp_v(const Pairing& p, const std::vector<Elem>& f_subset) {
    std::set<Elem> out;
    for (const auto& v : elements(p.v_mod, kCaps)) {
        bool ok = true;
        for (const auto& f : f_subset)
            if (pair_eval(p, v, f) != (p.is_zmod() ? 0 : p.v_mod.ring->zero_elem())) ok = false;
        if (ok) out.insert(v);
    }
    return out;
}

std::set<Elem> as_set(const Submodule& s) {
    auto es = sub_elements(s, kCaps);
    return std::set<Elem>(es.begin(), es.end());
}

}  // namespace

TEST_CASE("pairing validation") {
    CHECK_NOTHROW(mult4());
    CHECK_NOTHROW(degenerate4());
    // non-balanced beta entry: 1 on a Z/2 generator over Z/4
    Module v = free_module(zmod(4), Side::right, 1, kCaps);
    Module w = cyclic_module(zmod(4), Side::left, 2);
    ZnMatrix b(4, 1, 1);
    b.set(0, 0, 1);
    CHECK_THROWS_AS(make_pairing(v, w, b), ValidationError);
    b.set(0, 0, 2);
    CHECK_NOTHROW(make_pairing(v, w, b));
}

TEST_CASE("perp operators: frozen fixtures and oracle") {
    Pairing p = mult4();
    // F = {2} -> {0, 2}
    CHECK(as_set(perp_of_w_subset(p, {{2}})) == std::set<Elem>{{0}, {2}});
    // F empty -> V
    CHECK(sub_cardinality(perp_of_w_subset(p, {})) == 4);
    // F = W -> Ker(kappa) = 0
    CHECK(sub_cardinality(perp_of_w_sub(p, full_submodule(p.w_mod))) == 1);

    // X = {0,2} -> {0,2}; X = 0 -> W
    CHECK(as_set(perp_of_v_sub(p, submodule_span(p.v_mod, {{2}}))) == std::set<Elem>{{0}, {2}});
    CHECK(sub_cardinality(perp_of_v_sub(p, zero_submodule(p.v_mod))) == 4);

    Pairing d = degenerate4();
    CHECK(as_set(perp_of_v_sub(d, full_submodule(d.v_mod))) == std::set<Elem>{{0}, {2}});

    // oracle comparison over random subsets
    for (i64 n : {4, 6, 9}) {
        Pairing q = mult_pairing(zmod(n), kCaps);
        Rng rng(mix_seed(5, static_cast<u64>(n)));
        for (int t = 0; t < 20; ++t) {
            std::vector<Elem> f;
            for (int c = 0; c < 2; ++c) f.push_back({rng.below(n)});
            CHECK(as_set(perp_of_w_subset(q, f)) == brute_perp_v(q, f));
        }
    }
}

TEST_CASE("An and Ke: frozen fixtures") {
    Module n4 = cyclic_module(zmod(4), Side::right, 4);
    HomModule dual = dual_module(n4);
    // An((2)) = {x -> cx : c in {0,2}}, two functionals
    Submodule an1 = an_submodule(dual, submodule_span(n4, {{2}}));
    CHECK(sub_cardinality(an1) == 2);
    // the nonzero annihilating functional maps 1 to 2
    for (const auto& f : sub_elements(an1, kCaps))
        if (!elem_is_zero(f)) CHECK(dual_eval(dual, f, {1}) == 2);
    // An(0) = all of Hom(N, R)
    CHECK(sub_cardinality(an_submodule(dual, zero_submodule(n4))) == 4);
    // An(N) = 0
    CHECK(sub_cardinality(an_submodule(dual, full_submodule(n4))) == 1);

    // Ke fixtures
    Submodule x1 = submodule_span(dual.hom, {dual.from_map(
        make_map(n4, free_module(zmod(4), Side::left, 1, kCaps), ZnMatrix::from_rows(4, {{2}}, 1)))});
    CHECK(as_set(ke_submodule(dual, x1)) == std::set<Elem>{{0}, {2}});
    CHECK(sub_cardinality(ke_submodule(dual, zero_submodule(dual.hom))) == 4);
    CHECK(sub_cardinality(ke_submodule(dual, full_submodule(dual.hom))) == 1);
}

TEST_CASE("closure and biperp") {
    Pairing p = mult4();
    Submodule two = submodule_span(p.v_mod, {{2}});
    CHECK(sub_equal(closure(p, two), two));
    CHECK(sub_equal(biperp(p, two), two));
    CHECK(sub_equal(closure(p, full_submodule(p.v_mod)), full_submodule(p.v_mod)));

    Pairing d = degenerate4();
    Submodule z = zero_submodule(d.v_mod);
    CHECK(as_set(closure(d, z)) == std::set<Elem>{{0}, {2}});
    CHECK(as_set(biperp(d, z)) == std::set<Elem>{{0}, {2}});

    Pairing zp = [&] {
        Module v = free_module(zmod(4), Side::right, 1, kCaps);
        Module w = free_module(zmod(4), Side::left, 1, kCaps);
        return make_pairing(v, w, ZnMatrix(4, 1, 1));
    }();
    CHECK_FALSE(is_hausdorff(zp));
    CHECK(is_hausdorff(p));
    CHECK_FALSE(is_hausdorff(d));
}

TEST_CASE("galois connection properties on a corpus") {
    for (i64 n : {4, 6, 8, 9}) {
        Ring r = zmod(n);
        Rng rng(mix_seed(11, static_cast<u64>(n)));
        std::vector<Module> vmods, wmods;
        for (i64 dd : divisors(n))
            if (dd > 1) {
                vmods.push_back(cyclic_module(r, Side::right, dd));
                wmods.push_back(cyclic_module(r, Side::left, dd));
            }
        for (const auto& v : vmods)
            for (const auto& w : wmods) {
                // random valid beta
                i64 g = gcd_ll(v.chain[0], w.chain[0]);
                ZnMatrix b(n, 1, 1);
                b.set(0, 0, (n / g) * rng.below(g));
                Pairing p = make_pairing(v, w, b);
                for (const auto& x : all_submodules(v, kCaps)) {
                    Submodule xpp = biperp(p, x);
                    CHECK(sub_subset(x, xpp));
                    // triple perp collapse
                    Submodule xp = perp_of_v_sub(p, x);
                    Submodule xppp = perp_of_v_sub(p, xpp);
                    CHECK(sub_equal(xp, xppp));
                    // closure inside biperp always
                    CHECK(sub_subset(closure(p, x), xpp));
                    // over Z/n (injective cogenerator): equality
                    CHECK(sub_equal(closure(p, x), xpp));
                }
                // perp reverses inclusions
                auto subs = all_submodules(v, kCaps);
                for (const auto& a : subs)
                    for (const auto& bsub : subs)
                        if (sub_subset(a, bsub))
                            CHECK(sub_subset(perp_of_v_sub(p, bsub), perp_of_v_sub(p, a)));
            }
    }
}

TEST_CASE("density") {
    Pairing p = mult4();
    Submodule two = submodule_span(p.v_mod, {{2}});
    Submodule full = full_submodule(p.v_mod);
    CHECK_FALSE(is_dense_in(p, two, full, kCaps));
    CHECK(is_dense_in(p, two, two, kCaps));
    Pairing d = degenerate4();
    Submodule z = zero_submodule(d.v_mod);
    Submodule zc = submodule_span(d.v_mod, {{2}});
    CHECK(is_dense_in(d, z, zc, kCaps));
    CHECK_THROWS_AS(is_dense_in(p, full, two, kCaps), ContractError);
    CHECK(is_dense_pairing(p, kCaps));
    CHECK_FALSE(is_dense_pairing(d, kCaps));
}

TEST_CASE("open submodules at finite scale") {
    Pairing p = mult4();
    for (const auto& x : all_submodules(p.v_mod, kCaps)) {
        // Hausdorff pairing: W^perp = 0, everything is open
        CHECK(is_open(p, x, kCaps));
    }
    Pairing d = degenerate4();
    CHECK_FALSE(is_open(d, zero_submodule(d.v_mod), kCaps));
    CHECK(is_open(d, submodule_span(d.v_mod, {{2}}), kCaps));
}

TEST_CASE("completion") {
    // mult pairing: V/W^perp = Z/4 isomorphic to *W
    Completion c1 = completion(mult4(), kCaps);
    CHECK(c1.completed.chain == std::vector<i64>{4});
    CHECK(c1.isomorphism);

    // degenerate: V/{0,2} = Z/2 embeds but does not cover *W = Z/4
    Completion c2 = completion(degenerate4(), kCaps);
    CHECK(c2.completed.chain == std::vector<i64>{2});
    CHECK(c2.injective);
    CHECK_FALSE(c2.surjective);

    // V = (2) inside Z/4 with the mult pairing: not dense, completion Z/2
    Pairing p = mult4();
    Pairing restricted = restrict_v(p, submodule_span(p.v_mod, {{2}}));
    Completion c3 = completion(restricted, kCaps);
    CHECK(c3.completed.chain == std::vector<i64>{2});
    CHECK_FALSE(c3.surjective);
}

TEST_CASE("subpairings") {
    Pairing p = mult4();
    Submodule vp = submodule_span(p.v_mod, {{2}});
    Submodule wp = submodule_span(p.w_mod, {{2}});
    Subpairing q = subpairing(p, vp, wp, kCaps);
    CHECK(q.q.v_mod.chain == std::vector<i64>{2});
    CHECK(q.q.w_mod.chain == std::vector<i64>{2});
    CHECK_FALSE(q.w_prime_pure);  // (2) in Z/4 is not pure

    // V' = 0, W' = W reproduces P
    Subpairing full = subpairing(p, zero_submodule(p.v_mod), full_submodule(p.w_mod), kCaps);
    CHECK(full.q.v_mod.chain == p.v_mod.chain);
    CHECK(full.q.w_mod.chain == p.w_mod.chain);

    // V' = (2), W' = W must be rejected: <2, 1> = 2
    CHECK_THROWS_AS(subpairing(p, vp, full_submodule(p.w_mod), kCaps), ContractError);
}

TEST_CASE("morphism continuity: xi^{-1}(K'^perp) = (theta(K'))^perp") {
    for (i64 n : {4, 6}) {
        Pairing p = mult_pairing(zmod(n), kCaps);
        for (const auto& vp : all_submodules(p.v_mod, kCaps)) {
            for (const auto& wp : all_submodules(p.w_mod, kCaps)) {
                // need <V', W'> = 0
                bool zero = true;
                for (const auto& a : sub_elements(vp, kCaps))
                    for (const auto& b : sub_elements(wp, kCaps))
                        if (pair_eval(p, a, b) != 0) zero = false;
                if (!zero) continue;
                Subpairing q = subpairing(p, vp, wp, kCaps);
                for (const auto& kp : all_submodules(q.q.w_mod, kCaps)) {
                    Submodule lhs = map_preimage(q.morphism.xi, perp_of_w_sub(q.q, kp));
                    Submodule thetak = sub_image(q.morphism.theta, kp);
                    Submodule rhs = perp_of_w_sub(p, thetak);
                    CHECK(sub_equal(lhs, rhs));
                }
            }
        }
    }
}

TEST_CASE("dual maps: doubling fixture") {
    // theta : Z/4 -> Z/4, x -> 2x over zmod(4)
    Module w = free_module(zmod(4), Side::left, 1, kCaps);
    LinearMap theta = make_map(w, w, ZnMatrix::from_rows(4, {{2}}, 1));
    HomModule dual = dual_module(w);
    LinearMap star = dual_map(dual, dual, theta);
    // K = (2): An(K) = {0, 2}; theta*(An(K)) = 0
    Submodule ank = an_submodule(dual, submodule_span(w, {{2}}));
    Submodule image = sub_image(star, ank);
    CHECK(sub_cardinality(image) == 1);
    // theta^{-1}((2)) = Z/4; An(Z/4) = 0
    Submodule pre = map_preimage(theta, submodule_span(w, {{2}}));
    CHECK(sub_cardinality(pre) == 4);
    CHECK(sub_cardinality(an_submodule(dual, pre)) == 1);
    // identity theta gives identity theta*
    LinearMap id = identity_map(w);
    LinearMap idstar = dual_map(dual, dual, id);
    CHECK(idstar.mat == ZnMatrix::identity(4, 1));
}

TEST_CASE("canonical pairings") {
    // (*W, W) for W = Z/2 over zmod(4): *W = Z/2, <f, w> = f(w) = 2w
    Module w = cyclic_module(zmod(4), Side::left, 2);
    CanonicalPairing cp = canonical_dual_pairing(w, kCaps);
    CHECK(cp.pairing.v_mod.chain == std::vector<i64>{2});
    CHECK(pair_eval(cp.pairing, {1}, {1}) == 2);
    // the finite topology on *W is Hausdorff (radical of the V side is 0)
    CHECK(is_hausdorff(cp.pairing));

    // (V, V*) for V = Z/4
    Module v = free_module(zmod(4), Side::right, 1, kCaps);
    CanonicalPairing bp = canonical_bidual_pairing(v, kCaps);
    CHECK(pair_eval(bp.pairing, {3}, {1}) == 3);
}

TEST_CASE("table pairings") {
    Ring r = ut2_f2();
    Pairing p = mult_pairing(r, kCaps);
    CHECK(is_hausdorff(p));
    CHECK(is_dense_pairing(p, kCaps));
    // closure of a right ideal X: X + W^perp = X here
    auto ideals = right_ideals(r, kCaps);
    for (const auto& ideal : ideals) {
        std::vector<Elem> gens;
        for (i64 e : ideal.elems) gens.push_back({e});
        Submodule x = submodule_span(p.v_mod, gens);
        Submodule cl = closure(p, x);
        CHECK(sub_equal(cl, x));
        // biperp contains the closure
        CHECK(sub_subset(cl, biperp(p, x)));
    }
    Completion c = completion(p, kCaps);
    CHECK(c.isomorphism);
}
