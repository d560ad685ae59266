#pragma once

#include "pairlab/modules.hpp"

namespace pairlab {

// A pairing (V, W, beta): V a right module, W a left module, beta balanced
// bilinear into R. Over Z/n beta is a matrix on canonical generators; over a
// table ring it is a generator matrix of ring elements.
struct Pairing {
    Module v_mod;  // right
    Module w_mod;  // left
    ZnMatrix beta;                          // Z/n backend
    std::vector<std::vector<i64>> beta_tab;  // table backend

    bool is_zmod() const { return v_mod.is_zmod(); }
    json describe() const;
};

// Validates balance laws; rejects with a witness triple (v, r, w).
Pairing make_pairing(const Module& v, const Module& w, const ZnMatrix& beta);
Pairing make_table_pairing(const Module& v, const Module& w,
                           const std::vector<std::vector<i64>>& beta, const Caps& caps);

// <v, w> as a ring element.
i64 pair_eval(const Pairing& p, const Elem& v, const Elem& w);

// Multiplication pairing (R, R, <v,w> = vw).
Pairing mult_pairing(const Ring& r, const Caps& caps);

// kappa : V -> *W and chi : W -> V* with their dual carriers (Z/n backend).
struct DualizedMap {
    HomModule dual;  // carrier of the codomain
    LinearMap map;
};
DualizedMap kappa_map(const Pairing& p);
DualizedMap chi_map(const Pairing& p);

// Canonical pairing (*W, W) with <f, w> = f(w).
struct CanonicalPairing {
    HomModule dual;  // *W, the V side of the pairing
    Pairing pairing;
};
CanonicalPairing canonical_dual_pairing(const Module& w, const Caps& caps);
// Pairing (V, V*) with <v, f> = f(v).
CanonicalPairing canonical_bidual_pairing(const Module& v, const Caps& caps);

// ---- table-backend dual carrier -------------------------------------------------

// *W for a table module, abstracted as a table module plus the functional
// value tuple of every element.
struct TableDual {
    Module source;
    Module dual_mod;
    std::vector<Elem> functional_of;  // per reps index: values on source generators
};
TableDual table_dual(const Module& w, const Caps& caps);

// ---- orthogonals -------------------------------------------------------------------

// {v in V : <v, f> = 0 for all f in F}.
Submodule perp_of_w_subset(const Pairing& p, const std::vector<Elem>& f_subset);
Submodule perp_of_w_sub(const Pairing& p, const Submodule& f);
// {w in W : <x, w> = 0 for all x in X}.
Submodule perp_of_v_subset(const Pairing& p, const std::vector<Elem>& x_subset);
Submodule perp_of_v_sub(const Pairing& p, const Submodule& x);

Submodule radical_v(const Pairing& p);  // W^perp = Ker(kappa)
Submodule radical_w(const Pairing& p);  // V^perp = Ker(chi)

// ---- annihilator / kernel operators (un-paired form) --------------------------------

// An(L) = {f in Hom(N, R) : f(L) = 0}; submodule of dual.hom.
Submodule an_submodule(const HomModule& dual, const Submodule& l);
// Ke(X) = common kernel of X subset Hom(N, R); submodule of dual.source.
Submodule ke_submodule(const HomModule& dual, const Submodule& x);

// ---- topology -----------------------------------------------------------------------

// Closure by the definitional intersection over a generating chain of finite
// subsets; asserts the finite-scale collapse to X + W^perp.
Submodule closure(const Pairing& p, const Submodule& x);
Submodule biperp(const Pairing& p, const Submodule& x);
bool is_closed(const Pairing& p, const Submodule& x);
// Reduced test (X contains W^perp) cross-checked against a bounded search over
// finite subsets F with F^perp inside X.
bool is_open(const Pairing& p, const Submodule& x, const Caps& caps);
bool is_hausdorff(const Pairing& p);
// X dense in Y (X subset of Y required); closure route, with the perp-route
// agreement asserted over injective cogenerator rings.
bool is_dense_in(const Pairing& p, const Submodule& x, const Submodule& y, const Caps& caps);
// kappa(V) dense in *W; at finite scale, kappa surjective.
bool is_dense_pairing(const Pairing& p, const Caps& caps);

// ---- completion -----------------------------------------------------------------------

struct Completion {
    Module completed;       // V / W^perp
    bool injective = false;   // comparison map into *W
    bool surjective = false;
    bool isomorphism = false;
    std::vector<i64> dual_chain;  // shape of *W (Z/n backend)
};
Completion completion(const Pairing& p, const Caps& caps);

// ---- morphisms and subpairings ---------------------------------------------------------

// (xi, theta) : (V', W') -> (V, W) with xi : V -> V', theta : W' -> W and
// <xi(v), w'> = <v, theta(w')>.
struct PairingMorphism {
    Pairing source;  // (V', W')
    Pairing target;  // (V, W)
    LinearMap xi;    // V -> V'
    LinearMap theta; // W' -> W
};
PairingMorphism make_morphism(const Pairing& source, const Pairing& target, const LinearMap& xi,
                              const LinearMap& theta, const Caps& caps);

struct Subpairing {
    Pairing q;            // (V/V', W')
    PairingMorphism morphism;  // (pi, iota) : (V/V', W') -> (V, W)
    ZnMatrix v_section;   // coordinate lift of quotient generators (not a hom)
    bool w_prime_pure = false;  // recorded for the restriction results
};
// Requires <V', W'> = 0 (checked exhaustively); rejects with a witness pair.
Subpairing subpairing(const Pairing& p, const Submodule& v_prime, const Submodule& w_prime,
                      const Caps& caps);

// Restriction pairing (V, W') for W' inside W.
Pairing restrict_w(const Pairing& p, const Submodule& w_prime, SubAsModule* w_abs_out = nullptr);
// Restriction pairing (V', W) for V' inside V.
Pairing restrict_v(const Pairing& p, const Submodule& v_prime, SubAsModule* v_abs_out = nullptr);

// ---- dual maps ---------------------------------------------------------------------------

// theta* : Hom(W, R) -> Hom(W', R), f -> f ∘ theta, for theta : W' -> W.
LinearMap dual_map(const HomModule& dual_w, const HomModule& dual_w_prime, const LinearMap& theta);

}  // namespace pairlab
