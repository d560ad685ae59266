#pragma once

#include "pairlab/pairings.hpp"

namespace pairlab {

// alpha_M : M (x) W -> Hom(V, M), m (x) w -> [v -> m<v,w>].
struct AlphaMap {
    Pairing pairing;
    Module test_module;
    TensorModule domain;   // M (x) W
    HomModule codomain;    // Hom(V, M)
    LinearMap map;
};
AlphaMap alpha_map(const Pairing& p, const Module& m, const Caps& caps);

struct AlphaInjectivity {
    bool injective = false;
    Elem witness;            // nonzero kernel element (tensor coordinates)
    std::string witness_pretty;
};
AlphaInjectivity alpha_injective_for(const Pairing& p, const Module& m, const Caps& caps);

struct AlphaVerdict {
    bool satisfied = false;
    std::string certainty;  // "exact" | "bounded"
    json witness;           // on false: test module and kernel element
};
// Z/n backend: cyclic divisor family (exact, licensed by the finitely
// presented reduction); table backend: cyclic quotients R/I (bounded).
AlphaVerdict satisfies_alpha(const Pairing& p, const Caps& caps);

// Brute force over every finitely presented module of cardinality <= max_card;
// the oracle side of the cyclic-reduction gate.
AlphaVerdict alpha_bruteforce(const Pairing& p, i64 max_card, const Caps& caps);
// All divisor chains over Z/n with product <= max_card (including the empty one).
std::vector<std::vector<i64>> divisor_chains(i64 n, i64 max_card);
// Purity brute force over the same family.
PurityResult purity_bruteforce(const Submodule& k, i64 max_card, const Caps& caps);

struct LocalProjectivity {
    bool value = false;
    bool route_alpha = false;       // alpha-condition of (*W, W)
    bool route_dual_basis = false;  // local dual bases on every f.g. submodule
    bool bounded = false;           // table backend
};
// Asserts both routes agree (the locally-projective / alpha equivalence).
LocalProjectivity is_locally_projective(const Module& w, const Caps& caps);

// Membership criterion for alpha-pairings: t in N (x) W iff all evaluations
// sum m_i <v, w_i> land in N. Evaluates both routes and asserts agreement.
// Throws ContractError when P is not an alpha-pairing.
bool q2_membership(const Pairing& p, const Module& m, const Submodule& n_sub, const Elem& t,
                   const Caps& caps);

// Tensor pairing (V' (x) V, W (x) W') with <v'(x)v, w(x)w'> = <v, w<v',w'>>.
struct TensorPairingResult {
    Pairing pairing;
    bool alpha_inputs = false;    // both inputs certified alpha
    bool alpha_asserted = false;  // result passed satisfies_alpha
};
TensorPairingResult tensor_pairing(const Pairing& p, const Pairing& q, const Caps& caps);
// Mirrored right-tensor construction agrees with the left one over Z/n.
bool tensor_pairing_mirror_agrees(const Pairing& p, const Pairing& q, const Caps& caps);

// beta_M : M (x) R^X -> M^X, m (x) f -> [x -> m f(x)].
struct BetaMapResult {
    bool injective = false;
    i64 x_size = 0;
};
BetaMapResult beta_map(const Module& m, i64 x_size, const Caps& caps);

// delta : E (x) E' -> R^(X x X'), f (x) f' -> [(x,x') -> f(x) f'(x')].
struct UnoDeltaResult {
    bool injective = false;
    bool hypothesis_pure = false;  // E' is E-pure in R^X'
    Elem witness;
};
UnoDeltaResult uno_delta(const Submodule& e, const Submodule& e_prime, const Caps& caps);

// Ke(kappa(X' (x) X)) versus Ke(X) (x) W' + W (x) Ke(X').
struct KeFormulaResult {
    bool equal = false;
    bool hyp_w_flat = false;
    bool hyp_kex_pure = false;
    i64 lhs_size = 0, rhs_size = 0;
};
KeFormulaResult uno_ke_formula(const Module& w, const Module& w_prime, const Submodule& x,
                               const Submodule& x_prime, const Caps& caps);

// The function-module embedding chi~ : W -> R^V on the carrier of V.
struct FunctionEmbedding {
    Module rv;            // free module on the elements of V
    LinearMap chi_tilde;  // W -> R^V
    bool injective = false;
    Submodule image;      // chi~(W) inside R^V
};
FunctionEmbedding function_embedding(const Pairing& p, const Caps& caps);

// Restriction/quotient alpha transfer (the two-part statement about induced
// pairings) evaluated on an instance.
json rp_rp_suite(const Pairing& p, const Submodule& v_prime, const Submodule& w_prime,
                 const Caps& caps);

// Equivalence battery for alpha-pairings over QF rings, with the semisimple
// reduction when the ring is semisimple.
json pw_dicht_suite(const Pairing& p, const Caps& caps);

// ---- table-backend bounded variants ------------------------------------------------

// Canonical pairing (*W, W) over a table ring.
struct TableCanonicalPairing {
    TableDual dual;
    Pairing pairing;
};
TableCanonicalPairing table_canonical_dual_pairing(const Module& w, const Caps& caps);

// Kernel elements of alpha over the table backend; bounded machinery.
struct TableAlphaResult {
    bool injective = false;
    std::vector<Elem> witness_tuple;  // M^l representative of a kernel element
};
TableAlphaResult table_alpha_injective(const Pairing& p, const Module& m, const Caps& caps);

// An / Ke over a table dual.
Submodule table_an(const TableDual& dual, const Submodule& l);
Submodule table_ke(const TableDual& dual, const Submodule& x);

// Purity over the table backend: bounded test family (cyclic quotients).
PurityResult table_is_pure(const Submodule& k, const Caps& caps);

// A table submodule presented abstractly, with its generators in the ambient.
struct TableSubModule {
    Module module;
    std::vector<Elem> gens;
};
TableSubModule table_sub_module(const Submodule& k, const Caps& caps);

LocalProjectivity table_is_locally_projective(const Module& w, const Caps& caps);

}  // namespace pairlab
