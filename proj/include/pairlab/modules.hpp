#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "pairlab/exactlin.hpp"
#include "pairlab/rings.hpp"

namespace pairlab {

// Element of a module: canonical coordinates. For the Z/n backend, coordinate
// i lives in [0, chain[i]); for the table backend the element is its lex-least
// coset representative in R^rank.
using Elem = std::vector<i64>;

struct TableModuleData {
    Ring ring;
    Side side = Side::right;
    int rank = 0;
    std::vector<Elem> rel_span;       // sorted, contains the zero vector
    std::vector<Elem> reps;           // canonical coset representatives, lex sorted
    std::map<Elem, int> coset_index;  // every vector of R^rank -> index into reps
};

// A finitely presented one-sided module. Z/n backend: canonical invariant
// factor chain. Table backend: explicit coset table of R^rank.
struct Module {
    Ring ring;
    Side side = Side::right;
    std::vector<i64> chain;  // ascending divisor chain, entries > 1
    std::shared_ptr<const TableModuleData> table;

    bool is_zmod() const { return ring && ring->is_zmod(); }
    int gens() const { return table ? table->rank : static_cast<int>(chain.size()); }
    i64 cardinality() const;
    bool is_zero() const { return cardinality() == 1; }
    json describe() const;
};

bool same_module(const Module& a, const Module& b);  // identical canonical shape

// ---- construction -----------------------------------------------------------

// relations rows are presentation relations on `generators` generators.
Module fp_module(const Ring& r, Side side, int generators, const ZnMatrix& relations);
Module fp_module_rows(const Ring& r, Side side, int generators,
                      const std::vector<std::vector<i64>>& relation_rows, const Caps& caps);
Module zero_module(const Ring& r, Side side);
Module free_module(const Ring& r, Side side, int rank, const Caps& caps);
Module cyclic_module(const Ring& r, Side side, i64 d);  // Z/d over zmod, d | n

// ---- element arithmetic -------------------------------------------------------

Elem zero_elem(const Module& m);
Elem elem_add(const Module& m, const Elem& a, const Elem& b);
Elem elem_neg(const Module& m, const Elem& a);
Elem elem_scale(const Module& m, i64 r, const Elem& a);  // side-appropriate ring action
Elem canon_elem(const Module& m, const Elem& raw);       // reduce coordinates
bool elem_is_zero(const Elem& a);
std::vector<Elem> elements(const Module& m, const Caps& caps);  // canonical order

// ---- linear maps (Z/n backend) -----------------------------------------------

struct LinearMap {
    Module src, dst;
    ZnMatrix mat;  // src.gens x dst.gens, entries mod n

    Elem apply(const Elem& x) const;
};
LinearMap make_map(const Module& src, const Module& dst, const ZnMatrix& mat);  // validated
LinearMap identity_map(const Module& m);
LinearMap compose(const LinearMap& first, const LinearMap& then);
LinearMap zero_map(const Module& src, const Module& dst);
bool map_is_injective(const LinearMap& f);
bool map_is_surjective(const LinearMap& f);

// ---- submodules ----------------------------------------------------------------

struct Submodule {
    Module ambient;
    ZnMatrix lifted;          // zmod: Howell form in (Z/n)^gens, relation rows included
    std::vector<Elem> elems;  // table: sorted closed set of representatives

    bool is_zmod() const { return ambient.is_zmod(); }
};

Submodule submodule_span(const Module& m, const std::vector<Elem>& gens);
Submodule zero_submodule(const Module& m);
Submodule full_submodule(const Module& m);
bool sub_contains(const Submodule& s, const Elem& x);
bool sub_equal(const Submodule& a, const Submodule& b);
bool sub_subset(const Submodule& a, const Submodule& b);  // a ⊆ b
Submodule sub_sum(const Submodule& a, const Submodule& b);
Submodule sub_intersect(const Submodule& a, const Submodule& b);
i64 sub_cardinality(const Submodule& s);
std::vector<Elem> sub_elements(const Submodule& s, const Caps& caps);
// Nonzero canonical generators (rows of the Howell form / closure generators).
std::vector<Elem> sub_generators(const Submodule& s);
json sub_describe(const Submodule& s);

// All submodules, deterministically ordered (BFS closure, canonical sort).
std::vector<Submodule> all_submodules(const Module& m, const Caps& caps);

// Image and preimage under a linear map; kernel as a submodule of src.
Submodule map_image(const LinearMap& f);
Submodule map_kernel(const LinearMap& f);
Submodule map_preimage(const LinearMap& f, const Submodule& of_dst);
Submodule sub_image(const LinearMap& f, const Submodule& of_src);

// ---- quotients -------------------------------------------------------------------

struct Quotient {
    Module module;
    LinearMap projection;  // ambient -> quotient
    ZnMatrix section;      // quotient gens lifted to ambient coords (zmod)
};
Quotient quotient_module(const Module& m, const Submodule& s, const Caps& caps);

// A submodule as an abstract module together with its inclusion.
struct SubAsModule {
    Module module;
    LinearMap incl;  // module -> ambient
};
SubAsModule sub_as_module(const Submodule& s);

// ---- Hom, dual, tensor, direct sum (Z/n backend) -----------------------------------

// Module of homomorphisms src -> dst with exact evaluation. Raw coordinates
// index generator pairs (i, j) with additive order gcd(d_i, e_j).
struct HomModule {
    Module source, target;
    Module hom;
    std::vector<i64> raw_orders;
    ZnMatrix to_canonical, from_canonical;  // raw <-> canonical coords

    LinearMap as_map(const Elem& h) const;
    Elem from_map(const LinearMap& f) const;
    Elem apply(const Elem& h, const Elem& x) const;
};
HomModule hom_module(const Module& m, const Module& target);
// Dual: maps into R; side swaps.
HomModule dual_module(const Module& m);
// Functional evaluation against raw dual coordinates f(x) = sum a_i (n/d_i) x_i.
i64 dual_eval(const HomModule& dual, const Elem& f, const Elem& x);

struct TensorModule {
    Module factor_m;  // right module
    Module factor_w;  // left module
    Module tensor;
    std::vector<i64> raw_orders;  // gcd(d_i, e_j), index i * l + j
    ZnMatrix to_canonical, from_canonical;

    Elem pure(const Elem& m, const Elem& w) const;
};
TensorModule tensor_module(const Module& m, const Module& w, const Caps& caps);
// f ⊗ id_W : (A ⊗ W) -> (B ⊗ W) for f : A -> B
LinearMap tensor_map_left(const LinearMap& f, const TensorModule& src, const TensorModule& dst);
// id_M ⊗ g : (M ⊗ A) -> (M ⊗ B) for g : A -> B
LinearMap tensor_map_right(const LinearMap& g, const TensorModule& src, const TensorModule& dst);

struct DirectSum {
    Module module;
    LinearMap inj1, inj2, proj1, proj2;
};
DirectSum direct_sum(const Module& a, const Module& b);

// ---- module predicates ---------------------------------------------------------------

struct FlatResult {
    bool flat = false;
    json witness;  // on false: the ideal and a nonzero kernel element
};
FlatResult is_flat(const Module& m, const Caps& caps);

struct ProjectiveResult {
    bool projective = false;
    json witness;  // on true: the dual basis
};
ProjectiveResult is_projective(const Module& m, const Caps& caps);

bool is_cogenerated(const Module& m, const Caps& caps);

struct PurityResult {
    bool pure = false;
    bool bounded = false;  // table backend: truncated test family
    json witness;          // on false: test module and a vanishing element
};
// Cohn purity; over Z/n tested against the cyclic divisor family (exact).
PurityResult is_pure_submodule(const Submodule& k, const Caps& caps);
// N-purity against one fixed test module.
PurityResult is_pure_for(const Submodule& k, const Module& t, const Caps& caps);

// Relative injectivity of R against a module: every map from a submodule of W
// into R extends (restriction of duals is surjective).
bool is_r_injective_for(const Module& w, const Caps& caps);

// One representative per isomorphism class of simple right R-modules.
std::vector<Module> simple_modules(const Ring& r, const Caps& caps);

// ---- table backend internals used by alpha/purity ------------------------------------

// Additive-group tensor M ⊗_R N for table-backend modules (M right, N left):
// quotient of M^l by the relation subgroup. Bounded machinery; carries the
// pure-tensor map and full element enumeration.
struct TableTensor {
    Module m, n;
    std::vector<std::vector<Elem>> elems;  // cosets: each element one representative tuple
    std::map<std::vector<Elem>, int> index;  // canonical rep tuple -> element id
    int zero_id = 0;

    int pure(const Elem& a, const Elem& b) const;  // id of a ⊗ b
    int add(int x, int y) const;
};
TableTensor table_tensor(const Module& m, const Module& n, const Caps& caps);

}  // namespace pairlab
