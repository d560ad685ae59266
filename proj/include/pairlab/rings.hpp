#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pairlab/common.hpp"

namespace pairlab {

using json = nlohmann::json;

struct RingData;
using Ring = std::shared_ptr<const RingData>;

// A finite associative unital ring. Backends: Z/nZ (n > 0) or explicit tables.
// Elements are i64 values: residues for Z/n, indices into the tables otherwise.
struct RingData {
    i64 n = 0;  // > 0 selects the Z/nZ backend

    i64 size = 0;  // table backend
    std::vector<i64> add_table, mul_table;  // size*size, row-major
    i64 zero = 0, one = 1;
    std::vector<std::string> names;
    std::string label;

    bool is_zmod() const { return n > 0; }
    i64 order() const { return is_zmod() ? n : size; }
    i64 add(i64 a, i64 b) const {
        return is_zmod() ? mod_reduce(a + b, n) : add_table[static_cast<size_t>(a) * size + b];
    }
    i64 mul(i64 a, i64 b) const {
        return is_zmod() ? mul_mod(a, b, n) : mul_table[static_cast<size_t>(a) * size + b];
    }
    i64 neg(i64 a) const;
    i64 sub(i64 a, i64 b) const { return add(a, neg(b)); }
    i64 zero_elem() const { return is_zmod() ? 0 : zero; }
    i64 one_elem() const { return is_zmod() ? 1 : one; }
    bool is_commutative() const;
    i64 characteristic() const;  // additive order of 1
    std::string elem_name(i64 e) const;
    json describe() const;  // instance-file form

    struct Cache {
        std::optional<bool> self_injective, self_injective_left;
        json baer_witness;
        std::optional<bool> cogenerator, semisimple, hereditary, commutative;
        std::optional<i64> characteristic;
    };
    mutable Cache cache;
};

// Z/nZ; requires 2 <= n <= 2^31 (1_R != 0_R rules out n = 1).
Ring zmod(i64 n);

// Explicit-table ring; every axiom is verified exhaustively and the first
// failure is reported with a witness triple.
Ring table_ring(std::vector<std::string> names, std::vector<i64> add, std::vector<i64> mul,
                i64 zero, i64 one, std::string label = "table");

// Table rendering of Z/n (for backend-equivalence checks).
Ring zmod_as_table(i64 n);

// Upper-triangular 2x2 matrices over F_2; the standard 8-element
// noncommutative fixture.
Ring ut2_f2();

bool same_ring(const Ring& a, const Ring& b);

struct RightIdeal {
    Ring ring;
    std::vector<i64> elems;  // sorted canonical element list
};

// All right ideals, canonical and deterministically ordered.
std::vector<RightIdeal> right_ideals(const Ring& r, const Caps& caps);
std::vector<RightIdeal> one_sided_ideals(const Ring& r, Side side, const Caps& caps);

// Span of `gens` as a one-sided ideal (additive + one-sided multiplicative
// closure).
std::vector<i64> ideal_span(const Ring& r, Side side, const std::vector<i64>& gens);

// Minimal generating list of an ideal, chosen greedily in element order.
std::vector<i64> ideal_generators(const Ring& r, Side side, const std::vector<i64>& elems);

struct BoolWitness {
    bool value = false;
    json witness;  // populated on the informative side of the verdict
};

// Baer criterion over all right ideals. On false the witness carries the
// ideal and the non-extending map. FP-injectivity collapses to this for
// finite rings (they are Noetherian); reports phrase it that way.
BoolWitness is_self_injective(const Ring& r, const Caps& caps);
// Left-side variant, exposed as an optional verification (see rings docs).
BoolWitness is_self_injective_left(const Ring& r, const Caps& caps);

// Every simple right module embeds into R_R.
bool is_cogenerator_ring(const Ring& r, const Caps& caps);

// For finite rings QF = cogenerator; also asserts agreement with
// self-injective ∧ cogenerator and throws InternalCheckError on disagreement.
bool is_qf(const Ring& r, const Caps& caps);

// Every right ideal is a direct summand of R_R.
bool is_semisimple(const Ring& r, const Caps& caps);

// Finite-scale hereditary: every right ideal admits a dual basis.
bool is_hereditary(const Ring& r, const Caps& caps);

// Vacuously true for finite rings; kept as named predicates so reports can
// distinguish "tested" from "trivially satisfied".
inline bool is_noetherian_finite(const Ring&) { return true; }
inline bool is_artinian_finite(const Ring&) { return true; }

}  // namespace pairlab
