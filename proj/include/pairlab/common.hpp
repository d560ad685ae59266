#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pairlab {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// ---- errors ---------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (dimension mismatch, X not a
// subset of Y, hypothesis violation, ...).
struct ContractError : Error {
    using Error::Error;
};

// A configured resource cap would be exceeded.
struct CapError : Error {
    using Error::Error;
};

// Input rejected at construction; `detail` carries the witness (serialized).
struct ValidationError : Error {
    std::string detail;
    explicit ValidationError(const std::string& msg, std::string d = {})
        : Error(msg), detail(std::move(d)) {}
};

// A cross-check that theory says can never fail did fail.
struct InternalCheckError : Error {
    using Error::Error;
};

// ---- sides ----------------------------------------------------------------

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }
inline Side opposite(Side s) { return s == Side::left ? Side::right : Side::left; }

// ---- integer helpers (entries stay below 2^31, products fit in i64) --------

i64 gcd_ll(i64 a, i64 b);
i64 lcm_ll(i64 a, i64 b);

struct XGcd {
    i64 g, u, v;  // g = u*a + v*b
};
XGcd xgcd(i64 a, i64 b);

i64 mod_reduce(i64 a, i64 n);      // into [0, n)
i64 mul_mod(i64 a, i64 b, i64 n);
i64 mul_sat(i64 a, i64 b);         // saturating product of nonnegative values
i64 mod_inverse(i64 a, i64 n);     // requires gcd(a, n) = 1
// A unit u with u*a ≡ gcd(a, n) (mod n); makes pivots canonical divisors.
i64 associate_unit(i64 a, i64 n);
std::vector<i64> divisors(i64 n);  // ascending, includes 1 and n

// ---- deterministic rng ------------------------------------------------------

// mt19937_64 produces identical streams on every platform; std distributions
// do not, so bounded sampling goes through below().
class Rng {
  public:
    explicit Rng(u64 seed) : eng_(seed) {}
    u64 next() { return eng_(); }
    i64 below(i64 k) { return k <= 1 ? 0 : static_cast<i64>(next() % static_cast<u64>(k)); }

  private:
    std::mt19937_64 eng_;
};

u64 mix_seed(u64 a, u64 b);
u64 fnv1a(const std::string& s);  // deterministic string hash for seed derivation

// ---- caps -------------------------------------------------------------------

// Resource caps; every report echoes the caps it ran under.
struct Caps {
    i64 ring = 64;             // max |R| for ring-level predicates
    i64 elements = 4096;       // max module cardinality for enumeration
    i64 tensor = 4096;         // max tensor carrier
    i64 beta_exhaustive = 64;  // enumerate beta exhaustively while |V|*|W| <= this
    i64 beta_samples = 200;    // seeded samples otherwise
    i64 submodules = 20000;    // max submodules enumerated per module
};

}  // namespace pairlab
