#include "pairlab/common.hpp"

#include <numeric>

namespace pairlab {

i64 gcd_ll(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm_ll(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return a / gcd_ll(a, b) * b;
}

XGcd xgcd(i64 a, i64 b) {
    i64 old_r = a, r = b;
    i64 old_u = 1, u = 0;
    i64 old_v = 0, v = 1;
    while (r != 0) {
        i64 q = old_r / r;
        i64 t;
        t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_u - q * u;
        old_u = u;
        u = t;
        t = old_v - q * v;
        old_v = v;
        v = t;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_u = -old_u;
        old_v = -old_v;
    }
    return {old_r, old_u, old_v};
}

i64 mod_reduce(i64 a, i64 n) {
    i64 r = a % n;
    return r < 0 ? r + n : r;
}

i64 mul_mod(i64 a, i64 b, i64 n) { return mod_reduce(mod_reduce(a, n) * mod_reduce(b, n), n); }

i64 mul_sat(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    if (a > INT64_MAX / b) return INT64_MAX;
    return a * b;
}

i64 mod_inverse(i64 a, i64 n) {
    XGcd x = xgcd(mod_reduce(a, n), n);
    if (x.g != 1) throw ContractError("mod_inverse: element is not a unit");
    return mod_reduce(x.u, n);
}

i64 associate_unit(i64 a, i64 n) {
    a = mod_reduce(a, n);
    if (a == 0) return 1;
    i64 d = gcd_ll(a, n);
    i64 m = n / d;
    if (m == 1) return 1;  // a is an associate of 0... d = n means a = 0, handled above
    i64 u = mod_inverse((a / d) % m, m);
    // lift the unit mod m to a unit mod n; the progression u + k*m contains one
    while (gcd_ll(u, n) != 1) u += m;
    return mod_reduce(u, n);
}

std::vector<i64> divisors(i64 n) {
    std::vector<i64> small, large;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    for (auto it = large.rbegin(); it != large.rend(); ++it) small.push_back(*it);
    return small;
}

u64 fnv1a(const std::string& s) {
    u64 h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

u64 mix_seed(u64 a, u64 b) {
    // splitmix64 step over the combination
    u64 z = a + 0x9e3779b97f4a7c15ULL + (b << 1 | 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace pairlab
