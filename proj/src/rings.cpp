#include "pairlab/rings.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

namespace pairlab {

i64 RingData::neg(i64 a) const {
    if (is_zmod()) return mod_reduce(-a, n);
    for (i64 b = 0; b < size; ++b)
        if (add(a, b) == zero) return b;
    throw InternalCheckError("table ring without additive inverse survived validation");
}

bool RingData::is_commutative() const {
    if (cache.commutative) return *cache.commutative;
    bool c = true;
    if (!is_zmod()) {
        for (i64 a = 0; a < size && c; ++a)
            for (i64 b = 0; b < size && c; ++b) c = mul(a, b) == mul(b, a);
    }
    cache.commutative = c;
    return c;
}

i64 RingData::characteristic() const {
    if (cache.characteristic) return *cache.characteristic;
    i64 c;
    if (is_zmod()) {
        c = n;
    } else {
        c = 1;
        i64 acc = one;
        while (acc != zero) {
            acc = add(acc, one);
            ++c;
        }
    }
    cache.characteristic = c;
    return c;
}

std::string RingData::elem_name(i64 e) const {
    if (is_zmod()) return std::to_string(e);
    if (e >= 0 && e < static_cast<i64>(names.size()) && !names[e].empty()) return names[e];
    return "e" + std::to_string(e);
}

json RingData::describe() const {
    if (is_zmod()) return json{{"zmod", n}};
    json add2(json::array()), mul2(json::array());
    for (i64 i = 0; i < size; ++i) {
        json ra(json::array()), rm(json::array());
        for (i64 j = 0; j < size; ++j) {
            ra.push_back(add_table[static_cast<size_t>(i) * size + j]);
            rm.push_back(mul_table[static_cast<size_t>(i) * size + j]);
        }
        add2.push_back(ra);
        mul2.push_back(rm);
    }
    return json{{"table", json{{"names", names},
                               {"add", add2},
                               {"mul", mul2},
                               {"zero", zero},
                               {"one", one},
                               {"label", label}}}};
}

Ring zmod(i64 n) {
    if (n < 2) throw ContractError("zmod: n >= 2 required (1_R != 0_R)");
    if (n > (i64(1) << 31)) throw ContractError("zmod: n <= 2^31 required");
    auto r = std::make_shared<RingData>();
    r->n = n;
    r->label = "zmod(" + std::to_string(n) + ")";
    return r;
}

namespace {

json triple_witness(const RingData& r, const char* axiom, std::vector<i64> elems) {
    json names(json::array());
    for (i64 e : elems) names.push_back(r.elem_name(e));
    return json{{"axiom", axiom}, {"elements", elems}, {"element_names", names}};
}

void validate_table(const RingData& r) {
    i64 k = r.size;
    if (k < 2) throw ValidationError("table ring: needs at least 2 elements (1_R != 0_R)");
    if (static_cast<i64>(r.add_table.size()) != k * k || static_cast<i64>(r.mul_table.size()) != k * k)
        throw ValidationError("table ring: add/mul tables must be size x size");
    for (i64 v : r.add_table)
        if (v < 0 || v >= k) throw ValidationError("table ring: add table entry out of range");
    for (i64 v : r.mul_table)
        if (v < 0 || v >= k) throw ValidationError("table ring: mul table entry out of range");
    if (r.zero < 0 || r.zero >= k || r.one < 0 || r.one >= k)
        throw ValidationError("table ring: zero/one out of range");
    if (r.zero == r.one) throw ValidationError("table ring: 1_R != 0_R violated");
    auto fail = [&](const char* axiom, std::vector<i64> w) {
        throw ValidationError(std::string("table ring: ") + axiom + " fails",
                              triple_witness(r, axiom, std::move(w)).dump());
    };
    for (i64 a = 0; a < k; ++a) {
        if (r.add(r.zero, a) != a) fail("additive identity", {a});
        if (r.mul(r.one, a) != a || r.mul(a, r.one) != a) fail("multiplicative identity", {a});
        bool inv = false;
        for (i64 b = 0; b < k && !inv; ++b) inv = r.add(a, b) == r.zero;
        if (!inv) fail("additive inverse", {a});
    }
    for (i64 a = 0; a < k; ++a)
        for (i64 b = 0; b < k; ++b)
            if (r.add(a, b) != r.add(b, a)) fail("additive commutativity", {a, b});
    for (i64 a = 0; a < k; ++a)
        for (i64 b = 0; b < k; ++b)
            for (i64 c = 0; c < k; ++c) {
                if (r.add(r.add(a, b), c) != r.add(a, r.add(b, c)))
                    fail("additive associativity", {a, b, c});
                if (r.mul(r.mul(a, b), c) != r.mul(a, r.mul(b, c)))
                    fail("multiplicative associativity", {a, b, c});
                if (r.mul(a, r.add(b, c)) != r.add(r.mul(a, b), r.mul(a, c)))
                    fail("left distributivity", {a, b, c});
                if (r.mul(r.add(a, b), c) != r.add(r.mul(a, c), r.mul(b, c)))
                    fail("right distributivity", {a, b, c});
            }
}

}  // namespace

Ring table_ring(std::vector<std::string> names, std::vector<i64> add, std::vector<i64> mul, i64 zero,
                i64 one, std::string label) {
    auto r = std::make_shared<RingData>();
    r->size = static_cast<i64>(names.size());
    r->names = std::move(names);
    r->add_table = std::move(add);
    r->mul_table = std::move(mul);
    r->zero = zero;
    r->one = one;
    r->label = std::move(label);
    validate_table(*r);
    return r;
}

Ring zmod_as_table(i64 n) {
    if (n < 2 || n > 64) throw ContractError("zmod_as_table: 2 <= n <= 64");
    std::vector<std::string> names;
    std::vector<i64> add(static_cast<size_t>(n) * n), mul(static_cast<size_t>(n) * n);
    for (i64 i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (i64 i = 0; i < n; ++i)
        for (i64 j = 0; j < n; ++j) {
            add[static_cast<size_t>(i) * n + j] = mod_reduce(i + j, n);
            mul[static_cast<size_t>(i) * n + j] = mul_mod(i, j, n);
        }
    return table_ring(std::move(names), std::move(add), std::move(mul), 0, 1,
                      "zmod(" + std::to_string(n) + ")_table");
}

Ring ut2_f2() {
    // elements [[a,b],[0,c]] over F_2, encoded as 4a + 2b + c
    auto unpack = [](i64 e) { return std::array<i64, 3>{(e >> 2) & 1, (e >> 1) & 1, e & 1}; };
    std::vector<std::string> names(8);
    std::vector<i64> add(64), mul(64);
    for (i64 x = 0; x < 8; ++x) {
        auto [a, b, c] = unpack(x);
        std::ostringstream os;
        os << "[[" << a << "," << b << "],[0," << c << "]]";
        names[x] = os.str();
        for (i64 y = 0; y < 8; ++y) {
            auto [d, e, f] = unpack(y);
            add[x * 8 + y] = ((a ^ d) << 2) | ((b ^ e) << 1) | (c ^ f);
            i64 pa = a & d, pb = (a & e) ^ (b & f), pc = c & f;
            mul[x * 8 + y] = (pa << 2) | (pb << 1) | pc;
        }
    }
    return table_ring(std::move(names), std::move(add), std::move(mul), 0, 5, "ut2_f2");
}

bool same_ring(const Ring& a, const Ring& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->is_zmod() && b->is_zmod()) return a->n == b->n;
    if (a->is_zmod() != b->is_zmod()) return false;
    return a->size == b->size && a->add_table == b->add_table && a->mul_table == b->mul_table &&
           a->zero == b->zero && a->one == b->one;
}

std::vector<i64> ideal_span(const Ring& r, Side side, const std::vector<i64>& gens) {
    std::set<i64> s;
    s.insert(r->zero_elem());
    std::vector<i64> queue(s.begin(), s.end());
    auto push = [&](i64 x) {
        if (s.insert(x).second) queue.push_back(x);
    };
    for (i64 g : gens)
        for (i64 c = 0; c < r->order(); ++c)
            push(side == Side::right ? r->mul(g, c) : r->mul(c, g));
    for (size_t q = 0; q < queue.size(); ++q) {
        i64 x = queue[q];
        std::vector<i64> snapshot(s.begin(), s.end());
        for (i64 y : snapshot) push(r->add(x, y));
    }
    return std::vector<i64>(s.begin(), s.end());
}

std::vector<RightIdeal> one_sided_ideals(const Ring& r, Side side, const Caps& caps) {
    if (r->order() > caps.ring) throw CapError("one_sided_ideals: |R| exceeds the ring cap");
    std::set<std::vector<i64>> seen;
    std::vector<std::vector<i64>> queue;
    auto zero = ideal_span(r, side, {});
    seen.insert(zero);
    queue.push_back(zero);
    for (size_t q = 0; q < queue.size(); ++q) {
        auto cur = queue[q];
        std::set<i64> in(cur.begin(), cur.end());
        for (i64 g = 0; g < r->order(); ++g) {
            if (in.count(g)) continue;
            auto gens = cur;
            gens.push_back(g);
            auto bigger = ideal_span(r, side, gens);
            if (seen.insert(bigger).second) {
                if (static_cast<i64>(seen.size()) > caps.submodules)
                    throw CapError("one_sided_ideals: ideal count exceeds cap");
                queue.push_back(bigger);
            }
        }
    }
    std::vector<RightIdeal> out;
    for (const auto& e : seen) out.push_back({r, e});
    std::sort(out.begin(), out.end(), [](const RightIdeal& a, const RightIdeal& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return a.elems < b.elems;
    });
    return out;
}

std::vector<RightIdeal> right_ideals(const Ring& r, const Caps& caps) {
    return one_sided_ideals(r, Side::right, caps);
}

std::vector<i64> ideal_generators(const Ring& r, Side side, const std::vector<i64>& elems) {
    std::vector<i64> gens;
    auto z = ideal_span(r, side, {});
    std::set<i64> have(z.begin(), z.end());
    for (i64 e : elems) {
        if (have.count(e)) continue;
        gens.push_back(e);
        auto sp = ideal_span(r, side, gens);
        have = std::set<i64>(sp.begin(), sp.end());
        if (have.size() == elems.size()) break;
    }
    return gens;
}

namespace {

// One-sided linear maps ideal -> R enumerated through generator images.
struct IdealHoms {
    std::vector<i64> gens;
    std::map<i64, std::vector<i64>> repr;  // one coefficient tuple per element
    std::vector<std::vector<i64>> maps;    // valid generator-image tuples
};

// Right side: sum of g_i * c_i (coefficients act on the right); left side
// mirrored.
i64 combine(const Ring& r, Side side, const std::vector<i64>& base, const std::vector<i64>& coeff) {
    i64 acc = r->zero_elem();
    for (size_t i = 0; i < base.size(); ++i)
        acc = r->add(acc, side == Side::right ? r->mul(base[i], coeff[i]) : r->mul(coeff[i], base[i]));
    return acc;
}

IdealHoms ideal_homs(const Ring& r, Side side, const std::vector<i64>& elems) {
    IdealHoms out;
    out.gens = ideal_generators(r, side, elems);
    int t = static_cast<int>(out.gens.size());
    if (t == 0) {
        out.maps.push_back({});
        return out;
    }
    double space = 1;
    for (int i = 0; i < t; ++i) space *= static_cast<double>(r->order());
    if (space > static_cast<double>(1 << 20)) throw CapError("ideal_homs: coefficient space exceeds cap");
    std::vector<std::vector<i64>> kernel_tuples;
    std::vector<i64> coeff(t, 0);
    while (true) {
        i64 x = combine(r, side, out.gens, coeff);
        if (!out.repr.count(x)) out.repr[x] = coeff;
        if (x == r->zero_elem()) kernel_tuples.push_back(coeff);
        int k = t - 1;
        while (k >= 0 && ++coeff[k] == r->order()) coeff[k--] = 0;
        if (k < 0) break;
    }
    std::vector<i64> img(t, 0);
    while (true) {
        bool ok = true;
        for (const auto& kt : kernel_tuples)
            if (combine(r, side, img, kt) != r->zero_elem()) {
                ok = false;
                break;
            }
        if (ok) out.maps.push_back(img);
        int k = t - 1;
        while (k >= 0 && ++img[k] == r->order()) img[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

BoolWitness self_injective_impl(const Ring& r, Side side, const Caps& caps) {
    BoolWitness out;
    out.value = true;
    for (const auto& ideal : one_sided_ideals(r, side, caps)) {
        auto homs = ideal_homs(r, side, ideal.elems);
        for (const auto& img : homs.maps) {
            bool extends = false;
            for (i64 c = 0; c < r->order() && !extends; ++c) {
                bool all = true;
                for (size_t i = 0; i < homs.gens.size() && all; ++i) {
                    i64 got = side == Side::right ? r->mul(c, homs.gens[i]) : r->mul(homs.gens[i], c);
                    all = img[i] == got;
                }
                extends = all;
            }
            if (!extends) {
                out.value = false;
                json gens(json::array()), imgs(json::array()), inames(json::array());
                for (i64 g : homs.gens) gens.push_back(r->elem_name(g));
                for (i64 v : img) imgs.push_back(r->elem_name(v));
                for (i64 e : ideal.elems) inames.push_back(r->elem_name(e));
                out.witness = json{{"ideal", ideal.elems},
                                   {"ideal_names", inames},
                                   {"map_generators", gens},
                                   {"map_images", imgs},
                                   {"side", side_name(side)}};
                return out;
            }
        }
    }
    return out;
}

}  // namespace

BoolWitness is_self_injective(const Ring& r, const Caps& caps) {
    if (r->cache.self_injective) return {*r->cache.self_injective, r->cache.baer_witness};
    auto out = self_injective_impl(r, Side::right, caps);
    r->cache.self_injective = out.value;
    r->cache.baer_witness = out.witness;
    return out;
}

BoolWitness is_self_injective_left(const Ring& r, const Caps& caps) {
    if (r->cache.self_injective_left) return {*r->cache.self_injective_left, json()};
    auto out = self_injective_impl(r, Side::left, caps);
    r->cache.self_injective_left = out.value;
    return out;
}

bool is_cogenerator_ring(const Ring& r, const Caps& caps) {
    if (r->cache.cogenerator) return *r->cache.cogenerator;
    auto ideals = one_sided_ideals(r, Side::right, caps);
    bool ok = true;
    for (const auto& ideal : ideals) {
        if (static_cast<i64>(ideal.elems.size()) == r->order()) continue;
        bool maximal = true;
        for (const auto& other : ideals) {
            if (static_cast<i64>(other.elems.size()) == r->order()) continue;
            if (other.elems.size() <= ideal.elems.size()) continue;
            if (std::includes(other.elems.begin(), other.elems.end(), ideal.elems.begin(),
                              ideal.elems.end())) {
                maximal = false;
                break;
            }
        }
        if (!maximal) continue;
        // R/I embeds into R_R iff some c != 0 kills I and annihilates nothing
        // outside I
        std::set<i64> in(ideal.elems.begin(), ideal.elems.end());
        bool embeds = false;
        for (i64 c = 0; c < r->order() && !embeds; ++c) {
            if (c == r->zero_elem()) continue;
            bool kills_ideal = true;
            for (i64 a : ideal.elems)
                if (r->mul(c, a) != r->zero_elem()) {
                    kills_ideal = false;
                    break;
                }
            if (!kills_ideal) continue;
            bool injective = true;
            for (i64 x = 0; x < r->order() && injective; ++x)
                if (!in.count(x) && r->mul(c, x) == r->zero_elem()) injective = false;
            embeds = injective;
        }
        if (!embeds) {
            ok = false;
            break;
        }
    }
    r->cache.cogenerator = ok;
    return ok;
}

bool is_qf(const Ring& r, const Caps& caps) {
    // finite rings are Noetherian, so QF = cogenerator; cross-checked against
    // the composite reading
    bool cog = is_cogenerator_ring(r, caps);
    bool composite = is_self_injective(r, caps).value && cog;
    if (cog != composite)
        throw InternalCheckError(
            "is_qf: cogenerator verdict disagrees with self-injective ∧ cogenerator on " + r->label);
    return cog;
}

bool is_semisimple(const Ring& r, const Caps& caps) {
    if (r->cache.semisimple) return *r->cache.semisimple;
    auto ideals = one_sided_ideals(r, Side::right, caps);
    bool ok = true;
    for (const auto& ideal : ideals) {
        bool has_complement = false;
        for (const auto& other : ideals) {
            if (static_cast<i64>(ideal.elems.size()) * static_cast<i64>(other.elems.size()) !=
                r->order())
                continue;
            std::vector<i64> inter;
            std::set_intersection(ideal.elems.begin(), ideal.elems.end(), other.elems.begin(),
                                  other.elems.end(), std::back_inserter(inter));
            if (inter.size() == 1) {
                has_complement = true;
                break;
            }
        }
        if (!has_complement) {
            ok = false;
            break;
        }
    }
    r->cache.semisimple = ok;
    return ok;
}

bool is_hereditary(const Ring& r, const Caps& caps) {
    if (r->cache.hereditary) return *r->cache.hereditary;
    bool ok = true;
    for (const auto& ideal : one_sided_ideals(r, Side::right, caps)) {
        auto homs = ideal_homs(r, Side::right, ideal.elems);
        int t = static_cast<int>(homs.gens.size());
        if (t == 0) continue;  // zero ideal
        double space = 1;
        for (int i = 0; i < t; ++i) space *= static_cast<double>(homs.maps.size());
        if (space > static_cast<double>(1 << 22))
            throw CapError("is_hereditary: dual-basis search exceeds cap");
        // f_1..f_t from the hom list with g_j = sum_i g_i * f_i(g_j); both
        // sides are right-linear, so agreement on generators decides
        std::vector<size_t> pick(t, 0);
        bool found = false;
        while (true) {
            bool all = true;
            for (int j = 0; j < t && all; ++j) {
                i64 acc = r->zero_elem();
                for (int i = 0; i < t; ++i)
                    acc = r->add(acc, r->mul(homs.gens[i], homs.maps[pick[i]][j]));
                all = acc == homs.gens[j];
            }
            if (all) {
                found = true;
                break;
            }
            int k = t - 1;
            while (k >= 0 && ++pick[k] == homs.maps.size()) pick[k--] = 0;
            if (k < 0) break;
        }
        if (!found) {
            ok = false;
            break;
        }
    }
    r->cache.hereditary = ok;
    return ok;
}

}  // namespace pairlab
