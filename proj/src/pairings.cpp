#include "pairlab/pairings.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pairlab {

json Pairing::describe() const {
    json b(json::array());
    int k = v_mod.gens(), l = w_mod.gens();
    for (int i = 0; i < k; ++i) {
        json row(json::array());
        for (int j = 0; j < l; ++j) row.push_back(is_zmod() ? beta.at(i, j) : beta_tab[i][j]);
        b.push_back(row);
    }
    return json{{"V", v_mod.describe()}, {"W", w_mod.describe()}, {"beta", b}};
}

i64 pair_eval(const Pairing& p, const Elem& v, const Elem& w) {
    if (p.is_zmod()) {
        i64 n = p.v_mod.ring->n;
        i64 acc = 0;
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            for (size_t j = 0; j < w.size(); ++j)
                acc = mod_reduce(
                    acc + v[i] * p.beta.at(static_cast<int>(i), static_cast<int>(j)) % n * w[j], n);
        }
        return acc;
    }
    const Ring& r = p.v_mod.ring;
    i64 acc = r->zero_elem();
    for (size_t j = 0; j < w.size(); ++j)
        for (size_t i = 0; i < v.size(); ++i)
            acc = r->add(acc, r->mul(w[j], r->mul(p.beta_tab[i][j], v[i])));
    return acc;
}

Pairing make_pairing(const Module& v, const Module& w, const ZnMatrix& beta) {
    if (!v.is_zmod() || !same_ring(v.ring, w.ring))
        throw ContractError("make_pairing: Z/n backend, same ring required");
    if (v.side != Side::right || w.side != Side::left)
        throw ContractError("make_pairing: V must be a right module and W a left module");
    if (beta.rows() != v.gens() || beta.cols() != w.gens())
        throw ContractError("make_pairing: beta must be gens(V) x gens(W)");
    i64 n = v.ring->n;
    for (int i = 0; i < beta.rows(); ++i)
        for (int j = 0; j < beta.cols(); ++j) {
            if (mul_mod(v.chain[i], beta.at(i, j), n) != 0)
                throw ValidationError(
                    "make_pairing: balance law fails on the V side",
                    json{{"v_generator", i}, {"ring_element", v.chain[i]}, {"w_generator", j}}.dump());
            if (mul_mod(w.chain[j], beta.at(i, j), n) != 0)
                throw ValidationError(
                    "make_pairing: balance law fails on the W side",
                    json{{"v_generator", i}, {"ring_element", w.chain[j]}, {"w_generator", j}}.dump());
        }
    Pairing p;
    p.v_mod = v;
    p.w_mod = w;
    p.beta = beta;
    return p;
}

Pairing make_table_pairing(const Module& v, const Module& w,
                           const std::vector<std::vector<i64>>& beta, const Caps& caps) {
    if (v.is_zmod() || !same_ring(v.ring, w.ring))
        throw ContractError("make_table_pairing: table backend, same ring required");
    if (v.side != Side::right || w.side != Side::left)
        throw ContractError("make_table_pairing: V must be right, W left");
    if (static_cast<int>(beta.size()) != v.gens())
        throw ContractError("make_table_pairing: beta row count mismatch");
    for (const auto& row : beta)
        if (static_cast<int>(row.size()) != w.gens())
            throw ContractError("make_table_pairing: beta column count mismatch");
    Pairing p;
    p.v_mod = v;
    p.w_mod = w;
    p.beta_tab = beta;
    const Ring& r = v.ring;
    i64 work = v.cardinality() * w.cardinality() * r->order();
    if (work > caps.elements * 64) throw CapError("make_table_pairing: validation exceeds cap");
    auto vs = elements(v, caps);
    auto ws = elements(w, caps);
    // well-definedness on cosets and both balance laws, exhaustively
    for (const auto& ve : vs)
        for (const auto& we : ws)
            for (i64 c = 0; c < r->order(); ++c) {
                if (pair_eval(p, elem_scale(v, c, ve), we) != r->mul(pair_eval(p, ve, we), c))
                    throw ValidationError("make_table_pairing: balance law fails on the V side",
                                          json{{"v", ve}, {"r", c}, {"w", we}}.dump());
                if (pair_eval(p, ve, elem_scale(w, c, we)) != r->mul(c, pair_eval(p, ve, we)))
                    throw ValidationError("make_table_pairing: balance law fails on the W side",
                                          json{{"v", ve}, {"r", c}, {"w", we}}.dump());
            }
    for (const auto& v1 : vs)
        for (const auto& v2 : vs)
            for (const auto& we : ws)
                if (pair_eval(p, elem_add(v, v1, v2), we) !=
                    r->add(pair_eval(p, v1, we), pair_eval(p, v2, we)))
                    throw ValidationError("make_table_pairing: additivity fails in V",
                                          json{{"v1", v1}, {"v2", v2}, {"w", we}}.dump());
    return p;
}

Pairing mult_pairing(const Ring& r, const Caps& caps) {
    Module v = free_module(r, Side::right, 1, caps);
    Module w = free_module(r, Side::left, 1, caps);
    if (r->is_zmod()) {
        ZnMatrix b(r->n, 1, 1);
        b.set(0, 0, 1);
        return make_pairing(v, w, b);
    }
    return make_table_pairing(v, w, {{r->one_elem()}}, caps);
}

DualizedMap kappa_map(const Pairing& p) {
    if (!p.is_zmod()) throw ContractError("kappa_map: Z/n backend only");
    i64 n = p.v_mod.ring->n;
    HomModule dual = dual_module(p.w_mod);
    int k = p.v_mod.gens(), l = p.w_mod.gens();
    ZnMatrix raw(n, k, l);
    for (int a = 0; a < k; ++a)
        for (int j = 0; j < l; ++j) {
            i64 scale = n / p.w_mod.chain[j];
            i64 b = p.beta.at(a, j);
            if (b % scale != 0) throw InternalCheckError("kappa_map: balance law broken");
            raw.set(a, j, b / scale);
        }
    LinearMap map = make_map(p.v_mod, dual.hom, mat_mul(raw, dual.to_canonical));
    return {dual, map};
}

DualizedMap chi_map(const Pairing& p) {
    if (!p.is_zmod()) throw ContractError("chi_map: Z/n backend only");
    i64 n = p.v_mod.ring->n;
    HomModule dual = dual_module(p.v_mod);
    int k = p.v_mod.gens(), l = p.w_mod.gens();
    ZnMatrix raw(n, l, k);
    for (int j = 0; j < l; ++j)
        for (int i = 0; i < k; ++i) {
            i64 scale = n / p.v_mod.chain[i];
            i64 b = p.beta.at(i, j);
            if (b % scale != 0) throw InternalCheckError("chi_map: balance law broken");
            raw.set(j, i, b / scale);
        }
    LinearMap map = make_map(p.w_mod, dual.hom, mat_mul(raw, dual.to_canonical));
    return {dual, map};
}

CanonicalPairing canonical_dual_pairing(const Module& w, const Caps&) {
    if (!w.is_zmod()) throw ContractError("canonical_dual_pairing: Z/n backend only");
    if (w.side != Side::left) throw ContractError("canonical_dual_pairing: W must be a left module");
    HomModule dual = dual_module(w);  // a right module
    int k = dual.hom.gens(), l = w.gens();
    ZnMatrix b(w.ring->n, k, l);
    for (int a = 0; a < k; ++a) {
        Elem f = zero_elem(dual.hom);
        f[a] = 1;
        for (int j = 0; j < l; ++j) {
            Elem x(static_cast<size_t>(l), 0);
            x[j] = 1;
            b.set(a, j, dual_eval(dual, f, x));
        }
    }
    return {dual, make_pairing(dual.hom, w, b)};
}

CanonicalPairing canonical_bidual_pairing(const Module& v, const Caps&) {
    if (!v.is_zmod()) throw ContractError("canonical_bidual_pairing: Z/n backend only");
    if (v.side != Side::right)
        throw ContractError("canonical_bidual_pairing: V must be a right module");
    HomModule dual = dual_module(v);  // a left module
    int k = v.gens(), l = dual.hom.gens();
    ZnMatrix b(v.ring->n, k, l);
    for (int j = 0; j < l; ++j) {
        Elem f = zero_elem(dual.hom);
        f[j] = 1;
        for (int i = 0; i < k; ++i) {
            Elem x(static_cast<size_t>(k), 0);
            x[i] = 1;
            b.set(i, j, dual_eval(dual, f, x));
        }
    }
    return {dual, make_pairing(v, dual.hom, b)};
}

// ---- table dual -------------------------------------------------------------------

TableDual table_dual(const Module& w, const Caps& caps) {
    if (!w.table) throw ContractError("table_dual: table backend only");
    const Ring& r = w.ring;
    int l = w.table->rank;
    std::vector<Elem> valid;
    double space = 1;
    for (int i = 0; i < l; ++i) space *= static_cast<double>(r->order());
    if (space > static_cast<double>(caps.elements))
        throw CapError("table_dual: tuple space exceeds cap");
    if (l == 0) {
        valid.assign(1, Elem{});
    } else {
        Elem c(static_cast<size_t>(l), 0);
        while (true) {
            bool ok = true;
            for (const auto& rho : w.table->rel_span) {
                i64 acc = r->zero_elem();
                for (int j = 0; j < l; ++j)
                    acc = r->add(acc, w.side == Side::left ? r->mul(rho[j], c[j])
                                                           : r->mul(c[j], rho[j]));
                if (acc != r->zero_elem()) {
                    ok = false;
                    break;
                }
            }
            if (ok) valid.push_back(c);
            int k = l - 1;
            while (k >= 0 && ++c[k] == r->order()) c[k--] = 0;
            if (k < 0) break;
        }
    }
    Side dual_side = opposite(w.side);
    auto combine = [&](const std::vector<Elem>& gens, const Elem& coeff) {
        Elem acc(static_cast<size_t>(l), r->zero_elem());
        for (size_t i = 0; i < gens.size(); ++i)
            for (int j = 0; j < l; ++j)
                acc[j] = r->add(acc[j], dual_side == Side::right ? r->mul(gens[i][j], coeff[i])
                                                                 : r->mul(coeff[i], gens[i][j]));
        return acc;
    };
    std::set<Elem> have;
    have.insert(Elem(static_cast<size_t>(l), r->zero_elem()));
    std::vector<Elem> gens;
    for (const auto& f : valid) {
        if (have.count(f)) continue;
        gens.push_back(f);
        have.clear();
        Elem coeff(gens.size(), 0);
        while (true) {
            have.insert(combine(gens, coeff));
            size_t k = gens.size();
            while (k > 0 && ++coeff[k - 1] == r->order()) coeff[--k] = 0;
            if (k == 0) break;
        }
        if (have.size() == valid.size()) break;
    }
    int t = static_cast<int>(gens.size());
    std::vector<std::vector<i64>> rel;
    if (t > 0) {
        Elem coeff(static_cast<size_t>(t), 0);
        while (true) {
            if (combine(gens, coeff) == Elem(static_cast<size_t>(l), r->zero_elem()))
                rel.push_back(coeff);
            int k = t - 1;
            while (k >= 0 && ++coeff[k] == r->order()) coeff[k--] = 0;
            if (k < 0) break;
        }
    }
    TableDual out;
    out.source = w;
    out.dual_mod = fp_module_rows(r, dual_side, t, rel, caps);
    out.functional_of.resize(out.dual_mod.table->reps.size());
    for (size_t i = 0; i < out.dual_mod.table->reps.size(); ++i)
        out.functional_of[i] = combine(gens, out.dual_mod.table->reps[i]);
    return out;
}

// ---- orthogonals --------------------------------------------------------------------

namespace {

Module free_of(const Ring& r, Side side, int rank) { return free_module(r, side, rank, Caps{}); }

Submodule table_filter(const Module& m, const std::function<bool(const Elem&)>& keep) {
    Submodule s;
    s.ambient = m;
    for (const auto& x : m.table->reps)
        if (keep(x)) s.elems.push_back(x);
    return s;
}

}  // namespace

Submodule perp_of_w_subset(const Pairing& p, const std::vector<Elem>& f_subset) {
    if (!p.is_zmod()) {
        return table_filter(p.v_mod, [&](const Elem& v) {
            for (const auto& f : f_subset)
                if (pair_eval(p, v, f) != p.v_mod.ring->zero_elem()) return false;
            return true;
        });
    }
    if (f_subset.empty()) return full_submodule(p.v_mod);
    i64 n = p.v_mod.ring->n;
    int k = p.v_mod.gens();
    int t = static_cast<int>(f_subset.size());
    ZnMatrix m(n, k, t);
    for (int i = 0; i < k; ++i) {
        Elem unit(static_cast<size_t>(k), 0);
        unit[i] = 1;
        for (int s = 0; s < t; ++s) m.set(i, s, pair_eval(p, unit, f_subset[s]));
    }
    return map_kernel(make_map(p.v_mod, free_of(p.v_mod.ring, Side::right, t), m));
}

Submodule perp_of_w_sub(const Pairing& p, const Submodule& f) {
    return perp_of_w_subset(p, sub_generators(f));
}

Submodule perp_of_v_subset(const Pairing& p, const std::vector<Elem>& x_subset) {
    if (!p.is_zmod()) {
        return table_filter(p.w_mod, [&](const Elem& w) {
            for (const auto& x : x_subset)
                if (pair_eval(p, x, w) != p.v_mod.ring->zero_elem()) return false;
            return true;
        });
    }
    if (x_subset.empty()) return full_submodule(p.w_mod);
    i64 n = p.v_mod.ring->n;
    int l = p.w_mod.gens();
    int t = static_cast<int>(x_subset.size());
    ZnMatrix m(n, l, t);
    for (int j = 0; j < l; ++j) {
        Elem unit(static_cast<size_t>(l), 0);
        unit[j] = 1;
        for (int s = 0; s < t; ++s) m.set(j, s, pair_eval(p, x_subset[s], unit));
    }
    return map_kernel(make_map(p.w_mod, free_of(p.v_mod.ring, Side::left, t), m));
}

Submodule perp_of_v_sub(const Pairing& p, const Submodule& x) {
    return perp_of_v_subset(p, sub_generators(x));
}

Submodule radical_v(const Pairing& p) {
    if (!p.is_zmod()) return perp_of_w_subset(p, elements(p.w_mod, Caps{}));
    return perp_of_w_sub(p, full_submodule(p.w_mod));
}

Submodule radical_w(const Pairing& p) {
    if (!p.is_zmod()) return perp_of_v_subset(p, elements(p.v_mod, Caps{}));
    return perp_of_v_sub(p, full_submodule(p.v_mod));
}

// ---- An / Ke ------------------------------------------------------------------------

Submodule an_submodule(const HomModule& dual, const Submodule& l) {
    if (!same_module(dual.source, l.ambient)) throw ContractError("an_submodule: ambient mismatch");
    auto gens = sub_generators(l);
    if (gens.empty()) return full_submodule(dual.hom);
    i64 n = dual.source.ring->n;
    int k = dual.hom.gens();
    int t = static_cast<int>(gens.size());
    ZnMatrix m(n, k, t);
    for (int s = 0; s < k; ++s) {
        Elem f = zero_elem(dual.hom);
        f[s] = 1;
        for (int g = 0; g < t; ++g) m.set(s, g, dual_eval(dual, f, gens[g]));
    }
    return map_kernel(make_map(dual.hom, free_of(dual.source.ring, dual.hom.side, t), m));
}

Submodule ke_submodule(const HomModule& dual, const Submodule& x) {
    if (!same_module(dual.hom, x.ambient)) throw ContractError("ke_submodule: ambient mismatch");
    auto gens = sub_generators(x);
    if (gens.empty()) return full_submodule(dual.source);
    i64 n = dual.source.ring->n;
    int k = dual.source.gens();
    int t = static_cast<int>(gens.size());
    ZnMatrix m(n, k, t);
    for (int i = 0; i < k; ++i) {
        Elem unit(static_cast<size_t>(k), 0);
        unit[i] = 1;
        for (int s = 0; s < t; ++s) m.set(i, s, dual_eval(dual, gens[s], unit));
    }
    return map_kernel(make_map(dual.source, free_of(dual.source.ring, dual.source.side, t), m));
}

// ---- topology ---------------------------------------------------------------------------

Submodule closure(const Pairing& p, const Submodule& x) {
    if (!same_module(p.v_mod, x.ambient)) throw ContractError("closure: X must live in V");
    // definitional route: intersect X + F^perp along a generating chain of W
    std::vector<Elem> chain;
    Submodule acc = full_submodule(p.v_mod);
    std::vector<Elem> w_gens;
    if (p.is_zmod()) {
        for (int j = 0; j < p.w_mod.gens(); ++j) {
            Elem unit(static_cast<size_t>(p.w_mod.gens()), 0);
            unit[j] = 1;
            w_gens.push_back(unit);
        }
    } else {
        w_gens = elements(p.w_mod, Caps{});
    }
    for (const auto& wg : w_gens) {
        chain.push_back(wg);
        acc = sub_intersect(acc, sub_sum(x, perp_of_w_subset(p, chain)));
    }
    Submodule collapsed = sub_sum(x, radical_v(p));
    if (!sub_equal(acc, collapsed))
        throw InternalCheckError("closure: definitional intersection differs from X + W^perp");
    return collapsed;
}

Submodule biperp(const Pairing& p, const Submodule& x) {
    return perp_of_w_sub(p, perp_of_v_sub(p, x));
}

bool is_closed(const Pairing& p, const Submodule& x) { return sub_equal(closure(p, x), x); }

bool is_open(const Pairing& p, const Submodule& x, const Caps& caps) {
    bool reduced = sub_subset(radical_v(p), x);
    try {
        // bounded search over finite subsets F (equivalently submodules of W)
        bool found = false;
        for (const auto& k : all_submodules(p.w_mod, caps))
            if (sub_subset(perp_of_w_sub(p, k), x)) {
                found = true;
                break;
            }
        if (found != reduced)
            throw InternalCheckError("is_open: bounded search disagrees with the reduced test");
    } catch (const CapError&) {
        // lattice too large; the reduced test decides alone
    }
    return reduced;
}

bool is_hausdorff(const Pairing& p) { return sub_cardinality(radical_v(p)) == 1; }

bool is_dense_in(const Pairing& p, const Submodule& x, const Submodule& y, const Caps& caps) {
    if (!sub_subset(x, y)) throw ContractError("is_dense_in: X must be contained in Y");
    bool closure_route = sub_subset(y, closure(p, x));
    bool perp_route = sub_equal(perp_of_v_sub(p, x), perp_of_v_sub(p, y));
    bool inj_cog = p.is_zmod() || (is_self_injective(p.v_mod.ring, caps).value &&
                                   is_cogenerator_ring(p.v_mod.ring, caps));
    if (inj_cog && closure_route != perp_route)
        throw InternalCheckError(
            "is_dense_in: closure and perp routes disagree over an injective cogenerator");
    return closure_route;
}

namespace {

Elem table_kappa_tuple(const Pairing& p, const Elem& v) {
    int l = p.w_mod.table->rank;
    Elem tuple(static_cast<size_t>(l));
    for (int j = 0; j < l; ++j) {
        Elem unit(static_cast<size_t>(l), p.w_mod.ring->zero_elem());
        unit[j] = p.w_mod.ring->one_elem();
        tuple[j] = pair_eval(p, v, canon_elem(p.w_mod, unit));
    }
    return tuple;
}

}  // namespace

bool is_dense_pairing(const Pairing& p, const Caps& caps) {
    if (p.is_zmod()) return map_is_surjective(kappa_map(p).map);
    TableDual dual = table_dual(p.w_mod, caps);
    std::set<Elem> image;
    for (const auto& v : elements(p.v_mod, caps)) image.insert(table_kappa_tuple(p, v));
    std::set<Elem> all(dual.functional_of.begin(), dual.functional_of.end());
    return image == all;
}

Completion completion(const Pairing& p, const Caps& caps) {
    Completion out;
    if (p.is_zmod()) {
        DualizedMap kappa = kappa_map(p);
        Submodule rad = radical_v(p);
        Quotient q = quotient_module(p.v_mod, rad, caps);
        LinearMap induced = make_map(q.module, kappa.dual.hom, mat_mul(q.section, kappa.map.mat));
        out.completed = q.module;
        out.injective = map_is_injective(induced);
        out.surjective = map_is_surjective(induced);
        out.isomorphism = out.injective && out.surjective;
        out.dual_chain = kappa.dual.hom.chain;
        if (!out.injective)
            throw InternalCheckError("completion: V/W^perp must always embed into *W");
        return out;
    }
    Submodule rad = radical_v(p);
    std::vector<std::vector<i64>> rel;
    for (const auto& s : p.v_mod.table->rel_span) rel.push_back(s);
    for (const auto& e : rad.elems) rel.push_back(e);
    out.completed = fp_module_rows(p.v_mod.ring, Side::right, p.v_mod.table->rank, rel, caps);
    TableDual dual = table_dual(p.w_mod, caps);
    std::set<Elem> image;
    for (const auto& v : elements(p.v_mod, caps)) image.insert(table_kappa_tuple(p, v));
    out.injective = static_cast<i64>(image.size()) == out.completed.cardinality();
    out.surjective = image.size() == std::set<Elem>(dual.functional_of.begin(),
                                                    dual.functional_of.end()).size();
    out.isomorphism = out.injective && out.surjective;
    return out;
}

// ---- morphisms ------------------------------------------------------------------------------

PairingMorphism make_morphism(const Pairing& source, const Pairing& target, const LinearMap& xi,
                              const LinearMap& theta, const Caps& caps) {
    if (!same_module(xi.src, target.v_mod) || !same_module(xi.dst, source.v_mod))
        throw ContractError("make_morphism: xi must map target V into source V");
    if (!same_module(theta.src, source.w_mod) || !same_module(theta.dst, target.w_mod))
        throw ContractError("make_morphism: theta must map source W into target W");
    i64 pairs = target.v_mod.cardinality() * source.w_mod.cardinality();
    if (pairs <= caps.elements) {
        for (const auto& v : elements(target.v_mod, caps))
            for (const auto& wp : elements(source.w_mod, caps))
                if (pair_eval(source, xi.apply(v), wp) != pair_eval(target, v, theta.apply(wp)))
                    throw ValidationError("make_morphism: compatibility identity fails",
                                          json{{"v", v}, {"w_prime", wp}}.dump());
    } else {
        for (int i = 0; i < target.v_mod.gens(); ++i)
            for (int j = 0; j < source.w_mod.gens(); ++j) {
                Elem v(static_cast<size_t>(target.v_mod.gens()), 0);
                v[i] = 1;
                Elem wp(static_cast<size_t>(source.w_mod.gens()), 0);
                wp[j] = 1;
                if (pair_eval(source, xi.apply(v), wp) != pair_eval(target, v, theta.apply(wp)))
                    throw ValidationError("make_morphism: compatibility identity fails",
                                          json{{"v", v}, {"w_prime", wp}}.dump());
            }
    }
    return PairingMorphism{source, target, xi, theta};
}

Pairing restrict_w(const Pairing& p, const Submodule& w_prime, SubAsModule* w_abs_out) {
    SubAsModule abs = sub_as_module(w_prime);
    int k = p.v_mod.gens(), t = abs.module.gens();
    ZnMatrix b(p.v_mod.ring->n, k, t);
    for (int i = 0; i < k; ++i) {
        Elem unit(static_cast<size_t>(k), 0);
        unit[i] = 1;
        for (int s = 0; s < t; ++s) {
            Elem g = zero_elem(abs.module);
            g[s] = 1;
            b.set(i, s, pair_eval(p, unit, abs.incl.apply(g)));
        }
    }
    if (w_abs_out) *w_abs_out = abs;
    return make_pairing(p.v_mod, abs.module, b);
}

Pairing restrict_v(const Pairing& p, const Submodule& v_prime, SubAsModule* v_abs_out) {
    SubAsModule abs = sub_as_module(v_prime);
    int t = abs.module.gens(), l = p.w_mod.gens();
    ZnMatrix b(p.v_mod.ring->n, t, l);
    for (int s = 0; s < t; ++s) {
        Elem g = zero_elem(abs.module);
        g[s] = 1;
        for (int j = 0; j < l; ++j) {
            Elem unit(static_cast<size_t>(l), 0);
            unit[j] = 1;
            b.set(s, j, pair_eval(p, abs.incl.apply(g), unit));
        }
    }
    if (v_abs_out) *v_abs_out = abs;
    return make_pairing(abs.module, p.w_mod, b);
}

Subpairing subpairing(const Pairing& p, const Submodule& v_prime, const Submodule& w_prime,
                      const Caps& caps) {
    if (!same_module(v_prime.ambient, p.v_mod) || !same_module(w_prime.ambient, p.w_mod))
        throw ContractError("subpairing: submodules must live in V and W");
    i64 pairs = sub_cardinality(v_prime) * sub_cardinality(w_prime);
    auto check_zero = [&](const Elem& v, const Elem& w) {
        if (pair_eval(p, v, w) != 0)
            throw ContractError("subpairing: <V', W'> != 0, witness v=" + json(v).dump() +
                                " w=" + json(w).dump());
    };
    if (pairs <= caps.elements) {
        for (const auto& v : sub_elements(v_prime, caps))
            for (const auto& w : sub_elements(w_prime, caps)) check_zero(v, w);
    } else {
        for (const auto& v : sub_generators(v_prime))
            for (const auto& w : sub_generators(w_prime)) check_zero(v, w);
    }
    Quotient q = quotient_module(p.v_mod, v_prime, caps);
    SubAsModule wabs = sub_as_module(w_prime);
    int kq = q.module.gens(), t = wabs.module.gens();
    ZnMatrix b(p.v_mod.ring->n, kq, t);
    for (int a = 0; a < kq; ++a) {
        Elem lift = q.section.row(a);
        for (int s = 0; s < t; ++s) {
            Elem g = zero_elem(wabs.module);
            g[s] = 1;
            b.set(a, s, pair_eval(p, lift, wabs.incl.apply(g)));
        }
    }
    Subpairing out;
    out.q = make_pairing(q.module, wabs.module, b);
    out.v_section = q.section;
    out.morphism = make_morphism(out.q, p, q.projection, wabs.incl, caps);
    out.w_prime_pure = is_pure_submodule(w_prime, caps).pure;
    return out;
}

LinearMap dual_map(const HomModule& dual_w, const HomModule& dual_w_prime, const LinearMap& theta) {
    if (!same_module(theta.src, dual_w_prime.source) || !same_module(theta.dst, dual_w.source))
        throw ContractError("dual_map: theta must map W' into W");
    int s = dual_w.hom.gens();
    ZnMatrix mat(dual_w.source.ring->n, s, dual_w_prime.hom.gens());
    for (int i = 0; i < s; ++i) {
        Elem h = zero_elem(dual_w.hom);
        h[i] = 1;
        Elem img = dual_w_prime.from_map(compose(theta, dual_w.as_map(h)));
        for (int j = 0; j < dual_w_prime.hom.gens(); ++j) mat.set(i, j, img[j]);
    }
    return make_map(dual_w.hom, dual_w_prime.hom, mat);
}

}  // namespace pairlab
