#include "pairlab/alphacond.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace pairlab {

std::string pretty_tensor_elem(const TensorModule& t, const Elem& e);  // modules.cpp

// ---- alpha map -------------------------------------------------------------------

AlphaMap alpha_map(const Pairing& p, const Module& m, const Caps& caps) {
    if (!p.is_zmod()) throw ContractError("alpha_map: Z/n backend only (table goes through table_alpha)");
    if (m.side != Side::right) throw ContractError("alpha_map: test module must be a right module");
    i64 n = p.v_mod.ring->n;
    AlphaMap out;
    out.pairing = p;
    out.test_module = m;
    out.domain = tensor_module(m, p.w_mod, caps);
    out.codomain = hom_module(p.v_mod, m);
    int km = m.gens(), lw = p.w_mod.gens(), kv = p.v_mod.gens();
    // raw tensor generator (i, j) = m_i (x) w_j maps to [v -> m_i <v, w_j>];
    // its hom coordinates sit at (a, b) = (V generator, M generator), b = i
    ZnMatrix raw(n, km * lw, kv * km);
    for (int i = 0; i < km; ++i)
        for (int j = 0; j < lw; ++j)
            for (int a = 0; a < kv; ++a) {
                i64 g = out.codomain.raw_orders[static_cast<size_t>(a) * km + i];
                if (g == 0) continue;
                i64 phi = mod_reduce(p.beta.at(a, j), m.chain[i]);
                i64 scale = m.chain[i] / g;
                if (phi % scale != 0) throw InternalCheckError("alpha_map: balance law broken");
                raw.set(i * lw + j, a * km + i, phi / scale);
            }
    out.map = make_map(out.domain.tensor, out.codomain.hom,
                       mat_mul(out.domain.from_canonical, mat_mul(raw, out.codomain.to_canonical)));
    // defining formula verified exhaustively when enumerable, else on generators
    i64 triples = m.cardinality() * p.w_mod.cardinality() * p.v_mod.cardinality();
    if (triples <= caps.elements) {
        for (const auto& me : elements(m, caps))
            for (const auto& we : elements(p.w_mod, caps)) {
                LinearMap f = out.codomain.as_map(out.map.apply(out.domain.pure(me, we)));
                for (const auto& ve : elements(p.v_mod, caps))
                    if (f.apply(ve) != elem_scale(m, pair_eval(p, ve, we), me))
                        throw InternalCheckError("alpha_map: defining formula fails");
            }
    } else {
        for (int i = 0; i < km; ++i)
            for (int j = 0; j < lw; ++j) {
                Elem me = zero_elem(m), we(static_cast<size_t>(lw), 0);
                me[i] = 1;
                we[j] = 1;
                LinearMap f = out.codomain.as_map(out.map.apply(out.domain.pure(me, we)));
                for (int a = 0; a < kv; ++a) {
                    Elem ve(static_cast<size_t>(kv), 0);
                    ve[a] = 1;
                    if (f.apply(ve) != elem_scale(m, pair_eval(p, ve, we), me))
                        throw InternalCheckError("alpha_map: defining formula fails");
                }
            }
    }
    return out;
}

AlphaInjectivity alpha_injective_for(const Pairing& p, const Module& m, const Caps& caps) {
    AlphaInjectivity out;
    if (m.cardinality() == 1) {
        out.injective = true;  // zero test module, vacuous
        return out;
    }
    AlphaMap am = alpha_map(p, m, caps);
    Submodule ker = map_kernel(am.map);
    if (sub_cardinality(ker) == 1) {
        out.injective = true;
        return out;
    }
    out.injective = false;
    out.witness = sub_generators(ker)[0];
    out.witness_pretty = pretty_tensor_elem(am.domain, out.witness);
    return out;
}

std::vector<std::vector<i64>> divisor_chains(i64 n, i64 max_card) {
    std::vector<std::vector<i64>> out;
    std::vector<i64> cur;
    std::function<void(i64, i64)> rec = [&](i64 minf, i64 prod) {
        out.push_back(cur);
        for (i64 d : divisors(n)) {
            if (d < 2 || d < minf || d % minf != 0) continue;
            if (prod * d > max_card) continue;
            cur.push_back(d);
            rec(d, prod * d);
            cur.pop_back();
        }
    };
    rec(1, 1);
    std::sort(out.begin(), out.end());
    return out;
}

AlphaVerdict satisfies_alpha(const Pairing& p, const Caps& caps) {
    AlphaVerdict out;
    if (p.is_zmod()) {
        out.certainty = "exact";
        i64 n = p.v_mod.ring->n;
        for (i64 d : divisors(n)) {
            if (d == 1) continue;
            Module m = cyclic_module(p.v_mod.ring, Side::right, d);
            AlphaInjectivity r = alpha_injective_for(p, m, caps);
            if (!r.injective) {
                out.satisfied = false;
                out.witness = json{{"test_module_chain", json::array({d})},
                                   {"element", r.witness},
                                   {"element_pretty", r.witness_pretty}};
                return out;
            }
        }
        out.satisfied = true;
        return out;
    }
    out.certainty = "bounded";
    for (const auto& ideal : right_ideals(p.v_mod.ring, caps)) {
        std::vector<std::vector<i64>> rows;
        for (i64 e : ideal.elems) rows.push_back({e});
        Module m = fp_module_rows(p.v_mod.ring, Side::right, 1, rows, caps);
        TableAlphaResult r = table_alpha_injective(p, m, caps);
        if (!r.injective) {
            out.satisfied = false;
            json tuple(json::array());
            for (const auto& e : r.witness_tuple) tuple.push_back(e);
            out.witness = json{{"test_module_ideal", ideal.elems}, {"element_tuple", tuple}};
            return out;
        }
    }
    out.satisfied = true;
    return out;
}

AlphaVerdict alpha_bruteforce(const Pairing& p, i64 max_card, const Caps& caps) {
    AlphaVerdict out;
    out.certainty = "exact";
    if (!p.is_zmod()) throw ContractError("alpha_bruteforce: Z/n backend only");
    i64 n = p.v_mod.ring->n;
    for (const auto& chain : divisor_chains(n, max_card)) {
        if (chain.empty()) continue;
        Module m;
        m.ring = p.v_mod.ring;
        m.side = Side::right;
        m.chain = chain;
        AlphaInjectivity r = alpha_injective_for(p, m, caps);
        if (!r.injective) {
            out.satisfied = false;
            out.witness = json{{"test_module_chain", chain},
                               {"element", r.witness},
                               {"element_pretty", r.witness_pretty}};
            return out;
        }
    }
    out.satisfied = true;
    return out;
}

PurityResult purity_bruteforce(const Submodule& k, i64 max_card, const Caps& caps) {
    i64 n = k.ambient.ring->n;
    for (const auto& chain : divisor_chains(n, max_card)) {
        if (chain.empty()) continue;
        Module t;
        t.ring = k.ambient.ring;
        t.side = opposite(k.ambient.side);
        t.chain = chain;
        PurityResult r = is_pure_for(k, t, caps);
        if (!r.pure) return r;
    }
    PurityResult out;
    out.pure = true;
    return out;
}

// ---- local projectivity ------------------------------------------------------------

namespace {

// Local dual basis on one finitely generated submodule F of W: functionals
// g_1..g_l with x = sum_j g_j(x)·u_j for every x in F.
bool local_dual_basis_exists(const Module& w, const Submodule& f, const Caps& caps) {
    i64 n = w.ring->n;
    int l = w.gens();
    auto gens = sub_generators(f);
    if (gens.empty()) return true;
    int eq = static_cast<int>(gens.size()) * l;
    int unknowns = l * l;  // a_{c,t}: raw dual coordinates of g_c
    ZnMatrix a(n, std::max(unknowns, 1), eq);
    std::vector<i64> b(static_cast<size_t>(eq), 0);
    for (size_t zi = 0; zi < gens.size(); ++zi) {
        const Elem& z = gens[zi];
        for (int c = 0; c < l; ++c) {
            int col = static_cast<int>(zi) * l + c;
            for (int t = 0; t < l; ++t)
                a.set(c * l + t, col, mul_mod(mul_mod(n / w.chain[t], z[t], n), n / w.chain[c], n));
            b[static_cast<size_t>(col)] = mul_mod(z[c], n / w.chain[c], n);
        }
    }
    SolveResult s = solve(a, b);
    if (!s.solvable) return false;
    for (const auto& x : sub_elements(f, caps)) {
        Elem acc = zero_elem(w);
        for (int c = 0; c < l; ++c) {
            i64 val = 0;
            for (int t = 0; t < l; ++t)
                val = mod_reduce(val + s.particular[c * l + t] * (n / w.chain[t]) % n * x[t], n);
            Elem uc = zero_elem(w);
            uc[c] = 1;
            acc = elem_add(w, acc, elem_scale(w, val, uc));
        }
        if (acc != x) throw InternalCheckError("local dual basis failed verification");
    }
    return true;
}

}  // namespace

LocalProjectivity is_locally_projective(const Module& w, const Caps& caps) {
    if (w.table) return table_is_locally_projective(w, caps);
    if (w.side != Side::left) throw ContractError("is_locally_projective: expects a left module");
    LocalProjectivity out;
    CanonicalPairing cp = canonical_dual_pairing(w, caps);
    out.route_alpha = satisfies_alpha(cp.pairing, caps).satisfied;
    out.route_dual_basis = true;
    for (const auto& f : all_submodules(w, caps))
        if (!local_dual_basis_exists(w, f, caps)) {
            out.route_dual_basis = false;
            break;
        }
    if (out.route_alpha != out.route_dual_basis)
        throw InternalCheckError("is_locally_projective: routes disagree");
    out.value = out.route_alpha;
    return out;
}

// ---- q-2 membership ------------------------------------------------------------------

bool q2_membership(const Pairing& p, const Module& m, const Submodule& n_sub, const Elem& t,
                   const Caps& caps) {
    if (!satisfies_alpha(p, caps).satisfied)
        throw ContractError("q2_membership: hypothesis violation, P is not an alpha-pairing");
    if (!same_module(n_sub.ambient, m)) throw ContractError("q2_membership: N must live in M");
    AlphaMap am = alpha_map(p, m, caps);
    LinearMap f = am.codomain.as_map(am.map.apply(t));
    bool route1 = true;
    for (const auto& v : elements(p.v_mod, caps))
        if (!sub_contains(n_sub, f.apply(v))) {
            route1 = false;
            break;
        }
    SubAsModule nabs = sub_as_module(n_sub);
    TensorModule nw = tensor_module(nabs.module, p.w_mod, caps);
    LinearMap incl_tensor = tensor_map_left(nabs.incl, nw, am.domain);
    bool route2 = sub_contains(map_image(incl_tensor), t);
    if (route1 != route2) throw InternalCheckError("q2_membership: the two routes disagree");
    return route1;
}

// ---- tensor pairings --------------------------------------------------------------------

TensorPairingResult tensor_pairing(const Pairing& p, const Pairing& q, const Caps& caps) {
    if (!p.is_zmod() || !q.is_zmod())
        throw ContractError("tensor_pairing: bimodule structure exists only on the Z/n backend");
    if (!same_ring(p.v_mod.ring, q.v_mod.ring)) throw ContractError("tensor_pairing: different rings");
    i64 n = p.v_mod.ring->n;
    TensorModule tv = tensor_module(q.v_mod, p.v_mod, caps);  // V' (x) V
    TensorModule tw = tensor_module(p.w_mod, q.w_mod, caps);  // W (x) W'
    Module vmod = tv.tensor;
    vmod.side = Side::right;
    Module wmod = tw.tensor;
    wmod.side = Side::left;
    int kvp = q.v_mod.gens(), kv = p.v_mod.gens(), lw = p.w_mod.gens(), lwp = q.w_mod.gens();
    int kraw = kvp * kv, lraw = lw * lwp;
    std::vector<std::vector<i64>> raw(static_cast<size_t>(std::max(kraw, 1)),
                                      std::vector<i64>(static_cast<size_t>(std::max(lraw, 1)), 0));
    for (int ap = 0; ap < kvp; ++ap)
        for (int a = 0; a < kv; ++a)
            for (int bb = 0; bb < lw; ++bb)
                for (int bp = 0; bp < lwp; ++bp)
                    raw[static_cast<size_t>(ap) * kv + a][static_cast<size_t>(bb) * lwp + bp] =
                        mul_mod(p.beta.at(a, bb), q.beta.at(ap, bp), n);
    int kc = vmod.gens(), lc = wmod.gens();
    ZnMatrix b(n, kc, lc);
    for (int s = 0; s < kc; ++s) {
        std::vector<i64> vraw = tv.from_canonical.row(s);
        for (int t = 0; t < lc; ++t) {
            std::vector<i64> wraw = tw.from_canonical.row(t);
            i64 acc = 0;
            for (int i = 0; i < kraw; ++i) {
                if (vraw[i] == 0) continue;
                for (int j = 0; j < lraw; ++j)
                    acc = mod_reduce(acc + vraw[i] * raw[i][j] % n * wraw[j], n);
            }
            b.set(s, t, acc);
        }
    }
    TensorPairingResult out;
    out.pairing = make_pairing(vmod, wmod, b);
    for (int ap = 0; ap < kvp; ++ap)
        for (int a = 0; a < kv; ++a)
            for (int bb = 0; bb < lw; ++bb)
                for (int bp = 0; bp < lwp; ++bp) {
                    Elem vp(static_cast<size_t>(kvp), 0), v(static_cast<size_t>(kv), 0);
                    Elem w(static_cast<size_t>(lw), 0), wp(static_cast<size_t>(lwp), 0);
                    vp[ap] = 1;
                    v[a] = 1;
                    w[bb] = 1;
                    wp[bp] = 1;
                    i64 lhs = pair_eval(out.pairing, tv.pure(vp, v), tw.pure(w, wp));
                    i64 inner = pair_eval(q, vp, wp);
                    i64 rhs = pair_eval(p, v, elem_scale(p.w_mod, inner, w));
                    if (lhs != rhs) throw InternalCheckError("tensor_pairing: evaluation formula fails");
                }
    out.alpha_inputs = satisfies_alpha(p, caps).satisfied && satisfies_alpha(q, caps).satisfied;
    if (out.alpha_inputs) {
        out.alpha_asserted = satisfies_alpha(out.pairing, caps).satisfied;
        if (!out.alpha_asserted)
            throw InternalCheckError("tensor_pairing: alpha-condition not preserved");
    }
    return out;
}

bool tensor_pairing_mirror_agrees(const Pairing& p, const Pairing& q, const Caps& caps) {
    i64 n = p.v_mod.ring->n;
    TensorPairingResult left = tensor_pairing(p, q, caps);
    TensorPairingResult right = tensor_pairing(q, p, caps);
    if (left.pairing.v_mod.chain != right.pairing.v_mod.chain) return false;
    if (left.pairing.w_mod.chain != right.pairing.w_mod.chain) return false;
    // over a commutative ring the raw bilinear tables agree under transposition
    int kvp = q.v_mod.gens(), kv = p.v_mod.gens(), lw = p.w_mod.gens(), lwp = q.w_mod.gens();
    for (int ap = 0; ap < kvp; ++ap)
        for (int a = 0; a < kv; ++a)
            for (int bb = 0; bb < lw; ++bb)
                for (int bp = 0; bp < lwp; ++bp)
                    if (mul_mod(p.beta.at(a, bb), q.beta.at(ap, bp), n) !=
                        mul_mod(q.beta.at(ap, bp), p.beta.at(a, bb), n))
                        return false;
    return true;
}

// ---- beta_M and the uno statements ----------------------------------------------------

BetaMapResult beta_map(const Module& m, i64 x_size, const Caps& caps) {
    if (!m.is_zmod()) throw ContractError("beta_map: Z/n backend only");
    i64 n = m.ring->n;
    Module rx = free_module(m.ring, Side::left, static_cast<int>(x_size), caps);
    TensorModule t = tensor_module(m, rx, caps);
    int km = m.gens();
    std::vector<i64> orders;
    for (i64 x = 0; x < x_size; ++x)
        for (int bidx = 0; bidx < km; ++bidx) orders.push_back(m.chain[static_cast<size_t>(bidx)]);
    CokerForm mx = coker_form(ZnMatrix::diagonal(n, orders), static_cast<int>(orders.size()));
    Module mxmod;
    mxmod.ring = m.ring;
    mxmod.side = Side::right;
    mxmod.chain = mx.chain;
    ZnMatrix raw(n, km * static_cast<int>(x_size), static_cast<int>(orders.size()));
    for (int i = 0; i < km; ++i)
        for (i64 x = 0; x < x_size; ++x)
            raw.set(i * static_cast<int>(x_size) + static_cast<int>(x),
                    static_cast<int>(x) * km + i, 1);
    LinearMap f =
        make_map(t.tensor, mxmod, mat_mul(t.from_canonical, mat_mul(raw, mx.to_canonical)));
    BetaMapResult out;
    out.x_size = x_size;
    out.injective = map_is_injective(f);
    return out;
}

UnoDeltaResult uno_delta(const Submodule& e, const Submodule& e_prime, const Caps& caps) {
    UnoDeltaResult out;
    const Module& fx = e.ambient;
    const Module& fxp = e_prime.ambient;
    if (fx.side != Side::right || fxp.side != Side::left)
        throw ContractError("uno_delta: E must sit in a right free module, E' in a left one");
    i64 n = fx.ring->n;
    SubAsModule ea = sub_as_module(e);
    SubAsModule epa = sub_as_module(e_prime);
    TensorModule t = tensor_module(ea.module, epa.module, caps);
    int s_count = ea.module.gens(), t_count = epa.module.gens();
    int xs = fx.gens(), xps = fxp.gens();
    ZnMatrix raw(n, std::max(s_count * t_count, 0), xs * xps);
    for (int s = 0; s < s_count; ++s) {
        Elem gs = zero_elem(ea.module);
        gs[s] = 1;
        Elem zs = ea.incl.apply(gs);
        for (int tt = 0; tt < t_count; ++tt) {
            Elem gt = zero_elem(epa.module);
            gt[tt] = 1;
            Elem zt = epa.incl.apply(gt);
            for (int x = 0; x < xs; ++x)
                for (int xp = 0; xp < xps; ++xp)
                    raw.set(s * t_count + tt, x * xps + xp, mul_mod(zs[x], zt[xp], n));
        }
    }
    Module target = free_module(fx.ring, Side::right, xs * xps, caps);
    LinearMap delta = make_map(t.tensor, target, mat_mul(t.from_canonical, raw));
    Submodule ker = map_kernel(delta);
    out.injective = sub_cardinality(ker) == 1;
    if (!out.injective) out.witness = sub_generators(ker)[0];
    out.hypothesis_pure = is_pure_for(e_prime, ea.module, caps).pure;
    return out;
}

KeFormulaResult uno_ke_formula(const Module& w, const Module& w_prime, const Submodule& x,
                               const Submodule& x_prime, const Caps& caps) {
    KeFormulaResult out;
    i64 n = w.ring->n;
    HomModule dual_w = dual_module(w);
    HomModule dual_wp = dual_module(w_prime);
    if (!same_module(x.ambient, dual_w.hom) || !same_module(x_prime.ambient, dual_wp.hom))
        throw ContractError("uno_ke_formula: X and X' must live in the duals of W and W'");
    TensorModule tww = tensor_module(w, w_prime, caps);
    HomModule dual_t = dual_module(tww.tensor);
    std::vector<Elem> span_gens;
    int kw = w.gens(), lwp = w_prime.gens();
    for (const auto& f : sub_generators(x))
        for (const auto& fp : sub_generators(x_prime)) {
            std::vector<i64> raw(static_cast<size_t>(kw) * lwp, 0);
            for (int i = 0; i < kw; ++i)
                for (int j = 0; j < lwp; ++j) {
                    Elem ui(static_cast<size_t>(kw), 0), uj(static_cast<size_t>(lwp), 0);
                    ui[i] = 1;
                    uj[j] = 1;
                    i64 val = mul_mod(dual_eval(dual_w, f, ui), dual_eval(dual_wp, fp, uj), n);
                    i64 g = tww.raw_orders[static_cast<size_t>(i) * lwp + j];
                    if (g == 0) {
                        if (val != 0) throw InternalCheckError("uno_ke_formula: functional on torsion");
                        continue;
                    }
                    i64 scale = n / g;
                    if (val % scale != 0)
                        throw InternalCheckError("uno_ke_formula: functional not in the dual");
                    raw[static_cast<size_t>(i) * lwp + j] = val / scale;
                }
            span_gens.push_back(canon_elem(dual_t.hom, row_times_matrix(raw, dual_t.to_canonical)));
        }
    Submodule kappa_image = submodule_span(dual_t.hom, span_gens);
    Submodule lhs = ke_submodule(dual_t, kappa_image);

    Submodule kex = ke_submodule(dual_w, x);
    Submodule kexp = ke_submodule(dual_wp, x_prime);
    SubAsModule kex_abs = sub_as_module(kex);
    SubAsModule kexp_abs = sub_as_module(kexp);
    TensorModule t1 = tensor_module(kex_abs.module, w_prime, caps);
    TensorModule t2 = tensor_module(w, kexp_abs.module, caps);
    Submodule img1 = map_image(tensor_map_left(kex_abs.incl, t1, tww));
    Submodule img2 = map_image(tensor_map_right(kexp_abs.incl, t2, tww));
    Submodule rhs = sub_sum(img1, img2);

    out.equal = sub_equal(lhs, rhs);
    out.lhs_size = sub_cardinality(lhs);
    out.rhs_size = sub_cardinality(rhs);
    out.hyp_w_flat = is_flat(w, caps).flat;
    out.hyp_kex_pure = is_pure_submodule(kex, caps).pure;
    return out;
}

// ---- function-module embedding -----------------------------------------------------------

FunctionEmbedding function_embedding(const Pairing& p, const Caps& caps) {
    if (!p.is_zmod()) throw ContractError("function_embedding: Z/n backend only");
    FunctionEmbedding out;
    i64 n = p.v_mod.ring->n;
    auto velems = elements(p.v_mod, caps);
    out.rv = free_module(p.v_mod.ring, Side::left, static_cast<int>(velems.size()), caps);
    int l = p.w_mod.gens();
    ZnMatrix mat(n, l, static_cast<int>(velems.size()));
    for (int j = 0; j < l; ++j) {
        Elem wj(static_cast<size_t>(l), 0);
        wj[j] = 1;
        for (size_t vi = 0; vi < velems.size(); ++vi)
            mat.set(j, static_cast<int>(vi), pair_eval(p, velems[vi], wj));
    }
    out.chi_tilde = make_map(p.w_mod, out.rv, mat);
    out.injective = map_is_injective(out.chi_tilde);
    out.image = map_image(out.chi_tilde);
    return out;
}

// ---- suites -------------------------------------------------------------------------------

json rp_rp_suite(const Pairing& p, const Submodule& v_prime, const Submodule& w_prime,
                 const Caps& caps) {
    json out;
    bool alpha_p = satisfies_alpha(p, caps).satisfied;
    bool pure_wp = is_pure_submodule(w_prime, caps).pure;

    Pairing p_restr = restrict_w(p, w_prime);
    bool alpha_restr = satisfies_alpha(p_restr, caps).satisfied;
    bool part1a = (!alpha_restr || pure_wp) && (!alpha_p || (alpha_restr == pure_wp));
    out["part1a"] = json{{"alpha_restricted", alpha_restr},
                         {"w_prime_pure", pure_wp},
                         {"alpha_p", alpha_p},
                         {"holds", part1a}};

    Submodule v_used = v_prime;
    {
        bool orthogonal = true;
        for (const auto& a : sub_elements(v_prime, caps)) {
            for (const auto& b : sub_elements(w_prime, caps))
                if (pair_eval(p, a, b) != 0) {
                    orthogonal = false;
                    break;
                }
            if (!orthogonal) break;
        }
        if (!orthogonal) v_used = perp_of_w_sub(p, w_prime);
    }
    Subpairing q = subpairing(p, v_used, w_prime, caps);
    bool alpha_q = satisfies_alpha(q.q, caps).satisfied;
    bool part1b = !alpha_p || (alpha_q == pure_wp);
    out["part1b"] = json{{"alpha_subpairing", alpha_q},
                         {"w_prime_pure", pure_wp},
                         {"v_used", sub_describe(v_used)},
                         {"holds", part1b}};

    Pairing p2 = restrict_v(p, v_prime);
    bool alpha_p2 = satisfies_alpha(p2, caps).satisfied;
    bool dense_p2 = is_dense_pairing(p2, caps);
    bool xi_dense = sub_equal(closure(p, v_prime), full_submodule(p.v_mod));
    bool chi_p2_inj = map_is_injective(chi_map(p2).map);
    bool chi_p_inj = map_is_injective(chi_map(p).map);
    bool s_i = alpha_p && dense_p2;
    bool s_i_alt = s_i && chi_p_inj;
    bool s_ii = alpha_p && xi_dense;
    bool s_iii = alpha_p2;
    bool s_iv = alpha_p2 && chi_p2_inj;
    bool chain_ok = (!s_i || s_ii) && (!s_ii || s_iii) && (!s_iii || s_iv);
    bool equivalence_ok = (s_i == s_ii) && (s_ii == s_iii) && (s_iii == s_iv);
    out["part2"] = json{{"i", s_i},
                        {"i_strict_reading", s_i_alt},
                        {"ii", s_ii},
                        {"iii", s_iii},
                        {"iv", s_iv},
                        {"chain_ok", chain_ok},
                        {"equivalence_ok", equivalence_ok},
                        {"readings_differ", s_i != s_i_alt}};
    bool inj_cog = p.is_zmod();
    out["pass"] = part1a && part1b && chain_ok && (!inj_cog || equivalence_ok);
    return out;
}

json pw_dicht_suite(const Pairing& p, const Caps& caps) {
    json out;
    const Module& w = p.w_mod;
    bool locproj = is_locally_projective(w, caps).value;
    bool dense = is_dense_pairing(p, caps);
    bool alpha = satisfies_alpha(p, caps).satisfied;
    bool chi_inj = map_is_injective(chi_map(p).map);
    bool proj = is_projective(w, caps).projective;
    FunctionEmbedding fe = function_embedding(p, caps);
    bool pure_rv = fe.injective && is_pure_submodule(fe.image, caps).pure;

    bool s1 = locproj && dense;
    bool s2 = alpha;
    bool s3 = locproj && chi_inj;
    bool s4 = proj && chi_inj;
    bool s5 = pure_rv;
    bool qf = is_qf(p.v_mod.ring, caps);
    bool equivalent = (s1 == s2) && (s2 == s3) && (s3 == s4) && (s4 == s5);
    out["statements"] = json{{"locally_projective_and_dense", s1},
                             {"alpha_pairing", s2},
                             {"alpha_condition_and_embedding", s3},
                             {"projective_and_embedding", s4},
                             {"pure_in_function_module", s5}};
    out["qf"] = qf;
    out["equivalence_ok"] = equivalent;
    bool pass = !qf || equivalent;
    if (is_semisimple(p.v_mod.ring, caps)) {
        bool semi_ok = (dense == chi_inj) && (chi_inj == alpha);
        out["semisimple"] = json{{"dense", dense},
                                 {"embedding", chi_inj},
                                 {"alpha", alpha},
                                 {"equivalence_ok", semi_ok}};
        pass = pass && semi_ok;
    }
    out["pass"] = pass;
    return out;
}

// ---- table-backend bounded variants ---------------------------------------------------

TableCanonicalPairing table_canonical_dual_pairing(const Module& w, const Caps& caps) {
    if (!w.table) throw ContractError("table_canonical_dual_pairing: table backend only");
    if (w.side != Side::left)
        throw ContractError("table_canonical_dual_pairing: W must be a left module");
    TableCanonicalPairing out;
    out.dual = table_dual(w, caps);
    int t = out.dual.dual_mod.table->rank;
    int l = w.table->rank;
    std::vector<std::vector<i64>> b(static_cast<size_t>(t), std::vector<i64>(static_cast<size_t>(l)));
    for (int a = 0; a < t; ++a) {
        Elem unit(static_cast<size_t>(t), w.ring->zero_elem());
        unit[a] = w.ring->one_elem();
        int idx = out.dual.dual_mod.table->coset_index.at(canon_elem(out.dual.dual_mod, unit));
        for (int j = 0; j < l; ++j) b[a][j] = out.dual.functional_of[idx][j];
    }
    out.pairing = make_table_pairing(out.dual.dual_mod, w, b, caps);
    return out;
}

TableAlphaResult table_alpha_injective(const Pairing& p, const Module& m, const Caps& caps) {
    if (p.is_zmod() || !m.table) throw ContractError("table_alpha_injective: table backend only");
    if (m.side != Side::right) throw ContractError("table_alpha_injective: M must be right");
    TableAlphaResult out;
    TableTensor t = table_tensor(m, p.w_mod, caps);
    int kv = p.v_mod.table->rank;
    int lw = p.w_mod.table->rank;
    std::vector<std::vector<i64>> bval(static_cast<size_t>(kv), std::vector<i64>(static_cast<size_t>(lw)));
    for (int i = 0; i < kv; ++i) {
        Elem vi(static_cast<size_t>(kv), p.v_mod.ring->zero_elem());
        vi[i] = p.v_mod.ring->one_elem();
        Elem vcan = canon_elem(p.v_mod, vi);
        for (int j = 0; j < lw; ++j) {
            Elem wj(static_cast<size_t>(lw), p.w_mod.ring->zero_elem());
            wj[j] = p.w_mod.ring->one_elem();
            bval[i][j] = pair_eval(p, vcan, canon_elem(p.w_mod, wj));
        }
    }
    Elem mzero = zero_elem(m);
    for (size_t id = 0; id < t.elems.size(); ++id) {
        if (static_cast<int>(id) == t.zero_id) continue;
        const auto& tuple = t.elems[id];
        bool zero = true;
        for (int i = 0; i < kv && zero; ++i) {
            Elem acc = mzero;
            for (int j = 0; j < lw; ++j) acc = elem_add(m, acc, elem_scale(m, bval[i][j], tuple[j]));
            zero = acc == mzero;
        }
        if (zero) {
            out.injective = false;
            out.witness_tuple = tuple;
            return out;
        }
    }
    out.injective = true;
    return out;
}

Submodule table_an(const TableDual& dual, const Submodule& l) {
    const Module& src = dual.source;
    auto value = [&](const Elem& ftuple, const Elem& x) {
        i64 acc = src.ring->zero_elem();
        for (size_t j = 0; j < x.size(); ++j)
            acc = src.ring->add(acc, src.side == Side::left ? src.ring->mul(x[j], ftuple[j])
                                                            : src.ring->mul(ftuple[j], x[j]));
        return acc;
    };
    Submodule out;
    out.ambient = dual.dual_mod;
    for (size_t i = 0; i < dual.dual_mod.table->reps.size(); ++i) {
        bool kills = true;
        for (const auto& x : l.elems)
            if (value(dual.functional_of[i], x) != src.ring->zero_elem()) {
                kills = false;
                break;
            }
        if (kills) out.elems.push_back(dual.dual_mod.table->reps[i]);
    }
    return out;
}

Submodule table_ke(const TableDual& dual, const Submodule& x) {
    const Module& src = dual.source;
    auto value = [&](const Elem& ftuple, const Elem& xe) {
        i64 acc = src.ring->zero_elem();
        for (size_t j = 0; j < xe.size(); ++j)
            acc = src.ring->add(acc, src.side == Side::left ? src.ring->mul(xe[j], ftuple[j])
                                                            : src.ring->mul(ftuple[j], xe[j]));
        return acc;
    };
    Submodule out;
    out.ambient = src;
    for (const auto& xe : src.table->reps) {
        bool killed = true;
        for (const auto& f : x.elems) {
            int idx = dual.dual_mod.table->coset_index.at(f);
            if (value(dual.functional_of[idx], xe) != src.ring->zero_elem()) {
                killed = false;
                break;
            }
        }
        if (killed) out.elems.push_back(xe);
    }
    return out;
}

namespace {

struct TableSubAbstract {
    Module module;
    std::vector<Elem> gen_elems;
};

Elem table_combination(const Module& amb, const std::vector<Elem>& gens, const Elem& coeff) {
    Elem acc = zero_elem(amb);
    for (size_t i = 0; i < gens.size(); ++i)
        acc = elem_add(amb, acc, elem_scale(amb, coeff[i], gens[i]));
    return acc;
}

TableSubAbstract table_sub_abstract(const Submodule& s, const Caps& caps) {
    TableSubAbstract out;
    const Module& amb = s.ambient;
    out.gen_elems = sub_generators(s);
    int t = static_cast<int>(out.gen_elems.size());
    std::vector<std::vector<i64>> rel;
    if (t > 0) {
        double space = 1;
        for (int i = 0; i < t; ++i) space *= static_cast<double>(amb.ring->order());
        if (space > static_cast<double>(caps.elements))
            throw CapError("table_sub_abstract: relation space exceeds cap");
        Elem coeff(static_cast<size_t>(t), 0);
        while (true) {
            if (table_combination(amb, out.gen_elems, coeff) == zero_elem(amb)) rel.push_back(coeff);
            int k = t - 1;
            while (k >= 0 && ++coeff[k] == amb.ring->order()) coeff[k--] = 0;
            if (k < 0) break;
        }
    }
    out.module = fp_module_rows(amb.ring, amb.side, t, rel, caps);
    return out;
}

}  // namespace

TableSubModule table_sub_module(const Submodule& k, const Caps& caps) {
    TableSubAbstract abs = table_sub_abstract(k, caps);
    return {abs.module, abs.gen_elems};
}

PurityResult table_is_pure(const Submodule& k, const Caps& caps) {
    PurityResult out;
    out.bounded = true;
    const Module& amb = k.ambient;
    const Ring& r = amb.ring;
    TableSubAbstract abs = table_sub_abstract(k, caps);
    Side test_side = opposite(amb.side);
    for (const auto& ideal : one_sided_ideals(r, test_side, caps)) {
        std::vector<std::vector<i64>> rows;
        for (i64 e : ideal.elems) rows.push_back({e});
        Module t = fp_module_rows(r, test_side, 1, rows, caps);
        TableTensor tk = amb.side == Side::left ? table_tensor(t, abs.module, caps)
                                                : table_tensor(abs.module, t, caps);
        TableTensor tl =
            amb.side == Side::left ? table_tensor(t, amb, caps) : table_tensor(amb, t, caps);
        Elem tgen;
        if (amb.side == Side::right) {
            Elem e(static_cast<size_t>(1), r->zero_elem());
            e[0] = r->one_elem();
            tgen = canon_elem(t, e);
        }
        for (size_t id = 0; id < tk.elems.size(); ++id) {
            if (static_cast<int>(id) == tk.zero_id) continue;
            const auto& tuple = tk.elems[id];
            int image = tl.zero_id;
            if (amb.side == Side::left) {
                for (size_t j = 0; j < tuple.size(); ++j)
                    image = tl.add(image, tl.pure(tuple[j], abs.gen_elems[j]));
            } else {
                for (size_t j = 0; j < tuple.size(); ++j)
                    image = tl.add(image,
                                   tl.pure(table_combination(amb, abs.gen_elems, tuple[j]), tgen));
            }
            if (image == tl.zero_id) {
                out.pure = false;
                out.witness = json{{"test_module_ideal", ideal.elems}};
                return out;
            }
        }
    }
    out.pure = true;
    return out;
}

LocalProjectivity table_is_locally_projective(const Module& w, const Caps& caps) {
    if (!w.table) throw ContractError("table_is_locally_projective: table backend only");
    LocalProjectivity out;
    out.bounded = true;
    TableCanonicalPairing cp = table_canonical_dual_pairing(w, caps);
    out.route_alpha = satisfies_alpha(cp.pairing, caps).satisfied;
    const Ring& r = w.ring;
    int l = w.table->rank;
    out.route_dual_basis = true;
    auto dual_elems = cp.dual.dual_mod.table->reps;
    for (const auto& f : all_submodules(w, caps)) {
        if (f.elems.size() == 1) continue;
        double space = 1;
        for (int i = 0; i < l; ++i) space *= static_cast<double>(dual_elems.size());
        if (space > static_cast<double>(1 << 18))
            throw CapError("table_is_locally_projective: search space exceeds cap");
        std::vector<size_t> pick(static_cast<size_t>(l), 0);
        bool found = false;
        while (true) {
            bool all = true;
            for (const auto& x : f.elems) {
                Elem img(static_cast<size_t>(l), r->zero_elem());
                for (int j = 0; j < l; ++j) {
                    int idx = cp.dual.dual_mod.table->coset_index.at(dual_elems[pick[j]]);
                    const Elem& ftuple = cp.dual.functional_of[idx];
                    i64 acc = r->zero_elem();
                    for (int c = 0; c < l; ++c) acc = r->add(acc, r->mul(x[c], ftuple[c]));
                    img[j] = acc;
                }
                if (canon_elem(w, img) != x) {
                    all = false;
                    break;
                }
            }
            if (all) {
                found = true;
                break;
            }
            int kk = l - 1;
            while (kk >= 0 && ++pick[kk] == dual_elems.size()) pick[kk--] = 0;
            if (kk < 0) break;
        }
        if (!found) {
            out.route_dual_basis = false;
            break;
        }
    }
    // a false bounded alpha verdict carries a genuine witness; it can never
    // coexist with local dual bases
    if (!out.route_alpha && out.route_dual_basis)
        throw InternalCheckError("table_is_locally_projective: alpha witness against a dual basis");
    out.value = out.route_dual_basis;
    return out;
}

}  // namespace pairlab
