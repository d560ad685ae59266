#include "pairlab/modules.hpp"

#include <algorithm>
#include <set>

namespace pairlab {

// Table-backend pieces live in table.cpp.
namespace detail {
Module table_fp_module(const Ring& r, Side side, int rank,
                       const std::vector<std::vector<i64>>& rel_rows, const Caps& caps);
Elem table_elem_add(const Module& m, const Elem& a, const Elem& b);
Elem table_elem_neg(const Module& m, const Elem& a);
Elem table_elem_scale(const Module& m, i64 r, const Elem& a);
Elem table_canon(const Module& m, const Elem& raw);
std::vector<Elem> table_sub_span(const Module& m, const std::vector<Elem>& gens);
std::vector<Module> table_simple_modules(const Ring& r, const Caps& caps);
json table_describe(const Module& m);
}  // namespace detail

i64 Module::cardinality() const {
    if (table) return static_cast<i64>(table->reps.size());
    i64 c = 1;
    for (i64 d : chain) c = mul_sat(c, d);
    return c;
}

json Module::describe() const {
    if (table) return detail::table_describe(*this);
    json rel(json::array());
    for (size_t i = 0; i < chain.size(); ++i) {
        json row(json::array());
        for (size_t j = 0; j < chain.size(); ++j) row.push_back(i == j ? chain[i] : 0);
        rel.push_back(row);
    }
    return json{{"side", side_name(side)},
                {"gens", chain.size()},
                {"relations", rel},
                {"chain", chain}};
}

bool same_module(const Module& a, const Module& b) {
    if (!same_ring(a.ring, b.ring) || a.side != b.side) return false;
    if (bool(a.table) != bool(b.table)) return false;
    if (a.table) return a.table == b.table || a.table->rel_span == b.table->rel_span;
    return a.chain == b.chain;
}

Module fp_module(const Ring& r, Side side, int generators, const ZnMatrix& relations) {
    if (!r->is_zmod()) throw ContractError("fp_module: matrix presentation needs the Z/n backend");
    if (relations.rows() > 0 && relations.cols() != generators)
        throw ContractError("fp_module: relation width must match generator count");
    ZnMatrix rel = relations.rows() > 0 ? relations : ZnMatrix(r->n, 0, generators);
    if (rel.modulus() != r->n) throw ContractError("fp_module: relation modulus must match the ring");
    Module m;
    m.ring = r;
    m.side = side;
    m.chain = coker_form(rel, generators).chain;
    return m;
}

Module fp_module_rows(const Ring& r, Side side, int generators,
                      const std::vector<std::vector<i64>>& relation_rows, const Caps& caps) {
    if (r->is_zmod())
        return fp_module(r, side, generators, ZnMatrix::from_rows(r->n, relation_rows, generators));
    return detail::table_fp_module(r, side, generators, relation_rows, caps);
}

Module zero_module(const Ring& r, Side side) {
    if (r->is_zmod()) {
        Module m;
        m.ring = r;
        m.side = side;
        return m;
    }
    return detail::table_fp_module(r, side, 0, {}, Caps{});
}

Module free_module(const Ring& r, Side side, int rank, const Caps& caps) {
    if (r->is_zmod()) {
        Module m;
        m.ring = r;
        m.side = side;
        m.chain.assign(rank, r->n);
        return m;
    }
    return detail::table_fp_module(r, side, rank, {}, caps);
}

Module cyclic_module(const Ring& r, Side side, i64 d) {
    if (!r->is_zmod()) throw ContractError("cyclic_module: Z/n backend only");
    if (d < 1 || r->n % d != 0) throw ContractError("cyclic_module: d must divide n");
    Module m;
    m.ring = r;
    m.side = side;
    if (d > 1) m.chain.push_back(d);
    return m;
}

// ---- elements ----------------------------------------------------------------

Elem zero_elem(const Module& m) {
    if (m.table) return detail::table_canon(m, Elem(m.table->rank, m.ring->zero_elem()));
    return Elem(m.chain.size(), 0);
}

Elem canon_elem(const Module& m, const Elem& raw) {
    if (m.table) return detail::table_canon(m, raw);
    if (raw.size() != m.chain.size()) throw ContractError("canon_elem: coordinate length mismatch");
    Elem e(raw.size());
    for (size_t i = 0; i < raw.size(); ++i) e[i] = mod_reduce(raw[i], m.chain[i]);
    return e;
}

Elem elem_add(const Module& m, const Elem& a, const Elem& b) {
    if (m.table) return detail::table_elem_add(m, a, b);
    Elem e(a.size());
    for (size_t i = 0; i < a.size(); ++i) e[i] = mod_reduce(a[i] + b[i], m.chain[i]);
    return e;
}

Elem elem_neg(const Module& m, const Elem& a) {
    if (m.table) return detail::table_elem_neg(m, a);
    Elem e(a.size());
    for (size_t i = 0; i < a.size(); ++i) e[i] = mod_reduce(-a[i], m.chain[i]);
    return e;
}

Elem elem_scale(const Module& m, i64 r, const Elem& a) {
    if (m.table) return detail::table_elem_scale(m, r, a);
    Elem e(a.size());
    for (size_t i = 0; i < a.size(); ++i) e[i] = mod_reduce(r * a[i], m.chain[i]);
    return e;
}

bool elem_is_zero(const Elem& a) {
    return std::all_of(a.begin(), a.end(), [](i64 x) { return x == 0; });
}

std::vector<Elem> elements(const Module& m, const Caps& caps) {
    if (m.cardinality() > caps.elements) throw CapError("elements: cardinality exceeds cap");
    if (m.table) return m.table->reps;
    std::vector<Elem> out;
    Elem cur(m.chain.size(), 0);
    while (true) {
        out.push_back(cur);
        int k = static_cast<int>(m.chain.size()) - 1;
        while (k >= 0 && ++cur[k] == m.chain[k]) cur[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

// ---- linear maps ----------------------------------------------------------------

Elem LinearMap::apply(const Elem& x) const {
    if (static_cast<int>(x.size()) != src.gens()) throw ContractError("LinearMap: element size mismatch");
    Elem y(dst.chain.size(), 0);
    i64 n = src.ring->n;
    for (size_t j = 0; j < dst.chain.size(); ++j) {
        i64 acc = 0;
        for (size_t i = 0; i < x.size(); ++i)
            acc = mod_reduce(acc + x[i] * mat.at(static_cast<int>(i), static_cast<int>(j)), n);
        y[j] = mod_reduce(acc, dst.chain[j]);
    }
    return y;
}

LinearMap make_map(const Module& src, const Module& dst, const ZnMatrix& mat) {
    if (!src.is_zmod() || !dst.is_zmod()) throw ContractError("make_map: Z/n backend only");
    if (mat.rows() != src.gens() || mat.cols() != dst.gens())
        throw ContractError("make_map: matrix shape mismatch");
    i64 n = src.ring->n;
    for (int i = 0; i < mat.rows(); ++i)
        for (int j = 0; j < mat.cols(); ++j)
            if (mul_mod(src.chain[i], mat.at(i, j), n) % dst.chain[j] != 0)
                throw ContractError("make_map: matrix does not respect the invariant factors");
    return LinearMap{src, dst, mat};
}

LinearMap identity_map(const Module& m) {
    return make_map(m, m, ZnMatrix::identity(m.ring->n, m.gens()));
}

LinearMap zero_map(const Module& src, const Module& dst) {
    return make_map(src, dst, ZnMatrix(src.ring->n, src.gens(), dst.gens()));
}

LinearMap compose(const LinearMap& first, const LinearMap& then) {
    if (!same_module(first.dst, then.src)) throw ContractError("compose: middle modules differ");
    return make_map(first.src, then.dst, mat_mul(first.mat, then.mat));
}

// ---- submodules ------------------------------------------------------------------

namespace {

ZnMatrix relation_rows(const Module& m) { return ZnMatrix::diagonal(m.ring->n, m.chain); }

Submodule from_lifted(const Module& m, const ZnMatrix& rows) {
    Submodule s;
    s.ambient = m;
    s.lifted = howell_form(vstack(rows, relation_rows(m)));
    return s;
}

std::vector<i64> flat_key(const ZnMatrix& h) {
    std::vector<i64> k;
    k.push_back(h.rows());
    for (int i = 0; i < h.rows(); ++i)
        for (int j = 0; j < h.cols(); ++j) k.push_back(h.at(i, j));
    return k;
}

}  // namespace

Submodule submodule_span(const Module& m, const std::vector<Elem>& gens) {
    if (m.table) {
        Submodule s;
        s.ambient = m;
        s.elems = detail::table_sub_span(m, gens);
        return s;
    }
    ZnMatrix rows(m.ring->n, 0, m.gens());
    for (const auto& g : gens) {
        if (static_cast<int>(g.size()) != m.gens())
            throw ContractError("submodule_span: generator length mismatch");
        rows.append_row(g);
    }
    return from_lifted(m, rows);
}

Submodule zero_submodule(const Module& m) { return submodule_span(m, {}); }

Submodule full_submodule(const Module& m) {
    if (m.table) {
        Submodule s;
        s.ambient = m;
        s.elems = m.table->reps;
        return s;
    }
    return from_lifted(m, ZnMatrix::identity(m.ring->n, m.gens()));
}

bool sub_contains(const Submodule& s, const Elem& x) {
    if (s.ambient.table)
        return std::binary_search(s.elems.begin(), s.elems.end(), canon_elem(s.ambient, x));
    return in_span(s.lifted, x);
}

bool sub_equal(const Submodule& a, const Submodule& b) {
    if (a.ambient.table) return a.elems == b.elems;
    return a.lifted == b.lifted;
}

bool sub_subset(const Submodule& a, const Submodule& b) {
    if (a.ambient.table)
        return std::includes(b.elems.begin(), b.elems.end(), a.elems.begin(), a.elems.end());
    for (int i = 0; i < a.lifted.rows(); ++i)
        if (!in_span(b.lifted, a.lifted.row(i))) return false;
    return true;
}

Submodule sub_sum(const Submodule& a, const Submodule& b) {
    if (!same_module(a.ambient, b.ambient)) throw ContractError("sub_sum: different ambient modules");
    if (a.ambient.table) {
        Submodule s;
        s.ambient = a.ambient;
        std::set<Elem> out;
        for (const auto& x : a.elems)
            for (const auto& y : b.elems) out.insert(elem_add(a.ambient, x, y));
        s.elems.assign(out.begin(), out.end());
        return s;
    }
    return from_lifted(a.ambient, vstack(a.lifted, b.lifted));
}

Submodule sub_intersect(const Submodule& a, const Submodule& b) {
    if (!same_module(a.ambient, b.ambient)) throw ContractError("sub_intersect: different ambients");
    if (a.ambient.table) {
        Submodule s;
        s.ambient = a.ambient;
        std::set_intersection(a.elems.begin(), a.elems.end(), b.elems.begin(), b.elems.end(),
                              std::back_inserter(s.elems));
        return s;
    }
    // rows (x | y) of the stacked kernel give x·A = -y·B, i.e. the intersection
    ZnMatrix ker = kernel(vstack(a.lifted, b.lifted));
    ZnMatrix rows(a.ambient.ring->n, 0, a.ambient.gens());
    for (int i = 0; i < ker.rows(); ++i) {
        std::vector<i64> coeff(a.lifted.rows());
        for (int j = 0; j < a.lifted.rows(); ++j) coeff[j] = ker.at(i, j);
        rows.append_row(row_times_matrix(coeff, a.lifted));
    }
    return from_lifted(a.ambient, rows);
}

i64 sub_cardinality(const Submodule& s) {
    if (s.ambient.table) return static_cast<i64>(s.elems.size());
    // |S| = |lifted span| / |relation span|, computed with factor cancellation
    // so wide ambient modules cannot overflow
    i64 n = s.ambient.ring->n;
    std::vector<i64> num;
    for (int i = 0; i < s.lifted.rows(); ++i) {
        auto r = s.lifted.row(i);
        for (size_t j = 0; j < r.size(); ++j)
            if (r[j] != 0) {
                num.push_back(n / r[j]);
                break;
            }
    }
    i64 out = 1;
    std::vector<i64> den;
    for (i64 d : s.ambient.chain) den.push_back(n / d);
    for (i64 f : den) {
        for (auto& nf : num) {
            if (f == 1) break;
            i64 g = gcd_ll(f, nf);
            f /= g;
            nf /= g;
        }
        if (f != 1) throw InternalCheckError("sub_cardinality: relation span not inside the lifted span");
    }
    for (i64 nf : num) out = mul_sat(out, nf);
    return out;
}

std::vector<Elem> sub_elements(const Submodule& s, const Caps& caps) {
    if (s.ambient.table) return s.elems;
    if (sub_cardinality(s) > caps.elements) throw CapError("sub_elements: cardinality exceeds cap");
    std::vector<Elem> out;
    for (const auto& x : elements(s.ambient, caps))
        if (sub_contains(s, x)) out.push_back(x);
    return out;
}

std::vector<Elem> sub_generators(const Submodule& s) {
    if (s.ambient.table) {
        std::vector<Elem> gens;
        auto have = detail::table_sub_span(s.ambient, {});
        for (const auto& x : s.elems) {
            if (std::binary_search(have.begin(), have.end(), x)) continue;
            gens.push_back(x);
            have = detail::table_sub_span(s.ambient, gens);
            if (have.size() == s.elems.size()) break;
        }
        return gens;
    }
    std::vector<Elem> gens;
    for (int i = 0; i < s.lifted.rows(); ++i) {
        Elem g = canon_elem(s.ambient, s.lifted.row(i));
        if (!elem_is_zero(g)) gens.push_back(g);
    }
    return gens;
}

json sub_describe(const Submodule& s) {
    json gens(json::array());
    for (const auto& g : sub_generators(s)) gens.push_back(g);
    return json{{"gens", gens}};
}

std::vector<Submodule> all_submodules(const Module& m, const Caps& caps) {
    std::set<std::vector<i64>> seen_z;
    std::set<std::vector<Elem>> seen_t;
    std::vector<Submodule> queue;
    Submodule z = zero_submodule(m);
    queue.push_back(z);
    if (m.table)
        seen_t.insert(z.elems);
    else
        seen_z.insert(flat_key(z.lifted));
    auto all = elements(m, caps);
    for (size_t q = 0; q < queue.size(); ++q) {
        Submodule cur = queue[q];
        for (const auto& x : all) {
            if (sub_contains(cur, x)) continue;
            auto gens = sub_generators(cur);
            gens.push_back(x);
            Submodule next = submodule_span(m, gens);
            bool fresh = m.table ? seen_t.insert(next.elems).second
                                 : seen_z.insert(flat_key(next.lifted)).second;
            if (fresh) {
                if (static_cast<i64>(queue.size()) + 1 > caps.submodules)
                    throw CapError("all_submodules: count exceeds cap");
                queue.push_back(next);
            }
        }
    }
    std::sort(queue.begin(), queue.end(), [&](const Submodule& a, const Submodule& b) {
        i64 ca = sub_cardinality(a), cb = sub_cardinality(b);
        if (ca != cb) return ca < cb;
        if (m.table) return a.elems < b.elems;
        return flat_key(a.lifted) < flat_key(b.lifted);
    });
    return queue;
}

Submodule map_image(const LinearMap& f) {
    ZnMatrix rows(f.src.ring->n, 0, f.dst.gens());
    for (int i = 0; i < f.mat.rows(); ++i) rows.append_row(f.mat.row(i));
    return from_lifted(f.dst, rows);
}

namespace {

Submodule kernel_like(const LinearMap& f, const ZnMatrix& dst_rows) {
    ZnMatrix ker = kernel(vstack(f.mat, dst_rows));
    ZnMatrix rows(f.src.ring->n, 0, f.src.gens());
    for (int i = 0; i < ker.rows(); ++i) {
        std::vector<i64> x(static_cast<size_t>(f.src.gens()));
        for (int j = 0; j < f.src.gens(); ++j) x[j] = ker.at(i, j);
        rows.append_row(x);
    }
    return from_lifted(f.src, rows);
}

}  // namespace

Submodule map_kernel(const LinearMap& f) { return kernel_like(f, relation_rows(f.dst)); }

Submodule map_preimage(const LinearMap& f, const Submodule& of_dst) {
    if (!same_module(f.dst, of_dst.ambient)) throw ContractError("map_preimage: ambient mismatch");
    return kernel_like(f, of_dst.lifted);
}

Submodule sub_image(const LinearMap& f, const Submodule& of_src) {
    if (!same_module(f.src, of_src.ambient)) throw ContractError("sub_image: ambient mismatch");
    ZnMatrix rows(f.src.ring->n, 0, f.dst.gens());
    for (const auto& g : sub_generators(of_src)) rows.append_row(row_times_matrix(g, f.mat));
    return from_lifted(f.dst, rows);
}

bool map_is_injective(const LinearMap& f) { return sub_cardinality(map_kernel(f)) == 1; }

bool map_is_surjective(const LinearMap& f) {
    return sub_cardinality(map_image(f)) == f.dst.cardinality();
}

// ---- quotient and submodule-as-module ------------------------------------------------

Quotient quotient_module(const Module& m, const Submodule& s, const Caps&) {
    if (!same_module(m, s.ambient)) throw ContractError("quotient_module: submodule of another module");
    if (m.table) throw ContractError("quotient_module: table quotients go through fp_module_rows");
    CokerForm ck = coker_form(s.lifted, m.gens());
    Quotient out;
    out.module.ring = m.ring;
    out.module.side = m.side;
    out.module.chain = ck.chain;
    out.projection = make_map(m, out.module, ck.to_canonical);
    out.section = ck.from_canonical;
    return out;
}

SubAsModule sub_as_module(const Submodule& s) {
    const Module& amb = s.ambient;
    if (amb.table) throw ContractError("sub_as_module: Z/n backend only");
    i64 n = amb.ring->n;
    auto gens = sub_generators(s);
    int t = static_cast<int>(gens.size());
    ZnMatrix genmat(n, 0, amb.gens());
    for (const auto& g : gens) genmat.append_row(g);
    Module freet = free_module(amb.ring, amb.side, t, Caps{});
    LinearMap span_map = make_map(freet, amb, genmat);
    Submodule rel = map_kernel(span_map);
    CokerForm ck = coker_form(rel.lifted, t);
    SubAsModule out;
    out.module.ring = amb.ring;
    out.module.side = amb.side;
    out.module.chain = ck.chain;
    out.incl = make_map(out.module, amb, mat_mul(ck.from_canonical, genmat));
    return out;
}

// ---- Hom / dual / tensor / sum ----------------------------------------------------------

namespace {

struct RawForm {
    std::vector<i64> orders;
    CokerForm ck;
};

RawForm raw_form(i64 n, std::vector<i64> orders) {
    RawForm rf;
    rf.orders = std::move(orders);
    rf.ck = coker_form(ZnMatrix::diagonal(n, rf.orders), static_cast<int>(rf.orders.size()));
    return rf;
}

}  // namespace

LinearMap HomModule::as_map(const Elem& h) const {
    i64 n = source.ring->n;
    int k = source.gens(), l = target.gens();
    std::vector<i64> raw = row_times_matrix(h, from_canonical);
    ZnMatrix f(n, k, l);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j) {
            i64 g = raw_orders[static_cast<size_t>(i) * l + j];
            if (g == 0) continue;
            i64 a = mod_reduce(raw[static_cast<size_t>(i) * l + j], g);
            f.set(i, j, mul_mod(a, target.chain[j] / g, n));
        }
    return make_map(source, target, f);
}

Elem HomModule::from_map(const LinearMap& f) const {
    int k = source.gens(), l = target.gens();
    std::vector<i64> raw(static_cast<size_t>(k) * l, 0);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j) {
            i64 g = raw_orders[static_cast<size_t>(i) * l + j];
            if (g == 0) continue;
            i64 scale = target.chain[j] / g;
            i64 rem = mod_reduce(f.mat.at(i, j), target.chain[j]);
            if (rem % scale != 0) throw ContractError("HomModule::from_map: map not in this Hom module");
            raw[static_cast<size_t>(i) * l + j] = rem / scale;
        }
    return canon_elem(hom, row_times_matrix(raw, to_canonical));
}

Elem HomModule::apply(const Elem& h, const Elem& x) const { return as_map(h).apply(x); }

HomModule hom_module(const Module& m, const Module& target) {
    if (!m.is_zmod() || !same_ring(m.ring, target.ring))
        throw ContractError("hom_module: Z/n backend, same ring required");
    i64 n = m.ring->n;
    int k = m.gens(), l = target.gens();
    std::vector<i64> orders(static_cast<size_t>(k) * l);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j)
            orders[static_cast<size_t>(i) * l + j] = gcd_ll(m.chain[i], target.chain[j]);
    RawForm rf = raw_form(n, orders);
    HomModule out;
    out.source = m;
    out.target = target;
    out.hom.ring = m.ring;
    out.hom.side = m.side;
    out.hom.chain = rf.ck.chain;
    out.raw_orders = rf.orders;
    out.to_canonical = rf.ck.to_canonical;
    out.from_canonical = rf.ck.from_canonical;
    return out;
}

HomModule dual_module(const Module& m) {
    HomModule out = hom_module(m, free_module(m.ring, opposite(m.side), 1, Caps{}));
    out.hom.side = opposite(m.side);
    return out;
}

i64 dual_eval(const HomModule& dual, const Elem& f, const Elem& x) {
    i64 n = dual.source.ring->n;
    std::vector<i64> raw = row_times_matrix(f, dual.from_canonical);
    i64 acc = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        i64 d = dual.source.chain[i];
        acc = mod_reduce(acc + mod_reduce(raw[i], d) * (n / d) % n * x[i], n);
    }
    return acc;
}

Elem TensorModule::pure(const Elem& m, const Elem& w) const {
    int k = factor_m.gens(), l = factor_w.gens();
    if (static_cast<int>(m.size()) != k || static_cast<int>(w.size()) != l)
        throw ContractError("TensorModule::pure: coordinate mismatch");
    std::vector<i64> raw(static_cast<size_t>(k) * l);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j) {
            i64 g = raw_orders[static_cast<size_t>(i) * l + j];
            raw[static_cast<size_t>(i) * l + j] = g == 0 ? 0 : mod_reduce(m[i] * w[j], g);
        }
    return canon_elem(tensor, row_times_matrix(raw, to_canonical));
}

TensorModule tensor_module(const Module& m, const Module& w, const Caps& caps) {
    if (!m.is_zmod() || !same_ring(m.ring, w.ring))
        throw ContractError("tensor_module: Z/n backend, same ring required");
    i64 n = m.ring->n;
    int k = m.gens(), l = w.gens();
    if (static_cast<i64>(k) * l > caps.tensor)
        throw CapError("tensor_module: generator count exceeds the tensor cap");
    std::vector<i64> orders(static_cast<size_t>(k) * l);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < l; ++j)
            orders[static_cast<size_t>(i) * l + j] = gcd_ll(m.chain[i], w.chain[j]);
    RawForm rf = raw_form(n, orders);
    TensorModule out;
    out.factor_m = m;
    out.factor_w = w;
    out.tensor.ring = m.ring;
    out.tensor.side = Side::right;
    out.tensor.chain = rf.ck.chain;
    out.raw_orders = rf.orders;
    out.to_canonical = rf.ck.to_canonical;
    out.from_canonical = rf.ck.from_canonical;
    return out;
}

LinearMap tensor_map_left(const LinearMap& f, const TensorModule& src, const TensorModule& dst) {
    if (!same_module(f.src, src.factor_m) || !same_module(f.dst, dst.factor_m) ||
        !same_module(src.factor_w, dst.factor_w))
        throw ContractError("tensor_map_left: factor mismatch");
    i64 n = f.src.ring->n;
    int ka = f.src.gens(), kb = f.dst.gens(), l = src.factor_w.gens();
    ZnMatrix raw(n, ka * l, kb * l);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < l; ++j)
            for (int b = 0; b < kb; ++b) raw.set(i * l + j, b * l + j, f.mat.at(i, b));
    return make_map(src.tensor, dst.tensor,
                    mat_mul(src.from_canonical, mat_mul(raw, dst.to_canonical)));
}

LinearMap tensor_map_right(const LinearMap& g, const TensorModule& src, const TensorModule& dst) {
    if (!same_module(g.src, src.factor_w) || !same_module(g.dst, dst.factor_w) ||
        !same_module(src.factor_m, dst.factor_m))
        throw ContractError("tensor_map_right: factor mismatch");
    i64 n = g.src.ring->n;
    int k = src.factor_m.gens(), la = g.src.gens(), lb = g.dst.gens();
    ZnMatrix raw(n, k * la, k * lb);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < la; ++j)
            for (int b = 0; b < lb; ++b) raw.set(i * la + j, i * lb + b, g.mat.at(j, b));
    return make_map(src.tensor, dst.tensor,
                    mat_mul(src.from_canonical, mat_mul(raw, dst.to_canonical)));
}

DirectSum direct_sum(const Module& a, const Module& b) {
    if (!a.is_zmod() || !same_ring(a.ring, b.ring) || a.side != b.side)
        throw ContractError("direct_sum: Z/n backend, same ring and side required");
    i64 n = a.ring->n;
    int ka = a.gens(), kb = b.gens();
    std::vector<i64> orders = a.chain;
    orders.insert(orders.end(), b.chain.begin(), b.chain.end());
    RawForm rf = raw_form(n, orders);
    DirectSum out;
    out.module.ring = a.ring;
    out.module.side = a.side;
    out.module.chain = rf.ck.chain;
    int k = out.module.gens();
    ZnMatrix inj1(n, ka, k), inj2(n, kb, k), proj1(n, k, ka), proj2(n, k, kb);
    for (int i = 0; i < ka; ++i)
        for (int j = 0; j < k; ++j) inj1.set(i, j, rf.ck.to_canonical.at(i, j));
    for (int i = 0; i < kb; ++i)
        for (int j = 0; j < k; ++j) inj2.set(i, j, rf.ck.to_canonical.at(ka + i, j));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < ka; ++j) proj1.set(i, j, rf.ck.from_canonical.at(i, j));
        for (int j = 0; j < kb; ++j) proj2.set(i, j, rf.ck.from_canonical.at(i, ka + j));
    }
    out.inj1 = make_map(a, out.module, inj1);
    out.inj2 = make_map(b, out.module, inj2);
    out.proj1 = make_map(out.module, a, proj1);
    out.proj2 = make_map(out.module, b, proj2);
    return out;
}

// ---- predicates ---------------------------------------------------------------------------

std::string pretty_tensor_elem(const TensorModule& t, const Elem& e) {
    std::vector<i64> raw = row_times_matrix(e, t.from_canonical);
    int l = t.factor_w.gens();
    std::string s;
    for (size_t idx = 0; idx < raw.size(); ++idx) {
        i64 g = t.raw_orders[idx];
        i64 c = g == 0 ? 0 : mod_reduce(raw[idx], g);
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        int i = static_cast<int>(idx) / l, j = static_cast<int>(idx) % l;
        if (c != 1) s += std::to_string(c) + "*";
        s += "m" + std::to_string(i + 1) + "(x)w" + std::to_string(j + 1);
    }
    return s.empty() ? "0" : s;
}

FlatResult is_flat(const Module& m, const Caps& caps) {
    FlatResult out;
    if (m.table) throw ContractError("is_flat: Z/n backend only");
    i64 n = m.ring->n;
    for (i64 d : divisors(n)) {
        if (d == 1 || d == n) continue;  // R itself and the zero ideal are trivial
        // the ideal (d) is cyclic of order n/d generated by d
        Module ideal = cyclic_module(m.ring, opposite(m.side), n / d);
        TensorModule tm =
            m.side == Side::left ? tensor_module(ideal, m, caps) : tensor_module(m, ideal, caps);
        int k = m.gens();
        ZnMatrix raw(n, k, k);
        for (int i = 0; i < k; ++i) raw.set(i, i, d);
        LinearMap mult = make_map(tm.tensor, m, mat_mul(tm.from_canonical, raw));
        Submodule ker = map_kernel(mult);
        if (sub_cardinality(ker) != 1) {
            Elem w = sub_generators(ker)[0];
            out.flat = false;
            out.witness = json{{"ideal", d}, {"element", w}, {"element_pretty", pretty_tensor_elem(tm, w)}};
            return out;
        }
    }
    out.flat = true;
    return out;
}

ProjectiveResult is_projective(const Module& m, const Caps& caps) {
    ProjectiveResult out;
    if (m.table) throw ContractError("is_projective: Z/n backend only");
    i64 n = m.ring->n;
    // dual basis on canonical generators: need a_i with a_i*(n/d_i) ≡ 1 (mod d_i)
    std::vector<i64> diag(m.chain.size());
    for (size_t i = 0; i < m.chain.size(); ++i) {
        i64 d = m.chain[i];
        i64 want = -1;
        for (i64 a = 0; a < d; ++a)
            if (mod_reduce(a * (n / d), d) == mod_reduce(1, d)) {
                want = a;
                break;
            }
        if (want < 0) {
            out.projective = false;
            out.witness = json{{"obstruction_factor", d}};
            return out;
        }
        diag[i] = want;
    }
    // full-enumeration verification of x = sum_j f_j(x)·x_j
    if (m.cardinality() <= caps.elements) {
        for (const auto& x : elements(m, caps)) {
            Elem acc = zero_elem(m);
            for (size_t j = 0; j < m.chain.size(); ++j) {
                i64 fx = mod_reduce(diag[j] * (n / m.chain[j]) % n * x[j], n);
                Elem xj = zero_elem(m);
                xj[j] = 1;
                acc = elem_add(m, acc, elem_scale(m, fx, xj));
            }
            if (acc != x) throw InternalCheckError("is_projective: dual basis failed verification");
        }
    }
    out.projective = true;
    json fs(json::array());
    for (size_t i = 0; i < diag.size(); ++i)
        fs.push_back(json{{"generator", i}, {"functional_coefficient", diag[i]}});
    out.witness = json{{"dual_basis", fs}};
    return out;
}

bool is_cogenerated(const Module& m, const Caps& caps) {
    if (m.table) throw ContractError("is_cogenerated: table backend goes through the pairing layer");
    (void)caps;
    i64 n = m.ring->n;
    int k = m.gens();
    ZnMatrix f(n, k, k);
    for (int i = 0; i < k; ++i) f.set(i, i, n / m.chain[i]);
    LinearMap eval = make_map(m, free_module(m.ring, m.side, k, Caps{}), f);
    return sub_cardinality(map_kernel(eval)) == 1;
}

PurityResult is_pure_for(const Submodule& k, const Module& t, const Caps& caps) {
    PurityResult out;
    if (k.ambient.table) throw ContractError("is_pure_for: table purity goes through the alpha layer");
    SubAsModule abs = sub_as_module(k);
    const Module& amb = k.ambient;
    TensorModule tk, tl;
    LinearMap induced = [&] {
        if (amb.side == Side::left) {
            tk = tensor_module(t, abs.module, caps);
            tl = tensor_module(t, amb, caps);
            return tensor_map_right(abs.incl, tk, tl);
        }
        tk = tensor_module(abs.module, t, caps);
        tl = tensor_module(amb, t, caps);
        return tensor_map_left(abs.incl, tk, tl);
    }();
    Submodule ker = map_kernel(induced);
    if (sub_cardinality(ker) != 1) {
        out.pure = false;
        out.witness = json{{"test_module_chain", t.chain},
                           {"element", sub_generators(ker)[0]},
                           {"element_pretty", pretty_tensor_elem(tk, sub_generators(ker)[0])}};
        return out;
    }
    out.pure = true;
    return out;
}

PurityResult is_pure_submodule(const Submodule& k, const Caps& caps) {
    PurityResult out;
    if (k.ambient.table)
        throw ContractError("is_pure_submodule: table purity goes through the alpha layer");
    i64 n = k.ambient.ring->n;
    for (i64 d : divisors(n)) {
        if (d == 1) continue;
        Module t = cyclic_module(k.ambient.ring, opposite(k.ambient.side), d);
        PurityResult r = is_pure_for(k, t, caps);
        if (!r.pure) return r;
    }
    out.pure = true;
    return out;
}

bool is_r_injective_for(const Module& w, const Caps& caps) {
    if (w.table) throw ContractError("is_r_injective_for: Z/n backend only");
    HomModule dual_w = dual_module(w);
    for (const auto& k : all_submodules(w, caps)) {
        SubAsModule abs = sub_as_module(k);
        HomModule dual_k = dual_module(abs.module);
        int s = dual_w.hom.gens();
        ZnMatrix mat(w.ring->n, s, dual_k.hom.gens());
        for (int i = 0; i < s; ++i) {
            Elem h = zero_elem(dual_w.hom);
            h[i] = 1;
            Elem img = dual_k.from_map(compose(abs.incl, dual_w.as_map(h)));
            for (int j = 0; j < dual_k.hom.gens(); ++j) mat.set(i, j, img[j]);
        }
        LinearMap restrict = make_map(dual_w.hom, dual_k.hom, mat);
        if (!map_is_surjective(restrict)) return false;
    }
    return true;
}

std::vector<Module> simple_modules(const Ring& r, const Caps& caps) {
    if (r->is_zmod()) {
        std::vector<Module> out;
        i64 n = r->n;
        for (i64 p = 2; p <= n; ++p) {
            if (n % p != 0) continue;
            bool prime = true;
            for (i64 q = 2; q * q <= p; ++q)
                if (p % q == 0) prime = false;
            if (prime) out.push_back(cyclic_module(r, Side::right, p));
        }
        return out;
    }
    return detail::table_simple_modules(r, caps);
}

}  // namespace pairlab
