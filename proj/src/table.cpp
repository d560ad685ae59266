#include <algorithm>
#include <set>

#include "pairlab/modules.hpp"

namespace pairlab {
namespace detail {

namespace {

Elem vec_add(const Ring& r, const Elem& a, const Elem& b) {
    Elem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = r->add(a[i], b[i]);
    return out;
}

Elem vec_scale(const Ring& r, Side side, i64 c, const Elem& a) {
    Elem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = side == Side::left ? r->mul(c, a[i]) : r->mul(a[i], c);
    return out;
}

// Closure of `gens` inside R^rank under addition and one-sided ring action.
std::set<Elem> span_vectors(const Ring& r, Side side, int rank, const std::vector<Elem>& gens) {
    std::set<Elem> s;
    Elem zero(rank, r->zero_elem());
    s.insert(zero);
    std::vector<Elem> queue;
    for (const auto& g : gens)
        for (i64 c = 0; c < r->order(); ++c) {
            Elem x = vec_scale(r, side, c, g);
            if (s.insert(x).second) queue.push_back(x);
        }
    for (size_t q = 0; q < queue.size(); ++q) {
        Elem cur = queue[q];
        std::vector<Elem> snapshot(s.begin(), s.end());
        for (const auto& y : snapshot) {
            Elem x = vec_add(r, cur, y);
            if (s.insert(x).second) queue.push_back(x);
        }
    }
    return s;
}

std::vector<Elem> all_vectors(const Ring& r, int rank) {
    std::vector<Elem> out;
    Elem cur(rank, 0);
    while (true) {
        out.push_back(cur);
        int k = rank - 1;
        while (k >= 0 && ++cur[k] == r->order()) cur[k--] = 0;
        if (k < 0) break;
    }
    return out;
}

}  // namespace

Module table_fp_module(const Ring& r, Side side, int rank,
                       const std::vector<std::vector<i64>>& rel_rows, const Caps& caps) {
    if (r->is_zmod()) throw ContractError("table_fp_module: table backend only");
    double total = 1;
    for (int i = 0; i < rank; ++i) total *= static_cast<double>(r->order());
    if (total > static_cast<double>(caps.elements))
        throw CapError("table module: |R|^rank exceeds the element cap");
    auto data = std::make_shared<TableModuleData>();
    data->ring = r;
    data->side = side;
    data->rank = rank;
    std::vector<Elem> gens;
    for (const auto& row : rel_rows) {
        if (static_cast<int>(row.size()) != rank)
            throw ContractError("table module: relation width mismatch");
        for (i64 e : row)
            if (e < 0 || e >= r->order()) throw ContractError("table module: relation entry out of range");
        gens.push_back(row);
    }
    auto span = span_vectors(r, side, rank, gens);
    data->rel_span.assign(span.begin(), span.end());
    // cosets in lex order; the first unassigned vector of a coset is its
    // lex-least member, hence the canonical representative
    for (const auto& v : all_vectors(r, rank)) {
        if (data->coset_index.count(v)) continue;
        int idx = static_cast<int>(data->reps.size());
        data->reps.push_back(v);
        for (const auto& s : data->rel_span) data->coset_index[vec_add(r, v, s)] = idx;
    }
    Module m;
    m.ring = r;
    m.side = side;
    m.table = data;
    return m;
}

Elem table_canon(const Module& m, const Elem& raw) {
    auto it = m.table->coset_index.find(raw);
    if (it == m.table->coset_index.end()) throw ContractError("table_canon: vector out of range");
    return m.table->reps[it->second];
}

Elem table_elem_add(const Module& m, const Elem& a, const Elem& b) {
    return table_canon(m, vec_add(m.ring, a, b));
}

Elem table_elem_neg(const Module& m, const Elem& a) {
    Elem out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = m.ring->neg(a[i]);
    return table_canon(m, out);
}

Elem table_elem_scale(const Module& m, i64 r, const Elem& a) {
    return table_canon(m, vec_scale(m.ring, m.side, r, a));
}

std::vector<Elem> table_sub_span(const Module& m, const std::vector<Elem>& gens) {
    std::set<Elem> s;
    s.insert(zero_elem(m));
    std::vector<Elem> queue;
    for (const auto& g : gens)
        for (i64 c = 0; c < m.ring->order(); ++c) {
            Elem x = table_elem_scale(m, c, canon_elem(m, g));
            if (s.insert(x).second) queue.push_back(x);
        }
    for (size_t q = 0; q < queue.size(); ++q) {
        Elem cur = queue[q];
        std::vector<Elem> snapshot(s.begin(), s.end());
        for (const auto& y : snapshot) {
            Elem x = table_elem_add(m, cur, y);
            if (s.insert(x).second) queue.push_back(x);
        }
    }
    return std::vector<Elem>(s.begin(), s.end());
}

json table_describe(const Module& m) {
    // greedy generators of the relation span keep descriptors small
    std::vector<Elem> gens;
    std::set<Elem> have = span_vectors(m.ring, m.side, m.table->rank, gens);
    for (const auto& v : m.table->rel_span) {
        if (have.count(v)) continue;
        gens.push_back(v);
        have = span_vectors(m.ring, m.side, m.table->rank, gens);
    }
    json rel(json::array());
    for (const auto& g : gens) rel.push_back(g);
    return json{{"side", side_name(m.side)},
                {"gens", m.table->rank},
                {"relations", rel},
                {"backend", "table"},
                {"cardinality", m.cardinality()}};
}

std::vector<Module> table_simple_modules(const Ring& r, const Caps& caps) {
    auto ideals = right_ideals(r, caps);
    std::vector<Module> quotients;
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
        std::vector<std::vector<i64>> rows;
        for (i64 e : ideal.elems) rows.push_back({e});
        quotients.push_back(table_fp_module(r, Side::right, 1, rows, caps));
    }
    // deduplicate isomorphism classes: R/I ≅ R/J iff some c gives a bijective map
    std::vector<Module> out;
    for (const auto& cand : quotients) {
        bool dup = false;
        for (const auto& kept : out) {
            if (cand.cardinality() != kept.cardinality()) continue;
            Elem kept_zero = table_canon(kept, Elem{r->zero_elem()});
            for (i64 c = 0; c < r->order() && !dup; ++c) {
                // well-defined: c * rel_span(cand) lands in rel_span(kept)
                bool welldef = true;
                for (const auto& s : cand.table->rel_span)
                    if (table_canon(kept, Elem{r->mul(c, s[0])}) != kept_zero) {
                        welldef = false;
                        break;
                    }
                if (!welldef) continue;
                std::set<Elem> image;
                for (const auto& x : cand.table->reps) image.insert(table_canon(kept, Elem{r->mul(c, x[0])}));
                dup = static_cast<i64>(image.size()) == cand.cardinality();
            }
            if (dup) break;
        }
        if (!dup) out.push_back(cand);
    }
    return out;
}

}  // namespace detail

// ---- additive-group tensor for the table backend ----------------------------------

int TableTensor::pure(const Elem& a, const Elem& b) const {
    Elem bc = canon_elem(n, b);
    std::vector<Elem> tuple;
    tuple.reserve(bc.size());
    for (i64 rj : bc) tuple.push_back(elem_scale(m, rj, canon_elem(m, a)));
    return index.at(tuple);
}

int TableTensor::add(int x, int y) const {
    const auto& a = elems[x];
    const auto& b = elems[y];
    std::vector<Elem> tuple(a.size());
    for (size_t i = 0; i < a.size(); ++i) tuple[i] = elem_add(m, a[i], b[i]);
    return index.at(tuple);
}

TableTensor table_tensor(const Module& m, const Module& n, const Caps& caps) {
    if (!m.table || !n.table || !same_ring(m.ring, n.ring))
        throw ContractError("table_tensor: table backend, same ring required");
    if (m.side != Side::right || n.side != Side::left)
        throw ContractError("table_tensor: needs a right and a left module");
    int l = n.table->rank;
    double total = 1;
    for (int i = 0; i < l; ++i) total *= static_cast<double>(m.cardinality());
    if (total > static_cast<double>(caps.tensor)) throw CapError("table_tensor: carrier exceeds cap");

    TableTensor out;
    out.m = m;
    out.n = n;
    // relation subgroup D of M^l generated by (m*b_1, ..., m*b_l)
    std::set<std::vector<Elem>> d;
    std::vector<Elem> dzero(l, zero_elem(m));
    d.insert(dzero);
    std::vector<std::vector<Elem>> queue;
    for (const auto& mm : m.table->reps)
        for (const auto& b : n.table->rel_span) {
            std::vector<Elem> t(l);
            for (int j = 0; j < l; ++j) t[j] = elem_scale(m, b[j], mm);
            if (d.insert(t).second) queue.push_back(t);
        }
    for (size_t q = 0; q < queue.size(); ++q) {
        auto cur = queue[q];
        std::vector<std::vector<Elem>> snapshot(d.begin(), d.end());
        for (const auto& y : snapshot) {
            std::vector<Elem> t(l);
            for (int j = 0; j < l; ++j) t[j] = elem_add(m, cur[j], y[j]);
            if (d.insert(t).second) queue.push_back(t);
        }
    }
    // enumerate M^l in lex order and split into cosets
    std::vector<std::vector<Elem>> all;
    {
        std::vector<int> idx(l, 0);
        while (true) {
            std::vector<Elem> t(l);
            for (int j = 0; j < l; ++j) t[j] = m.table->reps[idx[j]];
            all.push_back(t);
            int k = l - 1;
            while (k >= 0 && ++idx[k] == static_cast<int>(m.table->reps.size())) idx[k--] = 0;
            if (k < 0) break;
        }
    }
    for (const auto& t : all) {
        if (out.index.count(t)) continue;
        int id = static_cast<int>(out.elems.size());
        out.elems.push_back(t);
        for (const auto& s : d) {
            std::vector<Elem> u(l);
            for (int j = 0; j < l; ++j) u[j] = elem_add(m, t[j], s[j]);
            out.index[u] = id;
        }
    }
    out.zero_id = out.index.at(dzero);
    return out;
}

}  // namespace pairlab
