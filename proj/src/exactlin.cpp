#include "pairlab/exactlin.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pairlab {

ZnMatrix::ZnMatrix(i64 modulus, int rows, int cols)
    : modulus_(modulus), rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, 0) {
    if (modulus < 2) throw ContractError("ZnMatrix: modulus must be >= 2");
    if (rows < 0 || cols < 0) throw ContractError("ZnMatrix: negative dimension");
}

ZnMatrix ZnMatrix::from_rows(i64 modulus, const std::vector<std::vector<i64>>& rows, int cols) {
    ZnMatrix m(modulus, 0, cols);
    for (const auto& r : rows) m.append_row(r);
    return m;
}

ZnMatrix ZnMatrix::from_rows(i64 modulus, const std::vector<std::vector<i64>>& rows) {
    if (rows.empty()) throw ContractError("ZnMatrix::from_rows: cannot infer width from no rows");
    return from_rows(modulus, rows, static_cast<int>(rows[0].size()));
}

ZnMatrix ZnMatrix::identity(i64 modulus, int k) {
    ZnMatrix m(modulus, k, k);
    for (int i = 0; i < k; ++i) m.set(i, i, 1);
    return m;
}

ZnMatrix ZnMatrix::diagonal(i64 modulus, const std::vector<i64>& d) {
    int k = static_cast<int>(d.size());
    ZnMatrix m(modulus, k, k);
    for (int i = 0; i < k; ++i) m.set(i, i, d[i]);
    return m;
}

void ZnMatrix::set(int r, int c, i64 v) { e_[static_cast<size_t>(r) * cols_ + c] = mod_reduce(v, modulus_); }

std::vector<i64> ZnMatrix::row(int r) const {
    return std::vector<i64>(e_.begin() + static_cast<size_t>(r) * cols_,
                            e_.begin() + static_cast<size_t>(r + 1) * cols_);
}

void ZnMatrix::append_row(const std::vector<i64>& v) {
    if (static_cast<int>(v.size()) != cols_) throw ContractError("ZnMatrix::append_row: width mismatch");
    for (i64 x : v) e_.push_back(mod_reduce(x, modulus_));
    ++rows_;
}

bool ZnMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](i64 x) { return x == 0; });
}

std::string ZnMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        os << "]";
    }
    os << "] mod " << modulus_;
    return os.str();
}

ZnMatrix vstack(const ZnMatrix& top, const ZnMatrix& bottom) {
    if (top.cols() != bottom.cols() || top.modulus() != bottom.modulus())
        throw ContractError("vstack: shape mismatch");
    ZnMatrix m(top.modulus(), 0, top.cols());
    for (int i = 0; i < top.rows(); ++i) m.append_row(top.row(i));
    for (int i = 0; i < bottom.rows(); ++i) m.append_row(bottom.row(i));
    return m;
}

ZnMatrix hstack(const ZnMatrix& left, const ZnMatrix& right) {
    if (left.rows() != right.rows() || left.modulus() != right.modulus())
        throw ContractError("hstack: shape mismatch");
    ZnMatrix m(left.modulus(), left.rows(), left.cols() + right.cols());
    for (int i = 0; i < left.rows(); ++i) {
        for (int j = 0; j < left.cols(); ++j) m.set(i, j, left.at(i, j));
        for (int j = 0; j < right.cols(); ++j) m.set(i, left.cols() + j, right.at(i, j));
    }
    return m;
}

std::vector<i64> row_times_matrix(const std::vector<i64>& x, const ZnMatrix& a) {
    if (static_cast<int>(x.size()) != a.rows()) throw ContractError("row_times_matrix: shape mismatch");
    std::vector<i64> y(a.cols(), 0);
    i64 n = a.modulus();
    for (int i = 0; i < a.rows(); ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < a.cols(); ++j) y[j] = mod_reduce(y[j] + x[i] * a.at(i, j), n);
    }
    return y;
}

ZnMatrix mat_mul(const ZnMatrix& a, const ZnMatrix& b) {
    if (a.cols() != b.rows() || a.modulus() != b.modulus()) throw ContractError("mat_mul: shape mismatch");
    ZnMatrix m(a.modulus(), a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        auto y = row_times_matrix(a.row(i), b);
        for (int j = 0; j < b.cols(); ++j) m.set(i, j, y[j]);
    }
    return m;
}

namespace {

int pivot_col(const std::vector<i64>& r) {
    for (size_t j = 0; j < r.size(); ++j)
        if (r[j] != 0) return static_cast<int>(j);
    return -1;
}

// In-place echelon form: pivots are canonical divisors of n, entries above a
// pivot are reduced modulo it, zero rows are dropped. Row span is preserved.
void echelonize(std::vector<std::vector<i64>>& rows, i64 n, int cols) {
    size_t p = 0;
    for (int col = 0; col < cols && p < rows.size(); ++col) {
        size_t piv = rows.size();
        for (size_t i = p; i < rows.size(); ++i)
            if (rows[i][col] != 0) {
                piv = i;
                break;
            }
        if (piv == rows.size()) continue;
        for (size_t k = piv + 1; k < rows.size(); ++k) {
            if (rows[k][col] == 0) continue;
            i64 a = rows[piv][col], b = rows[k][col];
            XGcd x = xgcd(a, b);
            // [u v; -b/g a/g] is unimodular over Z, so the span is unchanged
            for (int j = 0; j < cols; ++j) {
                i64 ra = rows[piv][j], rb = rows[k][j];
                rows[piv][j] = mod_reduce(mod_reduce(x.u * ra, n) + mod_reduce(x.v * rb, n), n);
                rows[k][j] = mod_reduce(mod_reduce(-(b / x.g) * ra, n) + mod_reduce((a / x.g) * rb, n), n);
            }
        }
        std::swap(rows[p], rows[piv]);
        i64 d = gcd_ll(rows[p][col], n);
        i64 u = associate_unit(rows[p][col], n);
        if (u != 1)
            for (int j = 0; j < cols; ++j) rows[p][j] = mul_mod(u, rows[p][j], n);
        for (size_t q = 0; q < p; ++q) {
            i64 t = rows[q][col] / d;
            if (t)
                for (int j = 0; j < cols; ++j) rows[q][j] = mod_reduce(rows[q][j] - t * rows[p][j], n);
        }
        ++p;
    }
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<i64>& r) { return pivot_col(r) < 0; }),
               rows.end());
}

void reduce_row(const std::vector<std::vector<i64>>& rows, std::vector<i64>& v, i64 n) {
    for (const auto& r : rows) {
        int pc = pivot_col(r);
        if (pc < 0) continue;
        i64 t = v[pc] / r[pc];
        if (t)
            for (size_t j = 0; j < v.size(); ++j) v[j] = mod_reduce(v[j] - t * r[j], n);
    }
}

}  // namespace

ZnMatrix howell_form(const ZnMatrix& a) {
    i64 n = a.modulus();
    int cols = a.cols();
    std::vector<std::vector<i64>> rows;
    for (int i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        if (pivot_col(r) >= 0) rows.push_back(std::move(r));
    }
    echelonize(rows, n, cols);
    // Saturation: the annihilator multiple of every row must already lie in the
    // syntactic span; append what is missing until stable.
    while (true) {
        bool added = false;
        size_t count = rows.size();
        for (size_t i = 0; i < count; ++i) {
            int pc = pivot_col(rows[i]);
            i64 d = rows[i][pc];
            i64 mult = n / d;
            std::vector<i64> t(cols);
            for (int j = 0; j < cols; ++j) t[j] = mul_mod(mult, rows[i][j], n);
            reduce_row(rows, t, n);
            if (pivot_col(t) >= 0) {
                rows.push_back(std::move(t));
                added = true;
            }
        }
        if (!added) break;
        echelonize(rows, n, cols);
    }
    return ZnMatrix::from_rows(n, rows, cols);
}

std::vector<i64> howell_reduce(const ZnMatrix& h, std::vector<i64> v) {
    if (static_cast<int>(v.size()) != h.cols()) throw ContractError("howell_reduce: width mismatch");
    i64 n = h.modulus();
    for (auto& x : v) x = mod_reduce(x, n);
    for (int i = 0; i < h.rows(); ++i) {
        auto r = h.row(i);
        int pc = pivot_col(r);
        if (pc < 0) continue;
        i64 t = v[pc] / r[pc];
        if (t)
            for (size_t j = 0; j < v.size(); ++j) v[j] = mod_reduce(v[j] - t * r[j], n);
    }
    return v;
}

bool in_span(const ZnMatrix& h, const std::vector<i64>& v) {
    auto r = howell_reduce(h, v);
    return std::all_of(r.begin(), r.end(), [](i64 x) { return x == 0; });
}

i64 span_size(const ZnMatrix& h) {
    i64 n = h.modulus();
    i64 size = 1;
    for (int i = 0; i < h.rows(); ++i) {
        auto r = h.row(i);
        int pc = pivot_col(r);
        if (pc >= 0) size = mul_sat(size, n / r[pc]);
    }
    return size;
}

ZnMatrix kernel(const ZnMatrix& a) {
    i64 n = a.modulus();
    int r = a.rows();
    if (r == 0) return ZnMatrix(n, 0, 0);
    ZnMatrix aug = hstack(a, ZnMatrix::identity(n, r));
    ZnMatrix h = howell_form(aug);
    ZnMatrix ker(n, 0, r);
    for (int i = 0; i < h.rows(); ++i) {
        bool lhs_zero = true;
        for (int j = 0; j < a.cols() && lhs_zero; ++j) lhs_zero = h.at(i, j) == 0;
        if (!lhs_zero) continue;
        std::vector<i64> tail(r);
        for (int j = 0; j < r; ++j) tail[j] = h.at(i, a.cols() + j);
        ker.append_row(tail);
    }
    return ker;
}

SolveResult solve(const ZnMatrix& a, const std::vector<i64>& b) {
    if (static_cast<int>(b.size()) != a.cols()) throw ContractError("solve: b width mismatch");
    i64 n = a.modulus();
    int r = a.rows(), c = a.cols();
    SolveResult out;
    if (r == 0) {
        bool zero = std::all_of(b.begin(), b.end(), [n](i64 x) { return mod_reduce(x, n) == 0; });
        out.solvable = zero;
        out.homogeneous = ZnMatrix(n, 0, 0);
        return out;
    }
    ZnMatrix h = howell_form(hstack(a, ZnMatrix::identity(n, r)));
    std::vector<i64> res(c + r, 0);
    for (int j = 0; j < c; ++j) res[j] = mod_reduce(b[j], n);
    for (int i = 0; i < h.rows(); ++i) {
        auto row = h.row(i);
        int pc = pivot_col(row);
        if (pc < 0 || pc >= c) continue;
        i64 t = res[pc] / row[pc];
        if (t)
            for (int j = 0; j < c + r; ++j) res[j] = mod_reduce(res[j] - t * row[j], n);
    }
    for (int j = 0; j < c; ++j)
        if (res[j] != 0) {
            out.solvable = false;
            out.homogeneous = kernel(a);
            return out;
        }
    out.solvable = true;
    out.particular.resize(r);
    for (int j = 0; j < r; ++j) out.particular[j] = mod_reduce(-res[c + j], n);
    out.homogeneous = kernel(a);
    return out;
}

// ---- integer Smith normal form ------------------------------------------------

namespace {

i64 checked_mul(i64 a, i64 b) {
    __int128 p = static_cast<__int128>(a) * b;
    if (p > INT64_MAX || p < INT64_MIN) throw InternalCheckError("integer overflow in Smith reduction");
    return static_cast<i64>(p);
}

struct SnfState {
    std::vector<std::vector<i64>> m;  // rows x cols
    std::vector<std::vector<i64>> v, vinv;  // cols x cols, with m_orig * v ~ diagonal
    int rows, cols;

    void row_sub(int i, int t, i64 q) {
        for (int j = 0; j < cols; ++j) m[i][j] -= checked_mul(q, m[t][j]);
    }
    void row_add(int t, int i) {
        for (int j = 0; j < cols; ++j) m[t][j] += m[i][j];
    }
    void swap_rows(int i, int k) { std::swap(m[i], m[k]); }
    void col_sub(int j, int t, i64 q) {
        for (int i = 0; i < rows; ++i) m[i][j] -= checked_mul(q, m[i][t]);
        for (int i = 0; i < cols; ++i) v[i][j] -= checked_mul(q, v[i][t]);
        for (int b = 0; b < cols; ++b) vinv[t][b] += checked_mul(q, vinv[j][b]);
    }
    void swap_cols(int j, int t) {
        for (int i = 0; i < rows; ++i) std::swap(m[i][j], m[i][t]);
        for (int i = 0; i < cols; ++i) std::swap(v[i][j], v[i][t]);
        std::swap(vinv[j], vinv[t]);
    }
    void negate_row(int t) {
        for (int j = 0; j < cols; ++j) m[t][j] = -m[t][j];
    }
};

void smith_reduce(SnfState& s) {
    int t = 0;
    while (t < s.rows && t < s.cols) {
        // deterministic pivot: smallest nonzero |value|, ties by (row, col)
        int pi = -1, pj = -1;
        i64 best = 0;
        for (int i = t; i < s.rows; ++i)
            for (int j = t; j < s.cols; ++j) {
                i64 a = s.m[i][j] < 0 ? -s.m[i][j] : s.m[i][j];
                if (a != 0 && (best == 0 || a < best)) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break;
        s.swap_rows(t, pi);
        s.swap_cols(pj, t);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (int i = t + 1; i < s.rows; ++i)
                while (s.m[i][t] != 0) {
                    i64 q = s.m[i][t] / s.m[t][t];
                    s.row_sub(i, t, q);
                    if (s.m[i][t] != 0) {
                        s.swap_rows(i, t);
                        clean = false;
                    }
                }
            for (int j = t + 1; j < s.cols; ++j)
                while (s.m[t][j] != 0) {
                    i64 q = s.m[t][j] / s.m[t][t];
                    s.col_sub(j, t, q);
                    if (s.m[t][j] != 0) {
                        s.swap_cols(j, t);
                        clean = false;
                    }
                }
        }
        // divisibility of the trailing block by the pivot
        bool divides = true;
        for (int i = t + 1; i < s.rows && divides; ++i)
            for (int j = t + 1; j < s.cols && divides; ++j)
                if (s.m[i][j] % s.m[t][t] != 0) {
                    s.row_add(t, i);
                    divides = false;
                }
        if (!divides) continue;
        if (s.m[t][t] < 0) s.negate_row(t);
        ++t;
    }
}

}  // namespace

CokerForm coker_form(const ZnMatrix& relations, int generators) {
    i64 n = relations.modulus();
    if (relations.cols() != generators)
        throw ContractError("coker_form: relation width must equal generator count");
    int g = generators;
    SnfState s;
    s.rows = relations.rows() + g;
    s.cols = g;
    s.m.assign(s.rows, std::vector<i64>(g, 0));
    for (int i = 0; i < relations.rows(); ++i)
        for (int j = 0; j < g; ++j) s.m[i][j] = relations.at(i, j);
    for (int j = 0; j < g; ++j) s.m[relations.rows() + j][j] = n;
    s.v.assign(g, std::vector<i64>(g, 0));
    s.vinv.assign(g, std::vector<i64>(g, 0));
    for (int j = 0; j < g; ++j) s.v[j][j] = s.vinv[j][j] = 1;
    smith_reduce(s);

    CokerForm out;
    std::vector<int> kept;
    for (int j = 0; j < g; ++j) {
        i64 d = s.m[j][j];
        if (d <= 0 || n % d != 0)
            throw InternalCheckError("coker_form: Smith diagonal is not a divisor chain of n");
        if (d > 1) {
            out.chain.push_back(d);
            kept.push_back(j);
        }
    }
    int k = static_cast<int>(kept.size());
    out.to_canonical = ZnMatrix(n, g, k);
    out.from_canonical = ZnMatrix(n, k, g);
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < k; ++j) out.to_canonical.set(i, j, mod_reduce(s.v[i][kept[j]], n));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < g; ++j) out.from_canonical.set(i, j, mod_reduce(s.vinv[kept[i]][j], n));
    return out;
}

std::vector<i64> invariant_factors(const ZnMatrix& a) { return coker_form(a, a.cols()).chain; }

std::vector<std::vector<i64>> enumerate_span(const ZnMatrix& a, i64 cap) {
    i64 n = a.modulus();
    std::map<std::vector<i64>, bool> seen;
    std::vector<std::vector<i64>> queue;
    std::vector<i64> zero(a.cols(), 0);
    seen[zero] = true;
    queue.push_back(zero);
    for (size_t q = 0; q < queue.size(); ++q) {
        auto cur = queue[q];
        for (int i = 0; i < a.rows(); ++i) {
            std::vector<i64> next(a.cols());
            for (int j = 0; j < a.cols(); ++j) next[j] = mod_reduce(cur[j] + a.at(i, j), n);
            if (!seen.count(next)) {
                if (static_cast<i64>(seen.size()) >= cap) throw CapError("enumerate_span: cap exceeded");
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    std::vector<std::vector<i64>> out;
    out.reserve(seen.size());
    for (auto& [v, _] : seen) out.push_back(v);
    return out;
}

}  // namespace pairlab
