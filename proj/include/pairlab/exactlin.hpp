#pragma once

#include <string>
#include <vector>

#include "pairlab/common.hpp"

namespace pairlab {

// Dense matrix over Z/nZ. Entries are kept reduced to [0, n).
class ZnMatrix {
  public:
    ZnMatrix() = default;
    ZnMatrix(i64 modulus, int rows, int cols);
    static ZnMatrix from_rows(i64 modulus, const std::vector<std::vector<i64>>& rows, int cols);
    static ZnMatrix from_rows(i64 modulus, const std::vector<std::vector<i64>>& rows);
    static ZnMatrix identity(i64 modulus, int k);
    static ZnMatrix diagonal(i64 modulus, const std::vector<i64>& d);

    i64 modulus() const { return modulus_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    i64 at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, i64 v);
    std::vector<i64> row(int r) const;
    void append_row(const std::vector<i64>& v);
    bool is_zero() const;
    bool operator==(const ZnMatrix&) const = default;
    std::string str() const;

  private:
    i64 modulus_ = 0;
    int rows_ = 0, cols_ = 0;
    std::vector<i64> e_;
};

ZnMatrix vstack(const ZnMatrix& top, const ZnMatrix& bottom);
ZnMatrix hstack(const ZnMatrix& left, const ZnMatrix& right);
std::vector<i64> row_times_matrix(const std::vector<i64>& x, const ZnMatrix& a);
ZnMatrix mat_mul(const ZnMatrix& a, const ZnMatrix& b);

// Howell canonical form of the row span: unique per span, pivots are divisors
// of n, entries above a pivot are reduced modulo it, the span is saturated, and
// zero rows are dropped. Echelon forms do not determine spans over Z/n; this
// form does, so span equality is matrix equality.
ZnMatrix howell_form(const ZnMatrix& a);

// Reduce v against a Howell form; v lies in the span iff the result is zero.
std::vector<i64> howell_reduce(const ZnMatrix& h, std::vector<i64> v);
bool in_span(const ZnMatrix& h, const std::vector<i64>& v);

// Number of vectors in the row span of a Howell form.
i64 span_size(const ZnMatrix& h);

// Rows generate {x : x*A = 0}; returned in Howell form.
ZnMatrix kernel(const ZnMatrix& a);

struct SolveResult {
    bool solvable = false;
    std::vector<i64> particular;  // one x with x*A = b
    ZnMatrix homogeneous;         // kernel(A)
};
SolveResult solve(const ZnMatrix& a, const std::vector<i64>& b);

// Invariant factors d_1 | d_2 | ... of coker(A) = (Z/n)^cols / rowspan(A).
// Factors equal to 1 are dropped; free summands appear as factors equal to n.
std::vector<i64> invariant_factors(const ZnMatrix& a);

// Invariant factors together with the coordinate change: canonical coordinates
// are c = x * to_canonical (column j taken mod chain[j]); x = c * from_canonical
// lifts a canonical vector back to presentation coordinates.
struct CokerForm {
    std::vector<i64> chain;
    ZnMatrix to_canonical;    // generators x chain.size(), mod n
    ZnMatrix from_canonical;  // chain.size() x generators, mod n
};
CokerForm coker_form(const ZnMatrix& relations, int generators);

// Full row span as a set (additive closure); throws CapError above `cap`.
std::vector<std::vector<i64>> enumerate_span(const ZnMatrix& a, i64 cap);

}  // namespace pairlab
