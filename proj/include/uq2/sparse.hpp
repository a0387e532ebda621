#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "uq2/qparam.hpp"

namespace uq2 {

// Basis vector e_{i,j,k} of l2(N) (x) l2(Z) (x) l2(Z).
struct Site {
    int i = 0;
    int j = 0;
    int k = 0;
    auto operator<=>(const Site&) const = default;
    Site operator+(const Site& o) const { return {i + o.i, j + o.j, k + o.k}; }
    Site operator-(const Site& o) const { return {i - o.i, j - o.j, k - o.k}; }
};

// Sites 0..n_cut-1 on the N leg and -z_cut..z_cut on each Z leg.  The
// interior keeps interior_margin sites away from every truncation cut; the
// edge i = 0 of N is a genuine boundary, not a cut, so it stays interior.
struct TruncGrid {
    int n_cut = 1;
    int z_cut = 1;
    int interior_margin = 0;

    TruncGrid() = default;
    TruncGrid(int n, int z, int margin);

    std::size_t width() const { return static_cast<std::size_t>(2 * z_cut + 1); }
    std::size_t dimension() const { return static_cast<std::size_t>(n_cut) * width() * width(); }
    bool contains(const Site& s) const;
    bool interior(const Site& s) const;
    bool interior(const Site& s, int margin) const;
    std::size_t index(const Site& s) const;
    Site site(std::size_t idx) const;

    bool operator==(const TruncGrid&) const = default;
};

using SparseVector = std::map<std::size_t, cplx>;

struct Triplet {
    std::size_t row;
    std::size_t col;
    cplx value;
};

// Square sparse operator on a TruncGrid, stored by columns (rows sorted
// inside each column).  Built from coordinate triplets; duplicates merge.
class SparseOperator {
public:
    SparseOperator() = default;
    explicit SparseOperator(const TruncGrid& g);
    SparseOperator(const TruncGrid& g, std::vector<Triplet> triplets);

    static SparseOperator identity(const TruncGrid& g);
    static SparseOperator diagonal(const TruncGrid& g, const std::function<cplx(const Site&)>& f);

    const TruncGrid& grid() const { return grid_; }
    std::size_t dimension() const { return grid_.dimension(); }
    std::size_t nnz() const { return values_.size(); }

    // Entries of column c as (row index, value) pairs.
    std::size_t col_begin(std::size_t c) const { return col_ptr_[c]; }
    std::size_t col_end(std::size_t c) const { return col_ptr_[c + 1]; }
    std::size_t row_at(std::size_t p) const { return rows_[p]; }
    cplx value_at(std::size_t p) const { return values_[p]; }
    cplx entry(std::size_t row, std::size_t col) const;

    std::vector<Triplet> triplets() const;

    SparseVector apply(const SparseVector& v) const;
    std::vector<cplx> apply(const std::vector<cplx>& v) const;

    SparseOperator adjoint() const;
    SparseOperator scaled(cplx s) const;

    friend SparseOperator operator*(const SparseOperator& x, const SparseOperator& y);
    friend SparseOperator operator+(const SparseOperator& x, const SparseOperator& y);
    friend SparseOperator operator-(const SparseOperator& x, const SparseOperator& y);

    // Largest |entry| among columns whose site satisfies keep.
    double max_abs_on_columns(const std::function<bool(const Site&)>& keep) const;
    // sqrt(max column 1-norm * max row 1-norm) over the kept columns: an upper
    // bound for the operator norm of the column-restricted operator.
    double schur_norm_on_columns(const std::function<bool(const Site&)>& keep) const;

    double trace_real() const;

private:
    TruncGrid grid_;
    std::vector<std::size_t> col_ptr_;
    std::vector<std::size_t> rows_;
    std::vector<cplx> values_;
};

// max |u_r a_rc conj(u_c) - s a_rc| over the stored entries of a, for a
// diagonal u: the entries of u a u* - s a without forming the products.
double diagonal_conjugation_defect(const SparseOperator& u, const SparseOperator& a, cplx s);

}  // namespace uq2
