#include "uq2/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace uq2 {

TruncGrid::TruncGrid(int n, int z, int margin) : n_cut(n), z_cut(z), interior_margin(margin) {
    if (n < 1 || z < 1) throw std::invalid_argument("grid cuts must be positive");
    if (margin < 0 || margin >= std::min(n, z))
        throw std::invalid_argument("interior margin must lie in [0, min(n_cut, z_cut))");
}

bool TruncGrid::contains(const Site& s) const {
    return s.i >= 0 && s.i < n_cut && std::abs(s.j) <= z_cut && std::abs(s.k) <= z_cut;
}

bool TruncGrid::interior(const Site& s) const { return interior(s, interior_margin); }

bool TruncGrid::interior(const Site& s, int margin) const {
    return s.i >= 0 && s.i <= n_cut - 1 - margin && std::abs(s.j) <= z_cut - margin &&
           std::abs(s.k) <= z_cut - margin;
}

std::size_t TruncGrid::index(const Site& s) const {
    const std::size_t w = width();
    return (static_cast<std::size_t>(s.i) * w + static_cast<std::size_t>(s.j + z_cut)) * w +
           static_cast<std::size_t>(s.k + z_cut);
}

Site TruncGrid::site(std::size_t idx) const {
    const std::size_t w = width();
    Site s;
    s.k = static_cast<int>(idx % w) - z_cut;
    idx /= w;
    s.j = static_cast<int>(idx % w) - z_cut;
    s.i = static_cast<int>(idx / w);
    return s;
}

SparseOperator::SparseOperator(const TruncGrid& g) : grid_(g), col_ptr_(g.dimension() + 1, 0) {}

SparseOperator::SparseOperator(const TruncGrid& g, std::vector<Triplet> triplets) : grid_(g) {
    const std::size_t dim = g.dimension();
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& x, const Triplet& y) {
        return x.col != y.col ? x.col < y.col : x.row < y.row;
    });
    col_ptr_.assign(dim + 1, 0);
    rows_.reserve(triplets.size());
    values_.reserve(triplets.size());
    std::size_t t = 0;
    for (std::size_t c = 0; c < dim; ++c) {
        col_ptr_[c] = rows_.size();
        while (t < triplets.size() && triplets[t].col == c) {
            if (triplets[t].row >= dim) throw std::out_of_range("triplet row outside grid");
            std::size_t r = triplets[t].row;
            cplx v = 0;
            while (t < triplets.size() && triplets[t].col == c && triplets[t].row == r) v += triplets[t++].value;
            if (v != cplx{}) {
                rows_.push_back(r);
                values_.push_back(v);
            }
        }
    }
    if (t != triplets.size()) throw std::out_of_range("triplet column outside grid");
    col_ptr_[dim] = rows_.size();
}

SparseOperator SparseOperator::identity(const TruncGrid& g) {
    return diagonal(g, [](const Site&) { return cplx{1.0}; });
}

SparseOperator SparseOperator::diagonal(const TruncGrid& g, const std::function<cplx(const Site&)>& f) {
    std::vector<Triplet> t;
    t.reserve(g.dimension());
    for (std::size_t c = 0; c < g.dimension(); ++c) t.push_back({c, c, f(g.site(c))});
    return SparseOperator(g, std::move(t));
}

cplx SparseOperator::entry(std::size_t row, std::size_t col) const {
    auto b = rows_.begin() + static_cast<long>(col_ptr_[col]);
    auto e = rows_.begin() + static_cast<long>(col_ptr_[col + 1]);
    auto it = std::lower_bound(b, e, row);
    if (it == e || *it != row) return {};
    return values_[static_cast<std::size_t>(it - rows_.begin())];
}

std::vector<Triplet> SparseOperator::triplets() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t c = 0; c + 1 < col_ptr_.size(); ++c)
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) t.push_back({rows_[p], c, values_[p]});
    return t;
}

SparseVector SparseOperator::apply(const SparseVector& v) const {
    SparseVector out;
    for (const auto& [c, x] : v)
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) out[rows_[p]] += values_[p] * x;
    return out;
}

std::vector<cplx> SparseOperator::apply(const std::vector<cplx>& v) const {
    if (v.size() != dimension()) throw std::invalid_argument("vector size does not match grid");
    std::vector<cplx> out(v.size());
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] == cplx{}) continue;
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) out[rows_[p]] += values_[p] * v[c];
    }
    return out;
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (std::size_t c = 0; c + 1 < col_ptr_.size(); ++c)
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) t.push_back({c, rows_[p], std::conj(values_[p])});
    return SparseOperator(grid_, std::move(t));
}

SparseOperator SparseOperator::scaled(cplx s) const {
    SparseOperator out = *this;
    for (auto& v : out.values_) v *= s;
    return out;
}

SparseOperator operator*(const SparseOperator& x, const SparseOperator& y) {
    if (!(x.grid_ == y.grid_)) throw std::invalid_argument("operator grids differ");
    const std::size_t dim = x.dimension();
    SparseOperator out(x.grid_);
    std::vector<cplx> acc(dim);
    std::vector<char> used(dim, 0);
    std::vector<std::size_t> touched;
    for (std::size_t c = 0; c < dim; ++c) {
        out.col_ptr_[c] = out.rows_.size();
        touched.clear();
        for (std::size_t p = y.col_ptr_[c]; p < y.col_ptr_[c + 1]; ++p) {
            const std::size_t mid = y.rows_[p];
            const cplx yv = y.values_[p];
            for (std::size_t r = x.col_ptr_[mid]; r < x.col_ptr_[mid + 1]; ++r) {
                const std::size_t row = x.rows_[r];
                if (!used[row]) {
                    used[row] = 1;
                    touched.push_back(row);
                }
                acc[row] += x.values_[r] * yv;
            }
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t row : touched) {
            if (acc[row] != cplx{}) {
                out.rows_.push_back(row);
                out.values_.push_back(acc[row]);
            }
            acc[row] = 0;
            used[row] = 0;
        }
    }
    out.col_ptr_[dim] = out.rows_.size();
    return out;
}

namespace {

SparseOperator combine(const SparseOperator& x, const SparseOperator& y, double sign) {
    if (!(x.grid() == y.grid())) throw std::invalid_argument("operator grids differ");
    std::vector<Triplet> t = x.triplets();
    for (const auto& e : y.triplets()) t.push_back({e.row, e.col, sign * e.value});
    return SparseOperator(x.grid(), std::move(t));
}

}  // namespace

SparseOperator operator+(const SparseOperator& x, const SparseOperator& y) { return combine(x, y, 1.0); }
SparseOperator operator-(const SparseOperator& x, const SparseOperator& y) { return combine(x, y, -1.0); }

double SparseOperator::max_abs_on_columns(const std::function<bool(const Site&)>& keep) const {
    double m = 0;
    for (std::size_t c = 0; c + 1 < col_ptr_.size(); ++c) {
        if (!keep(grid_.site(c))) continue;
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) m = std::max(m, std::abs(values_[p]));
    }
    return m;
}

double SparseOperator::schur_norm_on_columns(const std::function<bool(const Site&)>& keep) const {
    double max_col = 0;
    std::vector<double> row_sum(dimension(), 0.0);
    for (std::size_t c = 0; c + 1 < col_ptr_.size(); ++c) {
        if (!keep(grid_.site(c))) continue;
        double s = 0;
        for (std::size_t p = col_ptr_[c]; p < col_ptr_[c + 1]; ++p) {
            s += std::abs(values_[p]);
            row_sum[rows_[p]] += std::abs(values_[p]);
        }
        max_col = std::max(max_col, s);
    }
    double max_row = 0;
    for (double r : row_sum) max_row = std::max(max_row, r);
    return std::sqrt(max_col * max_row);
}

double SparseOperator::trace_real() const {
    double s = 0;
    for (std::size_t c = 0; c + 1 < col_ptr_.size(); ++c) s += entry(c, c).real();
    return s;
}

double diagonal_conjugation_defect(const SparseOperator& u, const SparseOperator& a, cplx s) {
    if (!(u.grid() == a.grid())) throw std::invalid_argument("operators live on different grids");
    const std::size_t n = u.dimension();
    std::vector<cplx> d(n);
    for (std::size_t c = 0; c < n; ++c) {
        if (u.col_end(c) - u.col_begin(c) > 1 || (u.col_end(c) > u.col_begin(c) && u.row_at(u.col_begin(c)) != c))
            throw std::invalid_argument("conjugating operator is not diagonal");
        d[c] = u.entry(c, c);
    }
    double worst = 0;
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t p = a.col_begin(c); p < a.col_end(c); ++p) {
            const std::size_t r = a.row_at(p);
            const cplx v = a.value_at(p);
            worst = std::max(worst, std::abs(d[r] * v * std::conj(d[c]) - s * v));
        }
    return worst;
}

}  // namespace uq2
