#include "uq2/ncindex.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "uq2/dirac.hpp"

namespace uq2 {

namespace {

using Column = std::vector<std::pair<std::size_t, cplx>>;

// Dense scatter buffer for sparse column arithmetic; reset is proportional to
// the number of touched rows, not the dimension.
class Accumulator {
public:
    explicit Accumulator(std::size_t dim) : val_(dim), mark_(dim, 0) {}

    void add(std::size_t r, cplx v) {
        if (!mark_[r]) {
            mark_[r] = 1;
            touched_.push_back(r);
            val_[r] = v;
        } else {
            val_[r] += v;
        }
    }

    Column take() {
        std::sort(touched_.begin(), touched_.end());
        Column out;
        out.reserve(touched_.size());
        for (std::size_t r : touched_) {
            if (val_[r] != cplx{}) out.emplace_back(r, val_[r]);
            mark_[r] = 0;
        }
        touched_.clear();
        return out;
    }

private:
    std::vector<cplx> val_;
    std::vector<char> mark_;
    std::vector<std::size_t> touched_;
};

Column column_of(const SparseOperator& op, std::size_t c) {
    Column out;
    for (std::size_t p = op.col_begin(c); p < op.col_end(c); ++p) out.emplace_back(op.row_at(p), op.value_at(p));
    return out;
}

Column apply_to(const SparseOperator& op, const Column& v, Accumulator& acc) {
    for (const auto& [r, x] : v)
        for (std::size_t p = op.col_begin(r); p < op.col_end(r); ++p) acc.add(op.row_at(p), op.value_at(p) * x);
    return acc.take();
}

// The torus grid has a single N site, so interior means one step away from
// the cuts of the two Z legs.
double max_interior_entry(const SparseOperator& op, const TruncGrid& grid) {
    return op.max_abs_on_columns(
        [&grid](const Site& s) { return std::abs(s.j) < grid.z_cut && std::abs(s.k) < grid.z_cut; });
}

std::vector<std::size_t> window_columns(const TruncGrid& grid, int R) {
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < grid.dimension(); ++c) {
        const Site s = grid.site(c);
        if (std::abs(s.j) <= R && std::abs(s.k) <= R) cols.push_back(c);
    }
    return cols;
}

// Ascending singular values of the N x W matrix whose columns are given.
std::vector<double> singular_values(const std::vector<Column>& cols, std::size_t rows) {
    std::vector<Eigen::Triplet<cplx>> trip;
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& [r, v] : cols[c])
            trip.emplace_back(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c), v);
    Eigen::SparseMatrix<cplx> A(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols.size()));
    A.setFromTriplets(trip.begin(), trip.end());
    const Eigen::SparseMatrix<cplx> gram = Eigen::SparseMatrix<cplx>(A.adjoint()) * A;

    // The Gram matrix is often block diagonal (operators preserving the N
    // leg never mix slices); diagonalize each connected component on its own.
    const Eigen::Index W = gram.cols();
    std::vector<Eigen::Index> comp(static_cast<std::size_t>(W), -1);
    std::vector<std::vector<Eigen::Index>> members;
    for (Eigen::Index start = 0; start < W; ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        const Eigen::Index id = static_cast<Eigen::Index>(members.size());
        members.emplace_back();
        std::vector<Eigen::Index> stack{start};
        comp[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            const Eigen::Index c = stack.back();
            stack.pop_back();
            members.back().push_back(c);
            for (Eigen::SparseMatrix<cplx>::InnerIterator it(gram, c); it; ++it)
                if (comp[static_cast<std::size_t>(it.row())] < 0) {
                    comp[static_cast<std::size_t>(it.row())] = id;
                    stack.push_back(it.row());
                }
        }
    }
    std::vector<double> sv;
    sv.reserve(static_cast<std::size_t>(W));
    for (auto& block : members) {
        std::sort(block.begin(), block.end());
        const Eigen::Index n = static_cast<Eigen::Index>(block.size());
        Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::SparseMatrix<cplx>::InnerIterator it(gram, block[static_cast<std::size_t>(a)]); it; ++it) {
                const auto pos = std::lower_bound(block.begin(), block.end(), it.row()) - block.begin();
                dense(pos, a) = it.value();
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense, Eigen::EigenvaluesOnly);
        for (Eigen::Index t = 0; t < n; ++t) sv.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(t))));
    }
    std::sort(sv.begin(), sv.end());
    return sv;
}

}  // namespace

TorusPair build_torus(double theta, int z_cut) {
    if (z_cut < 8) throw std::invalid_argument("torus grid needs z_cut >= 8");
    TorusPair pair;
    pair.theta = theta;
    pair.grid = TruncGrid(1, z_cut, 0);
    std::vector<Triplet> t1, t2;
    for (std::size_t c = 0; c < pair.grid.dimension(); ++c) {
        const Site s = pair.grid.site(c);
        const Site s1{0, s.j + 1, s.k}, s2{0, s.j, s.k + 1};
        if (pair.grid.contains(s1)) t1.push_back({pair.grid.index(s1), c, 1.0});
        if (pair.grid.contains(s2)) t2.push_back({pair.grid.index(s2), c, unit_phase(-theta * s.j)});
    }
    pair.u1 = SparseOperator(pair.grid, std::move(t1));
    pair.u2 = SparseOperator(pair.grid, std::move(t2));
    return pair;
}

double commutation_residual(const TorusPair& pair, int sign) {
    const SparseOperator lhs = pair.u2 * pair.u1;
    const SparseOperator rhs = (pair.u1 * pair.u2).scaled(unit_phase(sign * pair.theta));
    return max_interior_entry(lhs - rhs, pair.grid);
}

double unitarity_residual(const TorusPair& pair) {
    const SparseOperator one = SparseOperator::identity(pair.grid);
    double r = 0;
    for (const SparseOperator* u : {&pair.u1, &pair.u2}) {
        r = std::max(r, max_interior_entry(u->adjoint() * *u - one, pair.grid));
        r = std::max(r, max_interior_entry(*u * u->adjoint() - one, pair.grid));
    }
    return r;
}

SparseOperator torus_operator(const TorusElement& x, const TruncGrid& grid, int slice) {
    // u1^m u2^n e_{j,k} = exp(-2 pi i theta j n) e_{j+m, k+n}
    std::vector<Triplet> trip;
    for (std::size_t c = 0; c < grid.dimension(); ++c) {
        const Site s = grid.site(c);
        if (s.i != slice) continue;
        for (const auto& [n, row] : x.rows()) {
            const int k = s.k + n;
            if (std::abs(k) > grid.z_cut) continue;
            const cplx ph = x.lambda_pow(static_cast<long>(s.j) * n);
            const int m_lo = std::max(row.m0, -grid.z_cut - s.j);
            const int m_hi = std::min(row.m0 + static_cast<int>(row.c.size()) - 1, grid.z_cut - s.j);
            for (int m = m_lo; m <= m_hi; ++m) {
                const cplx v = row.c[static_cast<std::size_t>(m - row.m0)];
                if (v == cplx{}) continue;
                trip.push_back({grid.index({slice, s.j + m, k}), c, v * ph});
            }
        }
    }
    return SparseOperator(grid, std::move(trip));
}

SparseOperator rieffel_projection(const ProjectionSpec& spec, const TorusPair& pair) {
    if (spec.theta != pair.theta) throw std::invalid_argument("projection and torus pair use different theta");
    return torus_operator(rieffel_symbol(spec).p, pair.grid);
}

cplx phase_value(int j, int k, cplx origin) {
    if (j == 0 && k == 0) return origin;
    return cplx(j, k) / std::hypot(static_cast<double>(j), static_cast<double>(k));
}

SparseOperator phase_operator(int z_cut, cplx origin) {
    return SparseOperator::diagonal(TruncGrid(1, z_cut, 0),
                                    [origin](const Site& s) { return phase_value(s.j, s.k, origin); });
}

IndexResult fredholm_index_svd(const SparseOperator& p, const SparseOperator& F, const IndexOptions& opts) {
    const TruncGrid& grid = p.grid();
    if (!(F.grid() == grid)) throw std::invalid_argument("p and F live on different grids");
    if (!(opts.tol > 0)) throw std::invalid_argument("index tolerance must be positive");
    IndexResult res;
    res.window = opts.window >= 0 ? opts.window : std::min(12, grid.z_cut / 2);
    const std::vector<std::size_t> cols = window_columns(grid, res.window);
    res.columns = cols.size();

    const SparseOperator Fa = F.adjoint();
    Accumulator acc(grid.dimension());
    std::vector<Column> a_cols, ah_cols;
    a_cols.reserve(cols.size());
    ah_cols.reserve(cols.size());
    for (std::size_t c : cols) {
        const Column pc = column_of(p, c);
        const Column ppc = apply_to(p, pc, acc);
        for (const auto& [r, v] : ppc) acc.add(r, v);
        for (const auto& [r, v] : pc) acc.add(r, -v);
        for (const auto& [r, v] : acc.take()) res.idempotency = std::max(res.idempotency, std::abs(v));

        // A e_c = p F p e_c + e_c - p e_c, and the same with F*
        for (const SparseOperator* f : {&F, &Fa}) {
            const Column pfp = apply_to(p, apply_to(*f, pc, acc), acc);
            for (const auto& [r, v] : pfp) acc.add(r, v);
            acc.add(c, 1.0);
            for (const auto& [r, v] : pc) acc.add(r, -v);
            (f == &F ? a_cols : ah_cols).push_back(acc.take());
        }
    }
    if (res.idempotency > opts.idempotency_limit)
        throw std::invalid_argument("p is not idempotent to 1e-4 on the index window");

    const std::vector<double> sa = singular_values(a_cols, grid.dimension());
    const std::vector<double> sh = singular_values(ah_cols, grid.dimension());
    res.gap_above = 1e300;
    for (const auto* sv : {&sa, &sh}) {
        int count = 0;
        for (double s : *sv) {
            if (s < opts.tol) {
                ++count;
                res.gap_below = std::max(res.gap_below, s);
            } else {
                res.gap_above = std::min(res.gap_above, s);
            }
            if (s >= 0.5 * opts.tol && s <= 2.0 * opts.tol) res.indeterminate = true;
        }
        (sv == &sa ? res.kernel : res.cokernel) = count;
    }
    const std::size_t show = 4;
    res.kernel_singular_values.assign(sa.begin(), sa.begin() + static_cast<long>(std::min(show, sa.size())));
    res.cokernel_singular_values.assign(sh.begin(), sh.begin() + static_cast<long>(std::min(show, sh.size())));
    res.index = res.kernel - res.cokernel;
    return res;
}

PairingCheck pairing_operator_check(const ProjectionSpec& spec, int n_cut, int z_cut, const IndexOptions& opts) {
    PairingCheck out;
    out.grid = TruncGrid(n_cut, z_cut, 0);
    const TorusElement sym = rieffel_symbol(spec).p;
    const SparseOperator P = torus_operator(sym, out.grid, 0);
    const SparseOperator phase = build_dirac(out.grid).phase();
    out.result = fredholm_index_svd(P, phase, opts);

    // compare P T|T|^{-1} P with the planar p F p, column by column over the window
    const TruncGrid plane(1, z_cut, 0);
    const SparseOperator p = torus_operator(sym, plane, 0);
    const SparseOperator F = phase_operator(z_cut);
    Accumulator acc(out.grid.dimension());
    Accumulator acc_plane(plane.dimension());
    for (std::size_t c : window_columns(out.grid, out.result.window)) {
        const Site s = out.grid.site(c);
        const Column full = apply_to(P, apply_to(phase, column_of(P, c), acc), acc);
        std::map<std::size_t, cplx> ref;
        if (s.i == 0) {
            const Column planar = apply_to(p, apply_to(F, column_of(p, plane.index(s)), acc_plane), acc_plane);
            for (const auto& [r, v] : planar) ref[out.grid.index(plane.site(r))] = v;
        }
        for (const auto& [r, v] : full) ref[r] -= v;
        for (const auto& [r, v] : ref) out.slice_deviation = std::max(out.slice_deviation, std::abs(v));
    }
    return out;
}

IndexReport index_report(const ProjectionSpec& spec, int z_cut, const IndexOptions& opts) {
    IndexReport rep;
    rep.spec = spec;
    rep.z_cut = z_cut;
    const RieffelSymbol sym = rieffel_symbol(spec);
    rep.theta_reduced = sym.theta_reduced;
    rep.eps = sym.eps;
    rep.reflected = sym.reflected;
    rep.chern = chern_number(sym.p);
    rep.defects = projection_defects(sym, spec.quadrature_points);

    const TorusPair pair = build_torus(spec.theta, z_cut);
    rep.commutation_residual = commutation_residual(pair, -1);
    const SparseOperator p = torus_operator(sym.p, pair.grid);
    rep.fredholm = fredholm_index_svd(p, phase_operator(z_cut, 1.0), opts);
    rep.fredholm_origin_flipped = fredholm_index_svd(p, phase_operator(z_cut, -1.0), opts);
    rep.operator_idempotency = rep.fredholm.idempotency;

    const std::vector<std::size_t> cols = window_columns(pair.grid, rep.fredholm.window);
    double tr = 0;
    for (std::size_t c : cols) tr += p.entry(c, c).real();
    rep.matrix_trace = tr / static_cast<double>(cols.size());

    rep.consistent = rep.chern.distance <= kChernIntegerTolerance && std::abs(rep.chern.rounded) == 1 &&
                     !rep.fredholm.indeterminate && !rep.fredholm_origin_flipped.indeterminate &&
                     rep.fredholm.index == rep.chern.rounded && rep.fredholm_origin_flipped.index == rep.fredholm.index;
    return rep;
}

}  // namespace uq2
