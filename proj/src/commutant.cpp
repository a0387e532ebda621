#include "uq2/commutant.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uq2/parallel.hpp"

namespace uq2 {

cplx CommutantSolution::at(const Site& input, const Site& output) const {
    auto it = alpha.find({input, output});
    return it == alpha.end() ? cplx{} : it->second;
}

namespace {

struct Equation {
    std::vector<std::pair<std::size_t, cplx>> terms;  // (unknown index, coefficient)
};

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void join(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x != y) parent_[std::max(x, y)] = std::min(x, y);
    }

private:
    std::vector<std::size_t> parent_;
};

using MatrixXc = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

}  // namespace

std::vector<CommutantSolution> commutant_solve(const GeneratorSet& gens, const CommutantOptions& opts) {
    const TruncGrid& grid = gens.grid;
    const std::size_t N = grid.dimension();
    if (N * N > opts.max_unknowns)
        throw std::length_error("commutant system exceeds the configured unknown cap");
    const QParam& q = gens.qparam;
    auto unknown = [N, &grid](const Site& out, const Site& in) { return grid.index(out) * N + grid.index(in); };

    // (T G - G T)_{y', x} = T_{y', x+s} w_g(x) - w_g(y'-s) T_{y'-s, x}
    std::vector<Equation> eqs;
    for (Generator g : kAllGenerators) {
        const Site s = generator_shift(g);
        for (std::size_t cx = 0; cx < N; ++cx) {
            const Site x = grid.site(cx);
            const auto gx = act(g, x, q);
            for (std::size_t cy = 0; cy < N; ++cy) {
                const Site y = grid.site(cy);
                const Site ym = y - s;
                Equation e;
                bool complete = true;
                if (gx) {
                    if (grid.contains(gx->target)) e.terms.push_back({unknown(y, gx->target), gx->weight});
                    else complete = false;
                }
                if (ym.i >= 0) {
                    const auto gy = act(g, ym, q);
                    if (gy) {
                        if (grid.contains(ym)) e.terms.push_back({unknown(ym, x), -gy->weight});
                        else complete = false;
                    }
                }
                if (complete && !e.terms.empty()) eqs.push_back(std::move(e));
            }
        }
    }

    // the system decouples; solve each connected block of unknowns densely
    DisjointSets sets(N * N);
    for (const auto& e : eqs)
        for (std::size_t t = 1; t < e.terms.size(); ++t) sets.join(e.terms[0].first, e.terms[t].first);
    std::map<std::size_t, std::vector<std::size_t>> members;
    for (std::size_t v = 0; v < N * N; ++v) members[sets.find(v)].push_back(v);
    std::map<std::size_t, std::vector<const Equation*>> rows;
    for (const auto& e : eqs) rows[sets.find(e.terms[0].first)].push_back(&e);

    std::vector<CommutantSolution> basis;
    for (const auto& [root, vars] : members) {
        std::map<std::size_t, Eigen::Index> local;
        for (std::size_t t = 0; t < vars.size(); ++t) local[vars[t]] = static_cast<Eigen::Index>(t);
        const auto& rs = rows[root];
        const Eigen::Index nv = static_cast<Eigen::Index>(vars.size());
        MatrixXc A = MatrixXc::Zero(std::max<Eigen::Index>(static_cast<Eigen::Index>(rs.size()), 1), nv);
        for (std::size_t r = 0; r < rs.size(); ++r)
            for (const auto& [v, c] : rs[r]->terms) A(static_cast<Eigen::Index>(r), local[v]) += c;
        Eigen::JacobiSVD<MatrixXc> svd(A, Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const double top = sv.size() ? sv(0) : 0.0;
        Eigen::Index rank = 0;
        for (Eigen::Index t = 0; t < sv.size(); ++t)
            if (sv(t) > opts.rank_tolerance * std::max(top, 1.0)) ++rank;
        const MatrixXc& V = svd.matrixV();
        for (Eigen::Index col = rank; col < nv; ++col) {
            CommutantSolution sol;
            sol.grid = grid;
            // fix the phase so the largest entry is real positive
            Eigen::Index big = 0;
            V.col(col).cwiseAbs().maxCoeff(&big);
            const cplx ph = std::abs(V(big, col)) > 0 ? std::conj(V(big, col)) / std::abs(V(big, col)) : 1.0;
            for (Eigen::Index t = 0; t < nv; ++t) {
                const cplx v = V(t, col) * ph;
                if (std::abs(v) < 1e-15) continue;
                const std::size_t u = vars[static_cast<std::size_t>(t)];
                sol.alpha[{grid.site(u % N), grid.site(u / N)}] = v;
            }
            basis.push_back(std::move(sol));
        }
    }
    return basis;
}

StructureResiduals structure_residuals(const CommutantSolution& sol, const QParam& q) {
    const TruncGrid& grid = sol.grid;
    const std::size_t N = grid.dimension();
    StructureResiduals r;
    const Site origin{0, 0, 0};
    for (std::size_t cx = 0; cx < N; ++cx) {
        const Site x = grid.site(cx);
        for (std::size_t cy = 0; cy < N; ++cy) {
            const Site y = grid.site(cy);
            const cplx v = sol.at(x, y);
            if (x.i != y.i) {
                r.off_block = std::max(r.off_block, std::abs(v));
                continue;
            }
            // Site{d, i, j}: the middle index is .j and the third is .k
            const Site ref{0, x.j - y.j, x.k - y.k};
            if (grid.contains(ref)) {
                const cplx pred = q.c_pow(static_cast<long>(y.k) * (x.j - y.j)) * sol.at(ref, origin);
                r.phase_law = std::max(r.phase_law, std::abs(v - pred));
            }
            const Site xs{x.i, x.j + 1, x.k}, ys{y.i, y.j + 1, y.k};
            if (grid.contains(xs) && grid.contains(ys))
                r.translation = std::max(r.translation, std::abs(sol.at(xs, ys) - v));
        }
    }
    return r;
}

CenterReport center_probe(const QParam& q, const TruncGrid& grid, int M) {
    if (M < 0) throw std::invalid_argument("M must be non-negative");
    CenterReport rep;
    rep.M = M;
    rep.grid = grid;

    std::map<Site, std::vector<BasisMonomial>> classes;
    for (int n = -M; n <= M; ++n)
        for (int m = 0; m <= M; ++m)
            for (int k = 0; k <= M; ++k)
                for (int l = -M; l <= M; ++l) {
                    const BasisMonomial b{n, m, k, l};
                    classes[monomial_shift(b)].push_back(b);
                }

    std::vector<Site> sites;
    for (std::size_t c = 0; c < grid.dimension(); ++c) sites.push_back(grid.site(c));

    auto weight = [&q](const BasisMonomial& b, const Site& s) -> cplx {
        auto r = monomial_action(b, s, q);
        return r ? r->weight : cplx{};
    };
    auto g_weight = [&q](Generator g, const Site& s) -> cplx {
        auto r = act(g, s, q);
        return r ? r->weight : cplx{};
    };
    auto rank_of = [](const MatrixXc& A, std::vector<double>* sv_out) {
        Eigen::JacobiSVD<MatrixXc> svd(A);
        const auto& sv = svd.singularValues();
        int rank = 0;
        for (Eigen::Index t = 0; t < sv.size(); ++t) {
            if (sv_out) sv_out->push_back(sv(t));
            if (sv(t) > kCenterRankThreshold) ++rank;
        }
        return rank;
    };

    // Every monomial in a class shifts by the same vector, so the commutator
    // with a generator applied to e_x lands on one site: one scalar equation
    // per (generator, site).  Rows are scaled by 1/sqrt(#rows) so the
    // absolute threshold does not drift with the grid size.
    const double row_scale = 1.0 / std::sqrt(static_cast<double>(sites.size() * kAllGenerators.size()));
    std::vector<const std::pair<const Site, std::vector<BasisMonomial>>*> order;
    for (const auto& entry : classes) order.push_back(&entry);
    std::vector<CenterBlock> blocks(order.size());
    parallel_for(order.size(), [&](std::size_t idx) {
        const Site& shift = order[idx]->first;
        const auto& mons = order[idx]->second;
        const Eigen::Index nc = static_cast<Eigen::Index>(mons.size());
        const Eigen::Index nr = static_cast<Eigen::Index>(sites.size() * kAllGenerators.size());
        MatrixXc C(nr, nc);
        MatrixXc S(static_cast<Eigen::Index>(sites.size()), nc);
        for (Eigen::Index col = 0; col < nc; ++col) {
            const BasisMonomial& b = mons[static_cast<std::size_t>(col)];
            Eigen::Index row = 0;
            for (Generator g : kAllGenerators) {
                const Site gs = generator_shift(g);
                for (const Site& x : sites) {
                    // [pi(b), pi(g)] e_x = (w_b(x+s_g) w_g(x) - w_g(x+s_b) w_b(x)) e_{x+s_b+s_g}
                    cplx v = 0;
                    const cplx wg = g_weight(g, x);
                    if (wg != cplx{}) v += weight(b, x + gs) * wg;
                    const cplx wb = weight(b, x);
                    if (wb != cplx{}) v -= g_weight(g, x + shift) * wb;
                    C(row++, col) = v * row_scale;
                }
            }
            for (std::size_t t = 0; t < sites.size(); ++t)
                S(static_cast<Eigen::Index>(t), col) = weight(b, sites[t]) * row_scale;
        }
        CenterBlock& blk = blocks[idx];
        blk.shift = shift;
        blk.monomials = mons.size();
        const int rank_c = rank_of(C, &blk.singular_values);
        MatrixXc CS(nr + S.rows(), nc);
        CS << C, S;
        const int rank_cs = rank_of(CS, nullptr);
        // dim ker C - dim (ker C  cap  ker S): commuting combinations that stay
        // nonzero as operators on the grid
        blk.kernel = static_cast<int>((nc - rank_c) - (nc - rank_cs));
    });
    for (std::size_t idx = 0; idx < blocks.size(); ++idx) {
        if (blocks[idx].kernel > 0)
            for (const auto& b : order[idx]->second) rep.central_support.push_back(b);
        rep.dimension += blocks[idx].kernel;
        rep.blocks.push_back(std::move(blocks[idx]));
    }
    return rep;
}

int center_dimension(const QParam& q, const TruncGrid& grid, int M) { return center_probe(q, grid, M).dimension; }

}  // namespace uq2
