#include "uq2/dirac.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace uq2 {

cplx dirac_eigenvalue(int i, int j, int k) {
    if (i < 0) throw std::invalid_argument("dirac eigenvalue needs i >= 0");
    const double re = j >= 0 ? static_cast<double>(i + j) : static_cast<double>(-i + j);
    return {re, static_cast<double>(k)};
}

double DiracSpec::abs_inverse(const Site& s) const {
    const double m = std::abs(eigenvalue(s));
    return m == 0.0 ? 0.0 : 1.0 / m;
}

SparseOperator DiracSpec::T() const {
    return SparseOperator::diagonal(grid, [](const Site& s) { return dirac_eigenvalue(s); });
}

SparseOperator DiracSpec::phase() const {
    return SparseOperator::diagonal(grid, [](const Site& s) {
        const cplx d = dirac_eigenvalue(s);
        const double m = std::abs(d);
        return m == 0.0 ? cplx{1.0} : d / m;
    });
}

DiracSpec build_dirac(const TruncGrid& grid) {
    DiracSpec spec;
    spec.grid = grid;
    for (std::size_t c = 0; c < grid.dimension(); ++c) {
        const Site s = grid.site(c);
        if (dirac_eigenvalue(s) == cplx{}) spec.kernel.push_back(s);
    }
    return spec;
}

namespace {

// 2x2 operator blocks on the doubled space; a missing block is zero.
struct Block2 {
    std::optional<SparseOperator> m[2][2];
};

std::optional<SparseOperator> add_opt(const std::optional<SparseOperator>& x,
                                      const std::optional<SparseOperator>& y) {
    if (!x) return y;
    if (!y) return x;
    return *x + *y;
}

Block2 mul(const Block2& x, const Block2& y) {
    Block2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            for (int t = 0; t < 2; ++t)
                if (x.m[r][t] && y.m[t][c]) out.m[r][c] = add_opt(out.m[r][c], *x.m[r][t] * *y.m[t][c]);
    return out;
}

Block2 add(const Block2& x, const Block2& y, double sign) {
    Block2 out;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
            std::optional<SparseOperator> yy;
            if (y.m[r][c]) yy = y.m[r][c]->scaled(sign);
            out.m[r][c] = add_opt(x.m[r][c], yy);
        }
    return out;
}

double max_abs(const Block2& x) {
    double r = 0;
    auto all = [](const Site&) { return true; };
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            if (x.m[a][b]) r = std::max(r, x.m[a][b]->max_abs_on_columns(all));
    return r;
}

Block2 grading(const TruncGrid& g) {
    Block2 out;
    out.m[0][0] = SparseOperator::identity(g);
    out.m[1][1] = SparseOperator::identity(g).scaled(-1.0);
    return out;
}

Block2 diagonal_copy(const SparseOperator& op) {
    Block2 out;
    out.m[0][0] = op;
    out.m[1][1] = op;
    return out;
}

cplx generator_weight(Generator g, const Site& s, const QParam& q) {
    auto r = act(g, s, q);
    return r ? r->weight : cplx{};
}

}  // namespace

double grading_anticommutator_residual(const DiracSpec& spec) {
    const SparseOperator t = spec.T();
    Block2 d;
    d.m[0][1] = t.adjoint();
    d.m[1][0] = t;
    const Block2 gamma = grading(spec.grid);
    return max_abs(add(mul(gamma, d), mul(d, gamma), 1.0));
}

double grading_commutator_residual(const SparseOperator& op) {
    const Block2 gamma = grading(op.grid());
    const Block2 x = diagonal_copy(op);
    return max_abs(add(mul(gamma, x), mul(x, gamma), -1.0));
}

CommutatorForm commutator_closed_form(Generator g, const TruncGrid&, const QParam& q) {
    CommutatorForm f;
    f.generator = g;
    f.shift = generator_shift(g);
    f.weight = [g, q, shift = f.shift](const Site& s) -> cplx {
        if (s.i < 0 || s.i + shift.i < 0) return 0.0;
        return (dirac_eigenvalue(s + shift) - dirac_eigenvalue(s)) * generator_weight(g, s, q);
    };
    return f;
}

namespace {

SparseOperator form_operator(const CommutatorForm& f, const TruncGrid& grid) {
    std::vector<Triplet> t;
    for (std::size_t c = 0; c < grid.dimension(); ++c) {
        const Site s = grid.site(c);
        const Site target = s + f.shift;
        if (!grid.contains(target)) continue;
        const cplx w = f.weight(s);
        if (w != cplx{}) t.push_back({grid.index(target), c, w});
    }
    return SparseOperator(grid, std::move(t));
}

std::vector<Generator> generator_word(const BasisMonomial& b) {
    std::vector<Generator> w;
    for (int i = 0; i < std::abs(b.n); ++i) w.push_back(b.n > 0 ? Generator::a : Generator::a_star);
    for (int i = 0; i < b.m; ++i) w.push_back(Generator::b);
    for (int i = 0; i < b.k; ++i) w.push_back(Generator::b_star);
    for (int i = 0; i < std::abs(b.l); ++i) w.push_back(b.l > 0 ? Generator::D : Generator::D_star);
    return w;
}

}  // namespace

double commutator_check(const AlgebraElement& x, const GeneratorSet& gens, const DiracSpec& spec) {
    const TruncGrid& grid = gens.grid;
    const SparseOperator t = spec.T();
    const SparseOperator px = monomial_operator(x, gens);
    const SparseOperator matrix_route = t * px - px * t;

    std::vector<Triplet> acc;
    int degree = 0;
    for (const auto& [b, c] : x.terms()) {
        degree = std::max(degree, b.degree());
        const auto word = generator_word(b);
        // [T, g1...gr] = sum_t g1...g_{t-1} [T, g_t] g_{t+1}...g_r
        for (std::size_t pos = 0; pos < word.size(); ++pos) {
            SparseOperator term = SparseOperator::identity(grid);
            for (std::size_t u = 0; u < word.size(); ++u) {
                if (u == pos)
                    term = term * form_operator(commutator_closed_form(word[u], grid, gens.qparam), grid);
                else
                    term = term * gens.op(word[u]);
            }
            for (const auto& e : term.triplets()) acc.push_back({e.row, e.col, c * e.value});
        }
    }
    const SparseOperator closed_route(grid, std::move(acc));
    const int margin = std::max(grid.interior_margin, degree);
    return (matrix_route - closed_route).max_abs_on_columns(
        [&grid, margin](const Site& s) { return grid.interior(s, margin); });
}

BoundednessWitness commutator_b_sup(const GeneratorSet& gens) {
    const TruncGrid& grid = gens.grid;
    const CommutatorForm f = commutator_closed_form(Generator::b, grid, gens.qparam);
    BoundednessWitness w{0.0, 0.0};
    for (std::size_t c = 0; c < grid.dimension(); ++c) {
        const Site s = grid.site(c);
        if (grid.contains(s + f.shift)) w.grid_sup = std::max(w.grid_sup, std::abs(f.weight(s)));
    }
    for (int i = 0; i < grid.n_cut; ++i)
        w.predicted_sup = std::max(w.predicted_sup, (2.0 * i + 1.0) * gens.qparam.mod_pow(i));
    return w;
}

namespace {

// largest integer r >= 0 with r^2 <= x (x >= 0)
long isqrt_floor(double x) {
    long r = static_cast<long>(std::floor(std::sqrt(x)));
    while (r > 0 && static_cast<double>(r) * r > x) --r;
    while (static_cast<double>(r + 1) * (r + 1) <= x) ++r;
    return r;
}

}  // namespace

long counting_function(double lambda, const TruncGrid& grid) {
    if (!(lambda >= 0)) throw std::invalid_argument("lambda must be non-negative");
    if (lambda > std::min(grid.n_cut, grid.z_cut) / 2.0)
        throw std::out_of_range("the ball of radius lambda does not fit the grid (need lambda <= min(n_cut, z_cut)/2)");
    const double l2 = lambda * lambda;
    long total = 0;
    // s = i + |j| is hit by 2s+1 pairs (i, j) for s > 0 and once for s = 0
    for (long s = 0; static_cast<double>(s * s) <= l2; ++s) {
        const long pairs = s == 0 ? 1 : 2 * s + 1;
        total += pairs * (2 * isqrt_floor(l2 - static_cast<double>(s * s)) + 1);
    }
    return 2 * total;
}

namespace {

SummabilityControl control_for(const std::vector<double>& mu, double p, double decade) {
    const std::size_t n = mu.size();
    std::size_t start = static_cast<std::size_t>(std::ceil(static_cast<double>(n) / decade));
    start = std::max<std::size_t>(start, 2);
    double partial = 0;
    double lo = INFINITY, hi = -INFINITY, mean = 0, s_start = 0, s_end = 0;
    std::size_t count = 0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        partial += std::pow(mu[idx], -p);
        const std::size_t N = idx + 1;
        if (N < start) continue;
        const double s = partial / std::log(static_cast<double>(N));
        if (N == start) s_start = s;
        s_end = s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        mean += s;
        ++count;
    }
    mean /= static_cast<double>(std::max<std::size_t>(count, 1));
    return {p, s_start, s_end, (hi - lo) / mean};
}

}  // namespace

SummabilityReport summability_report(double lambda_max, const TruncGrid& grid, const SummabilityOptions& opts) {
    if (lambda_max <= 1) throw std::invalid_argument("lambda_max must exceed 1");
    if (grid.n_cut <= lambda_max || grid.z_cut < lambda_max)
        throw std::out_of_range("grid does not contain the spectral ball of radius lambda_max");
    SummabilityReport r;
    r.lambda_max = lambda_max;

    // singular values of the Dirac operator: |d| over the ball, kernel dropped,
    // each value twice (two spinor copies); |d| depends on (i+|j|, k) only
    std::vector<double> mu;
    const double l2 = lambda_max * lambda_max;
    for (long s = 0; static_cast<double>(s * s) <= l2; ++s) {
        const long pairs = s == 0 ? 1 : 2 * s + 1;
        const long kmax = isqrt_floor(l2 - static_cast<double>(s * s));
        for (long k = -kmax; k <= kmax; ++k) {
            if (s == 0 && k == 0) continue;
            const double v = std::sqrt(static_cast<double>(s * s + k * k));
            for (long t = 0; t < 2 * pairs; ++t) mu.push_back(v);
        }
    }
    std::sort(mu.begin(), mu.end());
    r.n_values = mu.size();

    for (double p : {3.0, 2.5, 3.5}) r.controls.push_back(control_for(mu, p, opts.decade));
    r.s_final = r.controls[0].s_end;
    r.s_variation = r.controls[0].variation;

    const TruncGrid count_grid(static_cast<int>(std::ceil(2 * opts.fit_hi)) + 1,
                               static_cast<int>(std::ceil(2 * opts.fit_hi)) + 1, 0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int t = 0; t < opts.fit_points; ++t) {
        const double lam = opts.fit_lo + (opts.fit_hi - opts.fit_lo) * t / (opts.fit_points - 1);
        const double x = std::log(lam);
        const double y = std::log(static_cast<double>(counting_function(lam, count_grid)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double np = opts.fit_points;
    r.counting_slope = (np * sxy - sx * sy) / (np * sxx - sx * sx);
    r.volume_ratio = static_cast<double>(counting_function(opts.fit_hi, count_grid)) /
                     (8.0 / 3.0 * std::pow(opts.fit_hi, 3));
    return r;
}

namespace {

// |weight| of a represented monomial does not depend on k (only unimodular
// D-phases see k) and d(target) - d(source) sees k only through l, so the
// sup over interior sites is attained on the k = 0 slice.
template <class F>
double interior_sup(const BasisMonomial& b, const GeneratorSet& gens, F&& factor) {
    const TruncGrid& grid = gens.grid;
    const int margin = std::max(grid.interior_margin, b.degree());
    const Site shift = monomial_shift(b);
    double sup = 0;
    for (int i = 0; i < grid.n_cut; ++i)
        for (int j = -grid.z_cut; j <= grid.z_cut; ++j) {
            const Site s{i, j, 0};
            if (!grid.interior(s, margin)) continue;
            auto img = monomial_action(b, s, gens.qparam);
            if (!img) continue;
            sup = std::max(sup, std::abs(factor(s, shift) * img->weight));
        }
    return sup;
}

}  // namespace

double commutator_norm(const BasisMonomial& b, const GeneratorSet& gens, const DiracSpec&) {
    return interior_sup(b, gens, [](const Site& s, const Site& shift) {
        return dirac_eigenvalue(s + shift) - dirac_eigenvalue(s);
    });
}

double represented_norm(const BasisMonomial& b, const GeneratorSet& gens) {
    return interior_sup(b, gens, [](const Site&, const Site&) { return cplx(1.0); });
}

KernelScan derivation_kernel_scan(int max_degree, const GeneratorSet& gens, const DiracSpec& spec) {
    if (max_degree < 0 || max_degree > 4) throw std::invalid_argument("max_degree must lie in [0, 4]");
    KernelScan scan;
    scan.min_outside = INFINITY;
    scan.min_relative_outside = INFINITY;
    const int D = max_degree;
    for (int n = -D; n <= D; ++n)
        for (int m = 0; m <= D; ++m)
            for (int k = 0; k <= D; ++k)
                for (int l = -D; l <= D; ++l) {
                    const BasisMonomial b{n, m, k, l};
                    const double norm = commutator_norm(b, gens, spec);
                    const double base = represented_norm(b, gens);
                    const double rel = base > 0 ? norm / base : 0.0;
                    scan.all.push_back({b, norm, rel});
                    if (norm <= kDerivationKernelTolerance) {
                        scan.kernel.push_back(b);
                        continue;
                    }
                    if (norm < scan.min_outside) {
                        scan.min_outside = norm;
                        scan.argmin_outside = b;
                    }
                    scan.min_relative_outside = std::min(scan.min_relative_outside, rel);
                }
    return scan;
}

double equivariance_check(const DiracSpec& spec, cplx z1, cplx z2, cplx z3) {
    const SparseOperator u = torus_unitary(z1, z2, z3, spec.grid);
    double r = diagonal_conjugation_defect(u, spec.T(), 1.0);
    // [U (x) 1, gamma] on the doubled space
    r = std::max(r, grading_commutator_residual(u));
    return r;
}

}  // namespace uq2
