#include "uq2/rep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace uq2 {

std::string generator_name(Generator g) {
    switch (g) {
        case Generator::a: return "a";
        case Generator::a_star: return "a*";
        case Generator::b: return "b";
        case Generator::b_star: return "b*";
        case Generator::D: return "D";
        case Generator::D_star: return "D*";
    }
    return "?";
}

Site generator_shift(Generator g) {
    switch (g) {
        case Generator::a: return {1, 0, 0};
        case Generator::a_star: return {-1, 0, 0};
        case Generator::b: return {0, 1, 0};
        case Generator::b_star: return {0, -1, 0};
        case Generator::D: return {0, 0, 1};
        case Generator::D_star: return {0, 0, -1};
    }
    return {};
}

AlgebraElement generator_element(Generator g) {
    switch (g) {
        case Generator::a: return gen_a();
        case Generator::a_star: return gen_a_star();
        case Generator::b: return gen_b();
        case Generator::b_star: return gen_b_star();
        case Generator::D: return gen_D();
        case Generator::D_star: return gen_D_star();
    }
    return {};
}

std::optional<ShiftImage> act(Generator g, const Site& s, const QParam& q) {
    if (s.i < 0) return std::nullopt;
    const Site t = s + generator_shift(g);
    switch (g) {
        case Generator::a:
            return ShiftImage{t, std::sqrt(1.0 - q.mod_pow(2L * s.i + 2))};
        case Generator::a_star:
            if (s.i == 0) return std::nullopt;
            return ShiftImage{t, std::sqrt(1.0 - q.mod_pow(2L * s.i))};
        case Generator::b:
            return ShiftImage{t, q.q_pow(s.i)};
        case Generator::b_star:
            return ShiftImage{t, q.qbar_pow(s.i)};
        case Generator::D:
            // the phase reads the middle-leg index before the shift on the third leg
            return ShiftImage{t, q.c_pow(-static_cast<long>(s.j))};
        case Generator::D_star:
            return ShiftImage{t, q.c_pow(static_cast<long>(s.j))};
    }
    return std::nullopt;
}

Site monomial_shift(const BasisMonomial& b) { return {b.n, b.m - b.k, b.l}; }

std::optional<ShiftImage> monomial_action(const BasisMonomial& b, const Site& s, const QParam& q) {
    ShiftImage cur{s, 1.0};
    auto step = [&](Generator g, int times) {
        for (int t = 0; t < times; ++t) {
            auto r = act(g, cur.target, q);
            if (!r) return false;
            cur.target = r->target;
            cur.weight *= r->weight;
        }
        return true;
    };
    if (!step(b.l >= 0 ? Generator::D : Generator::D_star, std::abs(b.l))) return std::nullopt;
    if (!step(Generator::b_star, b.k)) return std::nullopt;
    if (!step(Generator::b, b.m)) return std::nullopt;
    if (!step(b.n >= 0 ? Generator::a : Generator::a_star, std::abs(b.n))) return std::nullopt;
    return cur;
}

SparseOperator generator_operator(Generator g, const QParam& q, const TruncGrid& grid, std::size_t* dropped) {
    std::vector<Triplet> t;
    t.reserve(grid.dimension());
    std::size_t lost = 0;
    for (std::size_t c = 0; c < grid.dimension(); ++c) {
        auto r = act(g, grid.site(c), q);
        if (!r) continue;
        if (!grid.contains(r->target)) {
            ++lost;
            continue;
        }
        t.push_back({grid.index(r->target), c, r->weight});
    }
    if (dropped) *dropped = lost;
    return SparseOperator(grid, std::move(t));
}

const SparseOperator& GeneratorSet::op(Generator g) const {
    switch (g) {
        case Generator::a: return op_a;
        case Generator::a_star: return op_a_star;
        case Generator::b: return op_b;
        case Generator::b_star: return op_b_star;
        case Generator::D: return op_D;
        case Generator::D_star: return op_D_star;
    }
    throw std::logic_error("unknown generator");
}

GeneratorSet build_generators(const QParam& q, const TruncGrid& grid) {
    GeneratorSet s;
    s.qparam = q;
    s.grid = grid;
    s.op_a = generator_operator(Generator::a, q, grid, &s.dropped[0]);
    s.op_a_star = generator_operator(Generator::a_star, q, grid, &s.dropped[1]);
    s.op_b = generator_operator(Generator::b, q, grid, &s.dropped[2]);
    s.op_b_star = generator_operator(Generator::b_star, q, grid, &s.dropped[3]);
    s.op_D = generator_operator(Generator::D, q, grid, &s.dropped[4]);
    s.op_D_star = generator_operator(Generator::D_star, q, grid, &s.dropped[5]);
    return s;
}

namespace {

SparseOperator power_of(const SparseOperator& x, int e) {
    SparseOperator out = SparseOperator::identity(x.grid());
    for (int i = 0; i < e; ++i) out = out * x;
    return out;
}

}  // namespace

SparseOperator monomial_operator(const AlgebraElement& x, const GeneratorSet& gens) {
    std::vector<Triplet> acc;
    for (const auto& [b, c] : x.terms()) {
        SparseOperator m = power_of(b.n >= 0 ? gens.op_a : gens.op_a_star, std::abs(b.n));
        m = m * power_of(gens.op_b, b.m);
        m = m * power_of(gens.op_b_star, b.k);
        m = m * power_of(b.l >= 0 ? gens.op_D : gens.op_D_star, std::abs(b.l));
        for (const auto& t : m.triplets()) acc.push_back({t.row, t.col, c * t.value});
    }
    return SparseOperator(gens.grid, std::move(acc));
}

SparseVector apply_element(const AlgebraElement& x, const GeneratorSet& gens, const SparseVector& v) {
    SparseVector out;
    for (const auto& [b, c] : x.terms()) {
        SparseVector w = v;
        auto apply_n = [&](const SparseOperator& op, int times) {
            for (int t = 0; t < times; ++t) w = op.apply(w);
        };
        apply_n(b.l >= 0 ? gens.op_D : gens.op_D_star, std::abs(b.l));
        apply_n(gens.op_b_star, b.k);
        apply_n(gens.op_b, b.m);
        apply_n(b.n >= 0 ? gens.op_a : gens.op_a_star, std::abs(b.n));
        for (const auto& [r, val] : w) out[r] += c * val;
    }
    return out;
}

std::vector<RelationResidual> relation_residuals(const GeneratorSet& gens) {
    const QParam& q = gens.qparam;
    const auto& A = gens.op_a;
    const auto& As = gens.op_a_star;
    const auto& B = gens.op_b;
    const auto& Bs = gens.op_b_star;
    const auto& D = gens.op_D;
    const auto& Ds = gens.op_D_star;
    const SparseOperator I = SparseOperator::identity(gens.grid);
    const TruncGrid grid = gens.grid;
    auto inside = [&grid](const Site& s) { return grid.interior(s); };
    auto norm = [&](const SparseOperator& r) { return r.schur_norm_on_columns(inside); };

    std::vector<RelationResidual> out;
    out.push_back({"ba = q ab", norm(B * A - (A * B).scaled(q.q()))});
    out.push_back({"a*b = q ba*", norm(As * B - (B * As).scaled(q.q()))});
    out.push_back({"bb* = b*b", norm(B * Bs - Bs * B)});
    out.push_back({"aa* + bb* = 1", norm(A * As + B * Bs - I)});
    out.push_back({"aD = Da", norm(A * D - D * A)});
    out.push_back({"bD = q^2|q|^-2 Db", norm(B * D - (D * B).scaled(q.c_pow(1)))});
    out.push_back({"DD* = D*D = 1", std::max(norm(D * Ds - I), norm(Ds * D - I))});
    out.push_back({"a*a + |q|^2 b*b = 1", norm(As * A + (Bs * B).scaled(q.mod2()) - I)});
    return out;
}

void require_unit(cplx z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::fabs(std::abs(z) - 1.0) > 1e-12)
        throw std::invalid_argument(std::string(what) + " must have modulus 1 (within 1e-12)");
}

namespace {

cplx unit_power(cplx z, int e) { return std::polar(1.0, std::arg(z) * static_cast<double>(e)); }

}  // namespace

SparseOperator torus_unitary(cplx z1, cplx z2, cplx z3, const TruncGrid& grid) {
    require_unit(z1, "z1");
    require_unit(z2, "z2");
    require_unit(z3, "z3");
    return SparseOperator::diagonal(grid, [&](const Site& s) {
        return unit_power(z1, s.i) * unit_power(z2, s.j) * unit_power(z3, s.k);
    });
}

double covariance_residual(cplx z1, cplx z2, cplx z3, const GeneratorSet& gens) {
    const SparseOperator U = torus_unitary(z1, z2, z3, gens.grid);
    return std::max({diagonal_conjugation_defect(U, gens.op_a, z1), diagonal_conjugation_defect(U, gens.op_b, z2),
                     diagonal_conjugation_defect(U, gens.op_D, z3)});
}

}  // namespace uq2
