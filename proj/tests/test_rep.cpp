#include <cmath>
#include <random>

#include "doctest.h"
#include "uq2/rep.hpp"

using namespace uq2;

namespace {

const QParam kQ = make_qparam(0.5, std::sqrt(2.0) - 1.0);

cplx image(const GeneratorSet& g, Generator which, const Site& from, const Site& to) {
    return g.op(which).entry(g.grid.index(to), g.grid.index(from));
}

}  // namespace

TEST_CASE("generator images at the origin") {
    const GeneratorSet g = build_generators(kQ, TruncGrid(6, 4, 2));
    CHECK(std::abs(image(g, Generator::a, {0, 0, 0}, {1, 0, 0}) - std::sqrt(0.75)) < 1e-15);
    CHECK(std::abs(image(g, Generator::b, {0, 0, 0}, {0, 1, 0}) - 1.0) < 1e-15);
    CHECK(std::abs(image(g, Generator::D, {0, 1, 0}, {0, 1, 1}) - unit_phase(-kQ.theta)) < 1e-15);
    // a* kills the N-leg edge
    CHECK_FALSE(act(Generator::a_star, {0, 2, 1}, kQ).has_value());
}

TEST_CASE("monomial operators compose shifts") {
    const TruncGrid grid(6, 4, 2);
    const GeneratorSet g = build_generators(kQ, grid);
    const SparseOperator bbs = monomial_operator(AlgebraElement(BasisMonomial{0, 1, 1, 0}), g);
    for (int i = 0; i < 5; ++i)
        for (int j = -2; j <= 2; ++j) {
            const std::size_t s = grid.index({i, j, 0});
            CHECK(std::abs(bbs.entry(s, s) - std::pow(0.25, i)) < 1e-15);
        }
    const SparseOperator id = monomial_operator(AlgebraElement::scalar(1.0), g);
    CHECK((id - SparseOperator::identity(grid)).max_abs_on_columns([](const Site&) { return true; }) == 0.0);

    // symbolic product b a against the operator product, on interior columns
    const AlgebraElement ba = multiply(kQ, gen_b(), gen_a());
    const SparseOperator lhs = monomial_operator(ba, g);
    const SparseOperator rhs = g.op(Generator::b) * g.op(Generator::a);
    auto inner = [&grid](const Site& s) { return grid.interior(s); };
    CHECK((lhs - rhs).max_abs_on_columns(inner) < 1e-14);
}

TEST_CASE("eight relations hold on the interior") {
    const GeneratorSet g = build_generators(kQ, TruncGrid(12, 10, 2));
    const auto rels = relation_residuals(g);
    CHECK(rels.size() == 8);
    for (const auto& r : rels) {
        INFO(r.name);
        CHECK(r.residual <= 1e-12);
    }
}

TEST_CASE("relations fail with the wrong q (negative control)") {
    const TruncGrid grid(12, 10, 2);
    GeneratorSet g = build_generators(kQ, grid);
    g.op_b = generator_operator(Generator::b, make_qparam(0.6, kQ.theta), grid);
    double worst = 0;
    for (const auto& r : relation_residuals(g)) worst = std::max(worst, r.residual);
    CHECK(worst > 1e-3);
}

TEST_CASE("torus unitaries") {
    const TruncGrid grid(6, 8, 2);
    const SparseOperator u = torus_unitary(1.0, 1.0, 1.0, grid);
    CHECK((u - SparseOperator::identity(grid)).max_abs_on_columns([](const Site&) { return true; }) == 0.0);
    const SparseOperator v = torus_unitary(-1.0, 1.0, 1.0, grid);
    const std::size_t s = grid.index({3, 5, 7});
    CHECK(std::abs(v.entry(s, s) + 1.0) < 1e-15);
    CHECK_THROWS(require_unit(cplx(1.1, 0), "z"));

    const GeneratorSet g = build_generators(kQ, grid);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u01(0, 1);
    for (int t = 0; t < 10; ++t)
        CHECK(covariance_residual(unit_phase(u01(rng)), unit_phase(u01(rng)), unit_phase(u01(rng)), g) <= 1e-12);
}

TEST_CASE("truncation drops images at the cuts and counts them") {
    const GeneratorSet g = build_generators(kQ, TruncGrid(3, 2, 0));
    CHECK(g.dropped[static_cast<std::size_t>(Generator::a)] > 0);
    CHECK(g.dropped[static_cast<std::size_t>(Generator::D)] > 0);
    CHECK_THROWS(TruncGrid(3, 2, 3));
}
