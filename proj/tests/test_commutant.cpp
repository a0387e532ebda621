#include <cmath>
#include <random>

#include "doctest.h"
#include "uq2/commutant.hpp"

using namespace uq2;

namespace {

const QParam kQ = make_qparam(0.5, std::sqrt(2.0) - 1.0);

CommutantSolution identity_solution(const TruncGrid& grid) {
    CommutantSolution s;
    s.grid = grid;
    for (std::size_t c = 0; c < grid.dimension(); ++c) s.alpha[{grid.site(c), grid.site(c)}] = 1.0;
    return s;
}

CommutantSolution combine(const std::vector<CommutantSolution>& basis, const std::vector<cplx>& w) {
    CommutantSolution s;
    s.grid = basis.front().grid;
    for (std::size_t b = 0; b < basis.size(); ++b)
        for (const auto& [key, v] : basis[b].alpha) s.alpha[key] += w[b] * v;
    return s;
}

}  // namespace

TEST_CASE("identity satisfies the structure laws exactly") {
    const StructureResiduals r = structure_residuals(identity_solution(TruncGrid(3, 2, 0)), kQ);
    CHECK(r.max() == 0.0);
}

TEST_CASE("commutant on a small grid") {
    const TruncGrid grid(3, 2, 0);
    const auto basis = commutant_solve(build_generators(kQ, grid));
    REQUIRE_FALSE(basis.empty());
    for (const auto& sol : basis) CHECK(structure_residuals(sol, kQ).max() <= 1e-8);

    // the identity lies in the span: its component orthogonal to the basis vanishes
    const CommutantSolution id = identity_solution(grid);
    double id_norm2 = 0;
    for (const auto& kv : id.alpha) id_norm2 += std::norm(kv.second);
    double captured = 0;
    for (const auto& sol : basis) {
        cplx ip = 0;
        double n2 = 0;
        for (const auto& [key, v] : sol.alpha) {
            ip += std::conj(v) * id.at(key.first, key.second);
            n2 += std::norm(v);
        }
        captured += std::norm(ip) / n2;
    }
    CHECK(captured == doctest::Approx(id_norm2).epsilon(1e-8));

    std::mt19937_64 rng(17);
    std::normal_distribution<double> g;
    std::vector<cplx> w;
    for (std::size_t b = 0; b < basis.size(); ++b) w.emplace_back(g(rng), g(rng));
    const CommutantSolution mix = combine(basis, w);
    CHECK(structure_residuals(mix, kQ).max() <= 1e-8);

    // negative control: a single off-block entry breaks the laws
    CommutantSolution bad = mix;
    bad.alpha[{Site{0, 0, 0}, Site{1, 0, 0}}] += 0.01;
    CHECK(structure_residuals(bad, kQ).max() > 1e-3);
}

TEST_CASE("oversized systems are refused") {
    CommutantOptions o;
    o.max_unknowns = 10;
    CHECK_THROWS_AS(commutant_solve(build_generators(kQ, TruncGrid(3, 2, 0)), o), std::length_error);
}

TEST_CASE("center probe") {
    const TruncGrid grid(10, 10, 2);
    CHECK(center_dimension(kQ, grid, 0) == 1);
    CHECK(center_dimension(kQ, grid, 2) == 1);
    const QParam real_q = make_qparam(0.5, 0.0);
    // powers of D commute with everything when q is real
    CHECK(center_dimension(real_q, grid, 0) == 1);
    CHECK(center_dimension(real_q, grid, 1) >= 3);
    const CenterReport r = center_probe(real_q, grid, 2);
    CHECK(r.dimension >= 5);
    for (int l = -2; l <= 2; ++l) {
        const BasisMonomial d{0, 0, 0, l};
        CHECK(std::find(r.central_support.begin(), r.central_support.end(), d) != r.central_support.end());
    }
    CHECK_THROWS(center_probe(kQ, grid, -1));
}
