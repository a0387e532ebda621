#include <cmath>

#include "doctest.h"
#include "uq2/ncindex.hpp"

using namespace uq2;

namespace {

const double kSilver = std::sqrt(2.0) - 1.0;
const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

double p_squared_defect(const TorusElement& p) { return (p * p - p).norm1(); }

}  // namespace

TEST_CASE("torus multiplication follows the concrete relation") {
    TorusElement u1(kSilver), u2(kSilver);
    u1.add(1, 0, 1.0);
    u2.add(0, 1, 1.0);
    // u2 u1 = exp(-2 pi i theta) u1 u2
    const TorusElement lhs = u2 * u1;
    const TorusElement rhs = (u1 * u2).scaled(unit_phase(-kSilver));
    CHECK((lhs - rhs).norm1() < 1e-15);
    CHECK(((u1 * u1.adjoint()) - TorusElement::unit(kSilver)).norm1() < 1e-15);
}

TEST_CASE("operators on the plane match the symbolic relation") {
    const TorusPair pair = build_torus(kSilver, 10);
    CHECK(commutation_residual(pair, -1) <= 1e-12);
    CHECK(commutation_residual(pair, +1) > 0.5);
    CHECK(unitarity_residual(pair) <= 1e-12);
    const TorusPair flat = build_torus(0.0, 10);
    CHECK(commutation_residual(flat, +1) <= 1e-12);
    CHECK(commutation_residual(flat, -1) <= 1e-12);
    CHECK_THROWS(build_torus(kSilver, 4));
}

TEST_CASE("phase operator values") {
    CHECK(std::abs(phase_value(3, 4) - cplx(0.6, 0.8)) < 1e-15);
    CHECK(std::abs(phase_value(-1, 0) + 1.0) < 1e-15);
    CHECK(phase_value(0, 0) == cplx(1.0));
    CHECK(phase_value(0, 0, -1.0) == cplx(-1.0));
}

TEST_CASE("Powers-Rieffel symbol") {
    const RieffelSymbol s = rieffel_symbol(ProjectionSpec{});
    CHECK_FALSE(s.reflected);
    CHECK(s.theta_reduced == doctest::Approx(kSilver));
    const ProjectionDefects d = projection_defects(s, 2048);
    CHECK(d.idempotency <= 1e-6);
    CHECK(d.selfadjointness <= 1e-12);
    CHECK(std::abs(d.trace - kSilver) <= 1e-3);
    CHECK(d.identity_f <= 1e-12);
    CHECK(d.identity_g <= 1e-12);
    CHECK(d.identity_gg <= 1e-12);
}

TEST_CASE("idempotency improves with the Fourier cutoff") {
    double prev = 1e9;
    for (int K : {64, 128, 256}) {
        ProjectionSpec spec;
        spec.fourier_cutoff = K;
        const double e = p_squared_defect(rieffel_symbol(spec).p);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev <= 1e-6);
}

TEST_CASE("a linear ramp still gives an approximate projection") {
    ProjectionSpec spec;
    spec.shape = RampShape::linear;
    const RieffelSymbol s = rieffel_symbol(spec);
    CHECK(std::abs(s.p.trace().real() - kSilver) <= 1e-3);
    CHECK(projection_defects(s, 2048).identity_f <= 1e-12);
}

TEST_CASE("bad ramp widths are refused") {
    ProjectionSpec spec;
    spec.ramp_width = 0.5;
    CHECK_THROWS(rieffel_symbol(spec));
    spec.ramp_width = -0.1;
    CHECK_THROWS(rieffel_symbol(spec));
}

TEST_CASE("Chern number") {
    const ChernResult c = chern_number(ProjectionSpec{});
    CHECK(std::abs(c.value) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(c.distance <= 1e-6);
    CHECK(c.rounded == 1);

    ProjectionSpec golden;
    golden.theta = kGolden;
    const ChernResult g = chern_number(golden);
    CHECK(std::abs(g.rounded) == 1);
    CHECK(g.distance <= 1e-6);

    CHECK(chern_number(TorusElement(kSilver)).value == 0.0);
    CHECK(chern_number(TorusElement::unit(kSilver)).value == 0.0);
}

TEST_CASE("trivial compression has index zero") {
    const TorusPair pair = build_torus(kSilver, 12);
    const SparseOperator id = SparseOperator::identity(pair.grid);
    const IndexResult r = fredholm_index_svd(id, phase_operator(12));
    CHECK(r.index == 0);
    CHECK(r.kernel == 0);
    CHECK(r.cokernel == 0);
    CHECK_FALSE(r.indeterminate);
}

TEST_CASE("Fredholm index matches the Chern number") {
    for (double theta : {kSilver, kGolden}) {
        ProjectionSpec spec;
        spec.theta = theta;
        const IndexReport r32 = index_report(spec, 32);
        const IndexReport r48 = index_report(spec, 48);
        CHECK(r48.consistent);
        CHECK(r48.fredholm.index == r48.chern.rounded);
        CHECK(std::abs(r48.fredholm.index) == 1);
        CHECK(r48.fredholm_origin_flipped.index == r48.fredholm.index);
        CHECK(r32.fredholm.index == r48.fredholm.index);
        CHECK(r48.operator_idempotency <= 1e-4);
        CHECK(r48.operator_idempotency < r32.operator_idempotency);
        CHECK(std::abs(r48.matrix_trace - r48.theta_reduced) <= 1e-3);
    }
}

TEST_CASE("pairing operator on a grid with an N leg") {
    const PairingCheck pc = pairing_operator_check(ProjectionSpec{});
    CHECK_FALSE(pc.result.indeterminate);
    CHECK(std::abs(pc.result.index) == 1);
    CHECK(pc.slice_deviation <= 1e-12);
}
