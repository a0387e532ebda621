#include <cmath>

#include "doctest.h"
#include "uq2/checks.hpp"
#include "uq2/states.hpp"

using namespace uq2;

namespace {

const QParam kQ = make_qparam(0.5, std::sqrt(2.0) - 1.0);

AlgebraElement mono(int n, int m, int k, int l) { return AlgebraElement(BasisMonomial{n, m, k, l}); }

// (2/t) sum_{j=1}^{t-1} (t - j)^2 for t translates, summed independently of the library
double rayleigh_oracle(int t) {
    double s = 0;
    for (int j = 1; j < t; ++j) s += double(t - j) * double(t - j);
    return 2.0 * s / t;
}

}  // namespace

TEST_CASE("Haar state values") {
    CHECK(std::abs(haar(kQ, mono(0, 0, 0, 0)) - 1.0) < 1e-15);
    const double q2 = 0.25;
    CHECK(std::abs(haar(kQ, mono(0, 1, 1, 0)) - (1 - q2) / (1 - q2 * q2)) < 1e-15);
    CHECK(std::abs(haar(kQ, mono(0, 1, 1, 0)) - 0.8) < 1e-15);
    CHECK(haar(kQ, mono(0, 0, 0, 1)) == cplx(0.0));
}

TEST_CASE("truncated series against the closed form") {
    const HaarNumeric n = haar_numeric(kQ, mono(0, 1, 1, 0), 60);
    CHECK(std::abs(n.value - 0.8) < 1e-12);
    CHECK(n.tail_bound < 1e-30);
    CHECK(std::abs(haar_numeric(kQ, mono(0, 0, 0, 0), 60).value - 1.0) < 1e-12);
    CHECK(haar_numeric(kQ, mono(1, 0, 0, 0), 60).value == cplx(0.0));
    const HaarSuite s = haar_suite(kQ, 2, 60, 9, 20, 3);
    CHECK(s.closed_vs_numeric <= 1e-10);
    CHECK(s.invariance <= 1e-10);
    CHECK(s.min_positivity > 0);
}

TEST_CASE("characters") {
    const LaurentPoly d3 = character(mono(0, 0, 0, 3), Character::phi);
    CHECK(d3.coeffs().size() == 1);
    CHECK(d3.coeff(3) == cplx(1.0));
    const LaurentPoly p = character(mono(-2, 0, 0, 5), Character::psi);
    CHECK(p.coeffs().size() == 1);
    CHECK(p.coeff(-2) == cplx(1.0));
    CHECK(character(mono(0, 1, 0, 0), Character::phi).is_zero());
    CHECK(character(mono(0, 1, 0, 0), Character::psi).is_zero());
}

TEST_CASE("conditional expectations") {
    CHECK(expectation(kQ, mono(0, 0, 0, 1), Character::phi).value.is_zero());
    CHECK(expectation(kQ, mono(0, 1, 0, 0), Character::psi).value.is_zero());
    const AlgebraElement x = mono(2, 1, 3, 0);
    CHECK((expectation(kQ, x, Character::phi).value - x).norm1() < 1e-12);
    const AlgebraElement y = mono(0, 1, 1, 4);
    CHECK((expectation(kQ, y, Character::psi).value - y).norm1() < 1e-12);
    for (Character c : {Character::phi, Character::psi}) {
        const ExpectationSuite s = expectation_suite(kQ, c, 4, 20, 3);
        CHECK(s.route_discrepancy <= kExpectationRouteTolerance);
        CHECK(s.idempotence <= 1e-10);
        CHECK(s.bimodule <= 1e-10);
    }
}

TEST_CASE("Watatani probe values") {
    const ProbeReport p2 = watatani_probe(kQ, 2, Character::phi);
    CHECK(p2.rayleigh_value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p2.bound_c == doctest::Approx(6.0 / 9.0).epsilon(1e-15));
    const ProbeReport p3 = watatani_probe(kQ, 3, Character::phi);
    CHECK(p3.rayleigh_value == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(p3.bound_c == doctest::Approx(9.0 / 19.0).epsilon(1e-15));
    CHECK(watatani_probe(kQ, 1, Character::phi).bound_c == doctest::Approx(1.0));
    CHECK(watatani_bound_formula(10, Character::phi) == doctest::Approx(30.0 / 201.0).epsilon(1e-15));
}

TEST_CASE("Rayleigh quotient and bound for n up to 50") {
    double prev_phi = 2, prev_psi = 2;
    for (int n = 1; n <= 50; ++n) {
        const ProbeReport phi = watatani_probe(kQ, n, Character::phi);
        const ProbeReport psi = watatani_probe(kQ, n, Character::psi);
        const double oracle = rayleigh_oracle(n);
        if (oracle > 0) CHECK(std::abs(phi.rayleigh_value - oracle) <= 1e-9 * oracle);
        // psi sums b^0..b^n, one more translate than phi
        CHECK(std::abs(psi.rayleigh_value - rayleigh_oracle(n + 1)) <= 1e-9 * rayleigh_oracle(n + 1));
        CHECK(phi.bound_numeric == doctest::Approx(phi.bound_c).epsilon(1e-12));
        CHECK(psi.bound_numeric == doctest::Approx(psi.bound_c).epsilon(1e-12));
        CHECK(phi.bound_c == doctest::Approx(3.0 * n / (2.0 * n * n + 1)).epsilon(1e-14));
        CHECK(psi.bound_c ==
              doctest::Approx(3.0 * (n + 1) / (2.0 * n * n + 4.0 * n + 3)).epsilon(1e-14));
        CHECK(phi.bound_c < prev_phi);
        CHECK(psi.bound_c < prev_psi);
        prev_phi = phi.bound_c;
        prev_psi = psi.bound_c;
    }
    CHECK(prev_phi < 0.03);
    CHECK(prev_psi < 0.03);
}
