#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "uq2/qparam.hpp"

using namespace uq2;

TEST_CASE("real q is flagged as rational") {
    const QParam q = make_qparam(0.5, 0.0);
    CHECK(q.q().real() == doctest::Approx(0.5));
    CHECK(std::abs(q.q().imag()) < 1e-15);
    REQUIRE(q.warnings().size() == 1);
    CHECK(q.warnings()[0].find("theta_near_rational") != std::string::npos);
}

TEST_CASE("irrational argument carries no warning") {
    const QParam q = make_qparam(0.5, std::sqrt(2.0) - 1.0);
    CHECK(q.warnings().empty());
    CHECK(std::abs(q.q()) == doctest::Approx(0.5));
    CHECK(std::arg(q.q()) == doctest::Approx(kPi * (std::sqrt(2.0) - 1.0)));
}

TEST_CASE("modulus outside (0,1) is rejected") {
    CHECK_THROWS_AS(make_qparam(1.5, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(make_qparam(1.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(make_qparam(0.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(make_qparam(NAN, 0.3), std::invalid_argument);
}

TEST_CASE("integer powers agree with repeated multiplication") {
    const QParam q = make_qparam(0.7, 0.3);
    cplx acc = 1.0;
    for (int e = 0; e <= 12; ++e) {
        CHECK(std::abs(q.q_pow(e) - acc) < 1e-14);
        CHECK(std::abs(q.q_pow(-e) * acc - 1.0) < 1e-12);
        acc *= q.q();
    }
    // c = q^2 / |q|^2
    CHECK(std::abs(q.c_pow(1) - q.q_pow(2) / q.mod2()) < 1e-15);
    CHECK(std::abs(q.qbar_pow(3) - std::conj(q.q_pow(3))) < 1e-15);
}

TEST_CASE("phases come from theta, reduced before the trig call") {
    CHECK(std::abs(unit_phase(0.25) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(unit_phase(1e6 + 0.5) - cplx(-1, 0)) < 1e-9);
    CHECK(std::abs(unit_phase(-0.25) - cplx(0, -1)) < 1e-15);
}

TEST_CASE("continued-fraction convergents") {
    auto r = rational_approximation(0.375, 64, 1e-12);
    REQUIRE(r);
    CHECK(r->numerator == 3);
    CHECK(r->denominator == 8);
    CHECK_FALSE(rational_approximation(std::sqrt(2.0) - 1.0, 64, 1e-10));
    // theta near a rational with a small denominator still warns
    CHECK_FALSE(make_qparam(0.5, 1.0 / 3.0 + 1e-13).warnings().empty());
}
