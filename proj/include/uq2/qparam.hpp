#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace uq2 {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Rational p/r close to theta, found among continued-fraction convergents.
struct RationalApprox {
    long numerator = 0;
    long denominator = 1;
    double error = 0.0;
};

// q = modulus * exp(pi i theta).  The argument is carried explicitly so that
// every phase is built from theta and never recovered with a complex log.
struct QParam {
    double modulus = 0.5;
    double theta = 0.0;
    std::optional<RationalApprox> near_rational;

    cplx q() const;
    cplx qbar() const;

    // q^e, qbar^e and c^e for integer e, c = q^2/|q|^2 = exp(2 pi i theta)
    cplx q_pow(long e) const;
    cplx qbar_pow(long e) const;
    cplx c_pow(long e) const;

    // exp(2 pi i theta t) for a real multiplier t
    cplx turn(double t) const;

    double mod_pow(long e) const;  // |q|^e
    double mod2() const { return modulus * modulus; }

    std::vector<std::string> warnings() const;
};

// Largest convergent denominator looked at, and the closeness threshold.
inline constexpr long kRationalDenominatorCap = 64;
inline constexpr double kRationalTolerance = 1e-10;

QParam make_qparam(double modulus, double theta);

std::optional<RationalApprox> rational_approximation(double x, long max_denominator,
                                                     double tolerance);

// exp(2 pi i x), with x reduced mod 1 before the trig call
cplx unit_phase(double x);

}  // namespace uq2
