#pragma once

#include <map>

#include "uq2/algebra.hpp"
#include "uq2/rep.hpp"

namespace uq2 {

// Finite Laurent polynomial in the circle generator t.
class LaurentPoly {
public:
    using Map = std::map<int, cplx>;
    const Map& coeffs() const { return coeffs_; }
    void add(int power, cplx c);
    cplx coeff(int power) const;
    cplx haar_circle() const { return coeff(0); }  // h_T
    bool is_zero() const { return coeffs_.empty(); }

private:
    Map coeffs_;
};

enum class Character { phi, psi };

cplx haar(const QParam& q, const AlgebraElement& x);

struct HaarNumeric {
    cplx value;
    double tail_bound;
};
// (1-|q|^2) sum_{i<i_max} |q|^{2i} <e_{i,0,0}, pi(x) e_{i,0,0}> on a grid just
// large enough to hold every path of pi(x) started at those vectors.
HaarNumeric haar_numeric(const QParam& q, const AlgebraElement& x, int i_max);

LaurentPoly character(const AlgebraElement& x, Character which);

struct ExpectationResult {
    AlgebraElement value;        // symbolic route through the coproduct
    AlgebraElement closed_form;  // delta-formula fast path
    double discrepancy = 0.0;    // 1-norm of the difference
};
inline constexpr double kExpectationRouteTolerance = 1e-10;

ExpectationResult expectation(const QParam& q, const AlgebraElement& x, Character which);
AlgebraElement expectation_closed_form(const AlgebraElement& x, Character which);
// Same expectation through the multiplicative coaction (chi (x) id) Delta
// built from generator coproducts; usable at degrees where expanding the
// full coproduct is too expensive.
AlgebraElement expectation_coaction(const QParam& q, const AlgebraElement& x, Character which);

struct ProbeReport {
    int n = 0;
    double rayleigh_value = 0.0;
    double bound_c = 0.0;            // the closed-form bound
    double closed_form_value = 0.0;
    double bound_numeric = 0.0;      // <E(x*x) xi, xi> / <x*x xi, xi> on the grid
    TruncGrid grid;
};

ProbeReport watatani_probe(const QParam& q, int n, Character which);

double watatani_bound_formula(int n, Character which);
double watatani_closed_form(int n, Character which);

}  // namespace uq2
