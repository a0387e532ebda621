#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uq2/algebra.hpp"
#include "uq2/states.hpp"

namespace uq2 {

// Random monomial with |n| + m + k + |l| <= max_degree, drawn uniformly from
// the box |n|, m, k, |l| <= max_degree and rejected until the degree fits.
BasisMonomial random_monomial(std::mt19937_64& rng, int max_degree);
// 1..max_terms monomials with coefficients uniform in the unit square.
AlgebraElement random_element(std::mt19937_64& rng, int max_degree, int max_terms = 3);

struct HopfResiduals {
    double coassociativity = 0;
    double counit_left = 0;
    double counit_right = 0;
    double antipode_left = 0;
    double antipode_right = 0;
    double star_coproduct = 0;  // Delta(x*) - Delta(x)^*
    double star_product = 0;    // (xy)* - y* x*, relative
    double associativity = 0;   // (xy)z - x(yz), relative
    double involution = 0;      // x** - x
    double max() const;
};

// Every residual is a coefficient 1-norm; the two product identities are
// divided by max(1, norm of the product).
HopfResiduals hopf_residuals(const QParam& q, const AlgebraElement& x, const AlgebraElement& y,
                             const AlgebraElement& z);

struct HopfSuite {
    std::size_t samples = 0;
    HopfResiduals worst;
    std::vector<HopfResiduals> generators;  // a, a*, b, b*, D, D*
};

// Generators first, then `samples` seeded random triples of degree <= max_degree.
HopfSuite hopf_suite(const QParam& q, std::uint64_t seed, std::size_t samples, int max_degree);

struct HaarSuite {
    std::size_t monomials = 0;
    double closed_vs_numeric = 0;  // max |h(x) - truncated series| over the box
    double tail_bound = 0;         // largest reported truncation tail
    double invariance = 0;         // max over samples of both one-sided invariance defects
    double min_positivity = 0;     // min h(x* x) over samples
    std::size_t samples = 0;
};

HaarSuite haar_suite(const QParam& q, int box, int i_max, std::uint64_t seed, std::size_t samples,
                     int max_degree);

struct ExpectationSuite {
    double route_discrepancy = 0;  // closed form vs coproduct route
    double idempotence = 0;        // E(E(x)) - E(x)
    double bimodule = 0;           // E(u x v) - u E(x) v for fixed-point u, v
    std::size_t samples = 0;
};

ExpectationSuite expectation_suite(const QParam& q, Character which, std::uint64_t seed, std::size_t samples,
                                   int max_degree);

}  // namespace uq2
