#include "uq2/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uq2 {

BasisMonomial random_monomial(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> sym(-max_degree, max_degree);
    std::uniform_int_distribution<int> pos(0, max_degree);
    for (;;) {
        const BasisMonomial b{sym(rng), pos(rng), pos(rng), sym(rng)};
        if (b.degree() <= max_degree) return b;
    }
}

AlgebraElement random_element(std::mt19937_64& rng, int max_degree, int max_terms) {
    std::uniform_int_distribution<int> count(1, std::max(1, max_terms));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    AlgebraElement x;
    const int terms = count(rng);
    for (int t = 0; t < terms; ++t) {
        const BasisMonomial b = random_monomial(rng, max_degree);
        const double re = unit(rng);
        const double im = unit(rng);
        x.add(b, cplx(re, im));
    }
    if (x.is_zero()) x.add(BasisMonomial::unit(), 1.0);
    return x;
}

double HopfResiduals::max() const {
    return std::max({coassociativity, counit_left, counit_right, antipode_left, antipode_right, star_coproduct,
                     star_product, associativity, involution});
}

namespace {

double tensor_distance(const TensorElement& x, const TensorElement& y) {
    TensorElement d = x;
    d -= y;
    return d.norm1();
}

HopfResiduals worst_of(const HopfResiduals& a, const HopfResiduals& b) {
    HopfResiduals r;
    r.coassociativity = std::max(a.coassociativity, b.coassociativity);
    r.counit_left = std::max(a.counit_left, b.counit_left);
    r.counit_right = std::max(a.counit_right, b.counit_right);
    r.antipode_left = std::max(a.antipode_left, b.antipode_left);
    r.antipode_right = std::max(a.antipode_right, b.antipode_right);
    r.star_coproduct = std::max(a.star_coproduct, b.star_coproduct);
    r.star_product = std::max(a.star_product, b.star_product);
    r.associativity = std::max(a.associativity, b.associativity);
    r.involution = std::max(a.involution, b.involution);
    return r;
}

}  // namespace

HopfResiduals hopf_residuals(const QParam& q, const AlgebraElement& x, const AlgebraElement& y,
                             const AlgebraElement& z) {
    HopfResiduals r;
    const TensorElement dx = comultiply(q, x);

    r.coassociativity = triple_distance(comultiply_left(q, dx), comultiply_right(q, dx));

    auto eps = [](const BasisMonomial& b) { return counit(AlgebraElement(b)); };
    r.counit_left = (apply_left(dx, eps) - x).norm1();
    r.counit_right = (apply_right(dx, eps) - x).norm1();

    // m (S (x) id) Delta and m (id (x) S) Delta against eps(x) 1
    AlgebraElement left, right;
    for (const auto& [key, c] : dx.terms()) {
        AlgebraElement l = multiply(q, antipode(q, AlgebraElement(key.first)), AlgebraElement(key.second));
        AlgebraElement rr = multiply(q, AlgebraElement(key.first), antipode(q, AlgebraElement(key.second)));
        l *= c;
        rr *= c;
        left += l;
        right += rr;
    }
    const AlgebraElement unit = AlgebraElement::scalar(counit(x));
    r.antipode_left = (left - unit).norm1();
    r.antipode_right = (right - unit).norm1();

    const AlgebraElement xs = star(q, x);
    r.star_coproduct = tensor_distance(comultiply(q, xs), tensor_star(q, dx));
    r.involution = (star(q, xs) - x).norm1();

    // Products of degree-3 elements carry |q|^{-2j} factors, so coefficients
    // reach 1e13 at |q| = 0.5; these two are relative to max(1, |result|_1).
    const AlgebraElement sxy = star(q, multiply(q, x, y));
    r.star_product = (sxy - multiply(q, star(q, y), xs)).norm1() / std::max(1.0, sxy.norm1());
    const AlgebraElement xy_z = multiply(q, multiply(q, x, y), z);
    r.associativity = (xy_z - multiply(q, x, multiply(q, y, z))).norm1() / std::max(1.0, xy_z.norm1());
    return r;
}

HopfSuite hopf_suite(const QParam& q, std::uint64_t seed, std::size_t samples, int max_degree) {
    HopfSuite suite;
    const AlgebraElement gens[] = {gen_a(), gen_a_star(), gen_b(), gen_b_star(), gen_D(), gen_D_star()};
    for (const auto& g : gens) {
        suite.generators.push_back(hopf_residuals(q, g, g, g));
        suite.worst = worst_of(suite.worst, suite.generators.back());
    }
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        const AlgebraElement x = random_element(rng, max_degree);
        const AlgebraElement y = random_element(rng, max_degree);
        const AlgebraElement z = random_element(rng, max_degree);
        suite.worst = worst_of(suite.worst, hopf_residuals(q, x, y, z));
    }
    suite.samples = samples;
    return suite;
}

HaarSuite haar_suite(const QParam& q, int box, int i_max, std::uint64_t seed, std::size_t samples,
                     int max_degree) {
    HaarSuite suite;
    for (int n = -box; n <= box; ++n)
        for (int m = 0; m <= box; ++m)
            for (int k = 0; k <= box; ++k)
                for (int l = -box; l <= box; ++l) {
                    const AlgebraElement x(BasisMonomial{n, m, k, l});
                    const HaarNumeric num = haar_numeric(q, x, i_max);
                    suite.closed_vs_numeric = std::max(suite.closed_vs_numeric, std::abs(haar(q, x) - num.value));
                    suite.tail_bound = std::max(suite.tail_bound, num.tail_bound);
                    ++suite.monomials;
                }

    std::mt19937_64 rng(seed);
    auto h = [&q](const BasisMonomial& b) { return haar(q, AlgebraElement(b)); };
    suite.min_positivity = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        const AlgebraElement x = random_element(rng, max_degree);
        const TensorElement dx = comultiply(q, x);
        const AlgebraElement target = AlgebraElement::scalar(haar(q, x));
        suite.invariance = std::max({suite.invariance, (apply_right(dx, h) - target).norm1(),
                                     (apply_left(dx, h) - target).norm1()});
        suite.min_positivity = std::min(suite.min_positivity, haar(q, multiply(q, star(q, x), x)).real());
    }
    suite.samples = samples;
    return suite;
}

ExpectationSuite expectation_suite(const QParam& q, Character which, std::uint64_t seed, std::size_t samples,
                                   int max_degree) {
    ExpectationSuite suite;
    std::mt19937_64 rng(seed);
    // elements of the fixed-point algebra of E
    auto fixed = [&rng, which, max_degree]() {
        for (;;) {
            BasisMonomial b = random_monomial(rng, max_degree);
            if (which == Character::phi) {
                b.l = 0;
                return b;
            }
            b.n = 0;
            b.k = b.m;
            if (b.degree() <= 2 * max_degree) return b;
        }
    };
    for (std::size_t s = 0; s < samples; ++s) {
        const AlgebraElement x = random_element(rng, max_degree);
        const ExpectationResult e = expectation(q, x, which);
        suite.route_discrepancy = std::max(suite.route_discrepancy, e.discrepancy);
        suite.idempotence =
            std::max(suite.idempotence, (expectation_closed_form(e.value, which) - e.value).norm1());
        const AlgebraElement u(fixed()), v(fixed());
        // the product has high degree; the multiplicative coaction route keeps this cheap
        const AlgebraElement lhs = expectation_coaction(q, multiply(q, multiply(q, u, x), v), which);
        const AlgebraElement rhs = multiply(q, multiply(q, u, e.value), v);
        suite.bimodule = std::max(suite.bimodule, (lhs - rhs).norm1());
    }
    suite.samples = samples;
    return suite;
}

}  // namespace uq2
