#include <cmath>
#include <random>

#include "doctest.h"
#include "uq2/algebra.hpp"
#include "uq2/checks.hpp"

using namespace uq2;

namespace {

const QParam kQ = make_qparam(0.5, std::sqrt(2.0) - 1.0);

double dist(const AlgebraElement& x, const AlgebraElement& y) { return (x - y).norm1(); }

AlgebraElement mono(int n, int m, int k, int l, cplx c = 1.0) { return AlgebraElement(BasisMonomial{n, m, k, l}, c); }

}  // namespace

TEST_CASE("defining relations as products of basis monomials") {
    // b a = q a b
    CHECK(dist(multiply(kQ, gen_b(), gen_a()), mono(1, 1, 0, 0, kQ.q())) < 1e-15);
    // a a* + b b* = 1
    CHECK(dist(multiply(kQ, gen_a(), gen_a_star()), mono(0, 0, 0, 0) - mono(0, 1, 1, 0)) < 1e-15);
    // D b = q^{-2} |q|^2 b D
    CHECK(dist(multiply(kQ, gen_D(), gen_b()), mono(0, 1, 0, 1, kQ.mod2() / kQ.q_pow(2))) < 1e-15);
    // a* a = 1 - |q|^2 b b*
    CHECK(dist(multiply(kQ, gen_a_star(), gen_a()), mono(0, 0, 0, 0) - mono(0, 1, 1, 0, kQ.mod2())) < 1e-15);
    // D D* = 1
    CHECK(dist(multiply(kQ, gen_D(), gen_D_star()), mono(0, 0, 0, 0)) < 1e-15);
}

TEST_CASE("star on basis monomials") {
    CHECK(dist(star(kQ, gen_b()), gen_b_star()) == 0.0);
    // (a b)* = b* a* = qbar^{-1} a* b*
    CHECK(dist(star(kQ, mono(1, 1, 0, 0)), mono(-1, 0, 1, 0, 1.0 / kQ.qbar())) < 1e-15);
}

TEST_CASE("unit law and involution on random elements") {
    std::mt19937_64 rng(7);
    const AlgebraElement one = AlgebraElement::scalar(1.0);
    for (int t = 0; t < 40; ++t) {
        const AlgebraElement x = random_element(rng, 3);
        CHECK(dist(multiply(kQ, one, x), x) == 0.0);
        CHECK(dist(multiply(kQ, x, one), x) == 0.0);
        CHECK(dist(star(kQ, star(kQ, x)), x) < 1e-12 * std::max(1.0, x.norm1()));
    }
}

TEST_CASE("coproduct on generators") {
    const TensorElement dD = comultiply(kQ, gen_D());
    CHECK(dD.terms().size() == 1);
    CHECK(std::abs(dD.terms().at({BasisMonomial{0, 0, 0, 1}, BasisMonomial{0, 0, 0, 1}}) - 1.0) < 1e-15);

    TensorElement expected(BasisMonomial{1, 0, 0, 0}, BasisMonomial{0, 1, 0, 0});
    // b (x) D a*, with D a* already in normal order as a* D
    expected.add(BasisMonomial{0, 1, 0, 0}, BasisMonomial{-1, 0, 0, 1}, 1.0);
    TensorElement diff = comultiply(kQ, gen_b());
    diff -= expected;
    CHECK(diff.norm1() < 1e-15);

    const TensorElement d1 = comultiply(kQ, AlgebraElement::scalar(1.0));
    CHECK(d1.terms().size() == 1);
}

TEST_CASE("counit and antipode examples") {
    CHECK(counit(mono(0, 0, 0, 5)) == cplx(1.0));
    CHECK(counit(mono(2, 1, 0, 0)) == cplx(0.0));
    CHECK(counit(mono(0, 0, 0, 0)) == cplx(1.0));
    CHECK(dist(antipode(kQ, gen_b()), mono(0, 1, 0, -1, -kQ.q())) < 1e-15);
    CHECK(dist(antipode(kQ, gen_a()), gen_a_star()) < 1e-15);
}

TEST_CASE("antipode reverses products of two generators") {
    const AlgebraElement gens[] = {gen_a(), gen_a_star(), gen_b(), gen_b_star(), gen_D(), gen_D_star()};
    for (const auto& x : gens)
        for (const auto& y : gens) {
            const AlgebraElement lhs = antipode(kQ, multiply(kQ, x, y));
            const AlgebraElement rhs = multiply(kQ, antipode(kQ, y), antipode(kQ, x));
            CHECK(dist(lhs, rhs) < 1e-12);
        }
}

TEST_CASE("Hopf residuals on seeded random triples") {
    const HopfSuite s = hopf_suite(kQ, 11, 40, 3);
    CHECK(s.samples == 40);
    CHECK(s.generators.size() == 6);
    CHECK(s.worst.max() <= 1e-10);
}

TEST_CASE("a corrupted antipode is detected") {
    // negative control: the antipode axiom fails for a plain transpose of a <-> a*
    const AlgebraElement x = gen_b();
    AlgebraElement left;
    const TensorElement dx = comultiply(kQ, x);
    for (const auto& [key, c] : dx.terms()) {
        AlgebraElement wrong = star(kQ, AlgebraElement(key.first));  // star in place of S
        AlgebraElement term = multiply(kQ, wrong, AlgebraElement(key.second));
        term *= c;
        left += term;
    }
    CHECK(dist(left, AlgebraElement::scalar(counit(x))) > 0.1);
}

TEST_CASE("zero threshold prunes tiny coefficients") {
    AlgebraElement x;
    x.add(BasisMonomial{1, 0, 0, 0}, 1e-16);
    CHECK(x.is_zero());
    x.add(BasisMonomial{1, 0, 0, 0}, 1.0);
    x.add(BasisMonomial{1, 0, 0, 0}, -1.0);
    CHECK(x.is_zero());
    CHECK(BasisMonomial{-2, 1, 3, -1}.degree() == 7);
}
