#include <cmath>
#include <random>

#include "doctest.h"
#include "uq2/checks.hpp"
#include "uq2/rewrite.hpp"

using namespace uq2;

namespace {
const QParam kQ = make_qparam(0.5, std::sqrt(2.0) - 1.0);
}

TEST_CASE("words print and parse") {
    const Word w = parse_word("b a* D");
    REQUIRE(w.size() == 3);
    CHECK(w[0] == Letter::b);
    CHECK(w[1] == Letter::a_star);
    CHECK(parse_word(to_string(w)) == w);
    CHECK_THROWS(parse_word("b x"));
}

TEST_CASE("normal words of basis monomials are fixed points") {
    const BasisMonomial b{-2, 1, 2, -1};
    const RewriteResult r = normal_order(kQ, word_of(b));
    CHECK(r.steps == 0);
    CHECK((r.value - AlgebraElement(b)).norm1() == 0.0);
}

TEST_CASE("single-letter swaps") {
    CHECK((normal_order(kQ, parse_word("b a")).value - AlgebraElement(BasisMonomial{1, 1, 0, 0}, kQ.q())).norm1() <
          1e-15);
    const AlgebraElement sphere = normal_order(kQ, parse_word("a a*")).value + normal_order(kQ, parse_word("b b*")).value;
    CHECK((sphere - AlgebraElement::scalar(1.0)).norm1() < 1e-15);
}

TEST_CASE("rewriting agrees with the closed-form product and terminates") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 60; ++t) {
        const BasisMonomial x = random_monomial(rng, 3), y = random_monomial(rng, 3);
        Word w = word_of(x);
        const Word wy = word_of(y);
        w.insert(w.end(), wy.begin(), wy.end());
        const RewriteResult r = normal_order(kQ, w);
        const AlgebraElement direct = multiply_monomials(kQ, x, y);
        CHECK((r.value - direct).norm1() <= 1e-10 * std::max(1.0, direct.norm1()));
        CHECK(r.measure_decreased);
        CHECK(r.steps < rewrite_step_bound(w));
    }
}

TEST_CASE("termination measure drops on a swap") {
    CHECK(termination_measure(parse_word("a b")) < termination_measure(parse_word("b a")));
    CHECK(termination_measure(parse_word("D b")) > termination_measure(parse_word("b D")));
}
