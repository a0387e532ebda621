#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "uq2/algebra.hpp"

namespace uq2 {

// Letter-by-letter normal ordering.  This is deliberately slow and local: it
// applies one adjacent rewrite at a time, so it serves as an independent
// check on the closed-form monomial product in algebra.cpp.
enum class Letter { a, a_star, b, b_star, D, D_star };

using Word = std::vector<Letter>;

Word word_of(const BasisMonomial& b);
std::string to_string(const Word& w);
Word parse_word(const std::string& s);  // e.g. "b a* D", tokens separated by spaces

// (#a-letters, #D-letters, inversions); strictly decreases along every rewrite.
using Measure = std::array<long, 3>;
Measure termination_measure(const Word& w);

struct RewriteResult {
    AlgebraElement value;
    std::size_t steps = 0;
    bool measure_decreased = true;  // every rewrite lowered the measure of its word
};

RewriteResult normal_order(const QParam& q, const Word& w);

// A generous step bound for a word of the given length.
std::size_t rewrite_step_bound(const Word& w);

}  // namespace uq2
