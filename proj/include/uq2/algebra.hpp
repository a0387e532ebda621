#pragma once

#include <compare>
#include <map>
#include <ostream>
#include <string>
#include <utility>

#include "uq2/qparam.hpp"

namespace uq2 {

inline constexpr double kZeroThreshold = 1e-14;

// <n,m,k,l> = a^n b^m (b*)^k D^l, with (a*)^{-n} in place of a^n when n < 0.
struct BasisMonomial {
    int n = 0;
    int m = 0;
    int k = 0;
    int l = 0;

    auto operator<=>(const BasisMonomial&) const = default;

    int degree() const;  // |n| + m + k + |l|
    static BasisMonomial unit() { return {}; }
};

std::ostream& operator<<(std::ostream& os, const BasisMonomial& b);
std::string to_string(const BasisMonomial& b);

class AlgebraElement {
public:
    using Map = std::map<BasisMonomial, cplx>;

    AlgebraElement() = default;
    AlgebraElement(const BasisMonomial& b, cplx c = 1.0);
    static AlgebraElement scalar(cplx c);

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    cplx coeff(const BasisMonomial& b) const;

    // Adds c to the coefficient of b, pruning anything that falls under the threshold.
    void add(const BasisMonomial& b, cplx c);

    AlgebraElement& operator+=(const AlgebraElement& o);
    AlgebraElement& operator-=(const AlgebraElement& o);
    AlgebraElement& operator*=(cplx s);

    double norm1() const;

private:
    Map terms_;
};

AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y);
AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y);
AlgebraElement operator*(cplx s, AlgebraElement x);
std::ostream& operator<<(std::ostream& os, const AlgebraElement& x);

// Generators as algebra elements.
AlgebraElement gen_a();
AlgebraElement gen_a_star();
AlgebraElement gen_b();
AlgebraElement gen_b_star();
AlgebraElement gen_D();
AlgebraElement gen_D_star();

class TensorElement {
public:
    using Key = std::pair<BasisMonomial, BasisMonomial>;
    using Map = std::map<Key, cplx>;

    TensorElement() = default;
    TensorElement(const BasisMonomial& x, const BasisMonomial& y, cplx c = 1.0);
    static TensorElement product(const AlgebraElement& x, const AlgebraElement& y);

    const Map& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add(const BasisMonomial& x, const BasisMonomial& y, cplx c);
    TensorElement& operator+=(const TensorElement& o);
    TensorElement& operator-=(const TensorElement& o);
    TensorElement& operator*=(cplx s);
    double norm1() const;

private:
    Map terms_;
};

// Algebra operations.  All are pure; the QParam supplies the relations.
AlgebraElement multiply(const QParam& q, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement multiply_monomials(const QParam& q, const BasisMonomial& x,
                                  const BasisMonomial& y);
AlgebraElement power(const QParam& q, const AlgebraElement& x, int e);
AlgebraElement star(const QParam& q, const AlgebraElement& x);

TensorElement comultiply(const QParam& q, const AlgebraElement& x);
cplx counit(const AlgebraElement& x);
AlgebraElement antipode(const QParam& q, const AlgebraElement& x);

// Tensor-algebra helpers used by the Hopf axioms.
TensorElement tensor_multiply(const QParam& q, const TensorElement& x, const TensorElement& y);
TensorElement tensor_star(const QParam& q, const TensorElement& x);
AlgebraElement contract(const QParam& q, const TensorElement& t);  // x (x) y -> x y

// Applies a linear functional to one leg, leaving an algebra element.
template <class F>
AlgebraElement apply_left(const TensorElement& t, F&& f) {
    AlgebraElement out;
    for (const auto& [key, c] : t.terms()) out.add(key.second, c * f(key.first));
    return out;
}
template <class F>
AlgebraElement apply_right(const TensorElement& t, F&& f) {
    AlgebraElement out;
    for (const auto& [key, c] : t.terms()) out.add(key.first, c * f(key.second));
    return out;
}

// (Delta (x) id) and (id (x) Delta) of a tensor, as maps into triple tensors
// flattened to nested pairs.  Only used for the coassociativity check.
struct TripleKey {
    BasisMonomial x, y, z;
    auto operator<=>(const TripleKey&) const = default;
};
using TripleTensor = std::map<TripleKey, cplx>;
TripleTensor comultiply_left(const QParam& q, const TensorElement& t);
TripleTensor comultiply_right(const QParam& q, const TensorElement& t);
double triple_distance(const TripleTensor& x, const TripleTensor& y);

}  // namespace uq2
