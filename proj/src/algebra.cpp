#include "uq2/algebra.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace uq2 {

namespace {

void check_finite(cplx c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
        throw std::overflow_error("coefficient overflow in algebra arithmetic");
}

// Coefficients of (bb*)^j in the reduction of A_{n1} A_{n2} to A_{n1+n2} (bb*)^j.
std::vector<double> a_word_poly(const QParam& q, int n1, int n2) {
    std::vector<double> poly{1.0};
    if ((n1 >= 0 && n2 >= 0) || (n1 <= 0 && n2 <= 0)) return poly;

    auto times_linear = [&](double beta) {  // poly *= (1 - beta x)
        poly.push_back(0.0);
        for (std::size_t j = poly.size() - 1; j > 0; --j) poly[j] -= beta * poly[j - 1];
    };
    if (n1 > 0) {
        // a^p (a*)^r: peel a a* = 1 - bb*, then bb* moves right past (a*)^{r-s}
        int p = n1, r = -n2, steps = std::min(p, r);
        for (int s = 1; s <= steps; ++s) times_linear(q.mod_pow(-2L * (r - s)));
    } else {
        // (a*)^r a^p: peel a*a = 1 - |q|^2 bb*, then bb* moves right past a^{p-1-s}
        int r = -n1, p = n2, steps = std::min(p, r);
        for (int s = 0; s < steps; ++s) times_linear(q.mod_pow(2L * (p - s)));
    }
    return poly;
}

}  // namespace

int BasisMonomial::degree() const { return std::abs(n) + m + k + std::abs(l); }

std::ostream& operator<<(std::ostream& os, const BasisMonomial& b) {
    return os << "<" << b.n << "," << b.m << "," << b.k << "," << b.l << ">";
}

std::string to_string(const BasisMonomial& b) {
    std::ostringstream os;
    os << b;
    return os.str();
}

AlgebraElement::AlgebraElement(const BasisMonomial& b, cplx c) { add(b, c); }

AlgebraElement AlgebraElement::scalar(cplx c) { return AlgebraElement(BasisMonomial::unit(), c); }

cplx AlgebraElement::coeff(const BasisMonomial& b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? cplx{} : it->second;
}

void AlgebraElement::add(const BasisMonomial& b, cplx c) {
    check_finite(c);
    if (b.m < 0 || b.k < 0) throw std::invalid_argument("negative b-degree in basis monomial");
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
    Map out;
    for (const auto& [b, c] : terms_) {
        cplx v = c * s;
        check_finite(v);
        if (std::abs(v) >= kZeroThreshold) out.emplace(b, v);
    }
    terms_ = std::move(out);
    return *this;
}

double AlgebraElement::norm1() const {
    double s = 0;
    for (const auto& [b, c] : terms_) s += std::abs(c);
    return s;
}

AlgebraElement operator+(AlgebraElement x, const AlgebraElement& y) { return x += y; }
AlgebraElement operator-(AlgebraElement x, const AlgebraElement& y) { return x -= y; }
AlgebraElement operator*(cplx s, AlgebraElement x) { return x *= s; }

std::ostream& operator<<(std::ostream& os, const AlgebraElement& x) {
    if (x.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [b, c] : x.terms()) {
        if (!first) os << " + ";
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)" << b;
        first = false;
    }
    return os;
}

AlgebraElement gen_a() { return AlgebraElement({1, 0, 0, 0}); }
AlgebraElement gen_a_star() { return AlgebraElement({-1, 0, 0, 0}); }
AlgebraElement gen_b() { return AlgebraElement({0, 1, 0, 0}); }
AlgebraElement gen_b_star() { return AlgebraElement({0, 0, 1, 0}); }
AlgebraElement gen_D() { return AlgebraElement({0, 0, 0, 1}); }
AlgebraElement gen_D_star() { return AlgebraElement({0, 0, 0, -1}); }

TensorElement::TensorElement(const BasisMonomial& x, const BasisMonomial& y, cplx c) {
    add(x, y, c);
}

TensorElement TensorElement::product(const AlgebraElement& x, const AlgebraElement& y) {
    TensorElement t;
    for (const auto& [bx, cx] : x.terms())
        for (const auto& [by, cy] : y.terms()) t.add(bx, by, cx * cy);
    return t;
}

void TensorElement::add(const BasisMonomial& x, const BasisMonomial& y, cplx c) {
    check_finite(c);
    auto [it, inserted] = terms_.try_emplace(Key{x, y}, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kZeroThreshold) terms_.erase(it);
}

TensorElement& TensorElement::operator+=(const TensorElement& o) {
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
    return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) {
    for (const auto& [key, c] : o.terms_) add(key.first, key.second, -c);
    return *this;
}

TensorElement& TensorElement::operator*=(cplx s) {
    Map out;
    for (const auto& [key, c] : terms_) {
        cplx v = c * s;
        check_finite(v);
        if (std::abs(v) >= kZeroThreshold) out.emplace(key, v);
    }
    terms_ = std::move(out);
    return *this;
}

double TensorElement::norm1() const {
    double s = 0;
    for (const auto& [key, c] : terms_) s += std::abs(c);
    return s;
}

AlgebraElement multiply_monomials(const QParam& q, const BasisMonomial& x, const BasisMonomial& y) {
    // x y = A1 B1 D^{l1} A2 B2 D^{l2}.  D^{l1} passes A2 freely and picks up
    // c^{-l1 m2} c^{l1 k2} passing B2; B1 passes A2 with q^{m1 n2} qbar^{k1 n2}.
    cplx phase = q.c_pow(static_cast<long>(x.l) * (y.k - y.m)) *
                 q.q_pow(static_cast<long>(x.m) * y.n) * q.qbar_pow(static_cast<long>(x.k) * y.n);
    check_finite(phase);
    AlgebraElement out;
    const auto poly = a_word_poly(q, x.n, y.n);
    for (std::size_t j = 0; j < poly.size(); ++j) {
        int jj = static_cast<int>(j);
        out.add({x.n + y.n, x.m + y.m + jj, x.k + y.k + jj, x.l + y.l}, phase * poly[j]);
    }
    return out;
}

AlgebraElement multiply(const QParam& q, const AlgebraElement& x, const AlgebraElement& y) {
    AlgebraElement out;
    for (const auto& [bx, cx] : x.terms())
        for (const auto& [by, cy] : y.terms()) {
            AlgebraElement p = multiply_monomials(q, bx, by);
            for (const auto& [b, c] : p.terms()) out.add(b, cx * cy * c);
        }
    return out;
}

AlgebraElement power(const QParam& q, const AlgebraElement& x, int e) {
    if (e < 0) throw std::invalid_argument("negative power of an algebra element");
    AlgebraElement out = AlgebraElement::scalar(1.0);
    for (int i = 0; i < e; ++i) out = multiply(q, out, x);
    return out;
}

AlgebraElement star(const QParam& q, const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [b, c] : x.terms()) {
        // (A_n b^m b*^k D^l)* = D^{-l} b^k b*^m A_{-n}
        AlgebraElement left(BasisMonomial{0, 0, 0, -b.l});
        left = multiply(q, left, AlgebraElement(BasisMonomial{0, b.k, b.m, 0}));
        left = multiply(q, left, AlgebraElement(BasisMonomial{-b.n, 0, 0, 0}));
        left *= std::conj(c);
        out += left;
    }
    return out;
}

namespace {

enum class Gen { a, a_star, b, b_star, D, D_star };

TensorElement delta_generator(const QParam& q, Gen g) {
    switch (g) {
        case Gen::a: {
            TensorElement t = TensorElement::product(gen_a(), gen_a());
            TensorElement u = TensorElement::product(gen_b(), multiply(q, gen_D(), gen_b_star()));
            u *= -q.qbar();
            return t += u;
        }
        case Gen::b: {
            TensorElement t = TensorElement::product(gen_a(), gen_b());
            return t += TensorElement::product(gen_b(), multiply(q, gen_D(), gen_a_star()));
        }
        case Gen::a_star: {
            TensorElement t = TensorElement::product(gen_a_star(), gen_a_star());
            TensorElement u =
                TensorElement::product(gen_b_star(), multiply(q, gen_b(), gen_D_star()));
            u *= -q.q();
            return t += u;
        }
        case Gen::b_star: {
            TensorElement t = TensorElement::product(gen_a_star(), gen_b_star());
            return t += TensorElement::product(gen_b_star(), multiply(q, gen_a(), gen_D_star()));
        }
        case Gen::D:
            return TensorElement::product(gen_D(), gen_D());
        case Gen::D_star:
            return TensorElement::product(gen_D_star(), gen_D_star());
    }
    return {};
}

TensorElement tensor_unit() { return TensorElement(BasisMonomial::unit(), BasisMonomial::unit()); }

TensorElement tensor_power(const QParam& q, const TensorElement& x, int e) {
    TensorElement out = tensor_unit();
    for (int i = 0; i < e; ++i) out = tensor_multiply(q, out, x);
    return out;
}

TensorElement comultiply_monomial(const QParam& q, const BasisMonomial& b) {
    TensorElement t = tensor_power(q, delta_generator(q, b.n >= 0 ? Gen::a : Gen::a_star), std::abs(b.n));
    t = tensor_multiply(q, t, tensor_power(q, delta_generator(q, Gen::b), b.m));
    t = tensor_multiply(q, t, tensor_power(q, delta_generator(q, Gen::b_star), b.k));
    t = tensor_multiply(q, t, tensor_power(q, delta_generator(q, b.l >= 0 ? Gen::D : Gen::D_star), std::abs(b.l)));
    return t;
}

AlgebraElement antipode_generator(const QParam& q, Gen g) {
    switch (g) {
        case Gen::a: return gen_a_star();
        case Gen::a_star: return gen_a();
        case Gen::b: return AlgebraElement({0, 1, 0, -1}, -q.q());
        case Gen::b_star: return AlgebraElement({0, 0, 1, 1}, -1.0 / q.qbar());
        case Gen::D: return gen_D_star();
        case Gen::D_star: return gen_D();
    }
    return {};
}

}  // namespace

TensorElement tensor_multiply(const QParam& q, const TensorElement& x, const TensorElement& y) {
    TensorElement out;
    for (const auto& [kx, cx] : x.terms())
        for (const auto& [ky, cy] : y.terms()) {
            AlgebraElement left = multiply_monomials(q, kx.first, ky.first);
            AlgebraElement right = multiply_monomials(q, kx.second, ky.second);
            for (const auto& [bl, cl] : left.terms())
                for (const auto& [br, cr] : right.terms()) out.add(bl, br, cx * cy * cl * cr);
        }
    return out;
}

TensorElement tensor_star(const QParam& q, const TensorElement& x) {
    TensorElement out;
    for (const auto& [key, c] : x.terms()) {
        AlgebraElement left = star(q, AlgebraElement(key.first));
        AlgebraElement right = star(q, AlgebraElement(key.second));
        TensorElement t = TensorElement::product(left, right);
        t *= std::conj(c);
        out += t;
    }
    return out;
}

AlgebraElement contract(const QParam& q, const TensorElement& t) {
    AlgebraElement out;
    for (const auto& [key, c] : t.terms()) {
        AlgebraElement p = multiply_monomials(q, key.first, key.second);
        p *= c;
        out += p;
    }
    return out;
}

TensorElement comultiply(const QParam& q, const AlgebraElement& x) {
    TensorElement out;
    for (const auto& [b, c] : x.terms()) {
        TensorElement t = comultiply_monomial(q, b);
        t *= c;
        out += t;
    }
    return out;
}

cplx counit(const AlgebraElement& x) {
    cplx s = 0;
    for (const auto& [b, c] : x.terms())
        if (b.m == 0 && b.k == 0) s += c;
    return s;
}

AlgebraElement antipode(const QParam& q, const AlgebraElement& x) {
    AlgebraElement out;
    for (const auto& [b, c] : x.terms()) {
        // S is anti-multiplicative: S(A B1 B2 L) = S(L) S(B2) S(B1) S(A)
        AlgebraElement s = power(q, antipode_generator(q, b.l >= 0 ? Gen::D : Gen::D_star), std::abs(b.l));
        s = multiply(q, s, power(q, antipode_generator(q, Gen::b_star), b.k));
        s = multiply(q, s, power(q, antipode_generator(q, Gen::b), b.m));
        s = multiply(q, s, power(q, antipode_generator(q, b.n >= 0 ? Gen::a : Gen::a_star), std::abs(b.n)));
        s *= c;
        out += s;
    }
    return out;
}

TripleTensor comultiply_left(const QParam& q, const TensorElement& t) {
    TripleTensor out;
    for (const auto& [key, c] : t.terms()) {
        TensorElement d = comultiply_monomial(q, key.first);
        for (const auto& [dk, dc] : d.terms()) out[TripleKey{dk.first, dk.second, key.second}] += c * dc;
    }
    return out;
}

TripleTensor comultiply_right(const QParam& q, const TensorElement& t) {
    TripleTensor out;
    for (const auto& [key, c] : t.terms()) {
        TensorElement d = comultiply_monomial(q, key.second);
        for (const auto& [dk, dc] : d.terms()) out[TripleKey{key.first, dk.first, dk.second}] += c * dc;
    }
    return out;
}

double triple_distance(const TripleTensor& x, const TripleTensor& y) {
    double s = 0;
    for (const auto& [key, c] : x) {
        auto it = y.find(key);
        s += std::abs(c - (it == y.end() ? cplx{} : it->second));
    }
    for (const auto& [key, c] : y)
        if (!x.count(key)) s += std::abs(c);
    return s;
}

}  // namespace uq2
