#include "uq2/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace uq2 {

void LaurentPoly::add(int power, cplx c) {
    auto [it, inserted] = coeffs_.try_emplace(power, c);
    if (!inserted) it->second += c;
    if (std::abs(it->second) < kZeroThreshold) coeffs_.erase(it);
}

cplx LaurentPoly::coeff(int power) const {
    auto it = coeffs_.find(power);
    return it == coeffs_.end() ? cplx{} : it->second;
}

cplx haar(const QParam& q, const AlgebraElement& x) {
    cplx s = 0;
    for (const auto& [b, c] : x.terms())
        if (b.n == 0 && b.m == b.k && b.l == 0)
            s += c * (1.0 - q.mod2()) / (1.0 - q.mod_pow(2L * b.m + 2));
    return s;
}

HaarNumeric haar_numeric(const QParam& q, const AlgebraElement& x, int i_max) {
    if (i_max < 1) throw std::invalid_argument("i_max must be at least 1");
    int up = 0, reach = 1;
    for (const auto& [b, c] : x.terms()) {
        up = std::max(up, b.n);
        reach = std::max({reach, b.m, b.k, std::abs(b.l)});
    }
    const TruncGrid grid(i_max + up + 1, reach, 0);
    const GeneratorSet gens = build_generators(q, grid);
    cplx sum = 0;
    for (int i = 0; i < i_max; ++i) {
        const std::size_t e = grid.index({i, 0, 0});
        const SparseVector w = apply_element(x, gens, SparseVector{{e, 1.0}});
        auto it = w.find(e);
        if (it != w.end()) sum += q.mod_pow(2L * i) * it->second;
    }
    // every monomial has norm at most one, so the omitted tail is bounded by
    // (1-|q|^2) sum_{i >= i_max} |q|^{2i} * ||x||_1 = |q|^{2 i_max} ||x||_1
    return {(1.0 - q.mod2()) * sum, q.mod_pow(2L * i_max) * x.norm1()};
}

LaurentPoly character(const AlgebraElement& x, Character which) {
    LaurentPoly p;
    for (const auto& [b, c] : x.terms()) {
        if (b.m != 0 || b.k != 0) continue;
        p.add(which == Character::phi ? b.l : b.n, c);
    }
    return p;
}

AlgebraElement expectation_closed_form(const AlgebraElement& x, Character which) {
    AlgebraElement out;
    for (const auto& [b, c] : x.terms()) {
        bool keep = which == Character::phi ? b.l == 0 : b.n + b.m - b.k == 0;
        if (keep) out.add(b, c);
    }
    return out;
}

ExpectationResult expectation(const QParam& q, const AlgebraElement& x, Character which) {
    ExpectationResult r;
    const TensorElement d = comultiply(q, x);
    r.value = apply_left(d, [which](const BasisMonomial& left) {
        return character(AlgebraElement(left), which).haar_circle();
    });
    r.closed_form = expectation_closed_form(x, which);
    r.discrepancy = (r.value - r.closed_form).norm1();
    return r;
}

double watatani_bound_formula(int n, Character which) {
    const double nn = n;
    if (which == Character::phi) return 3.0 * nn / (2.0 * nn * nn + 1.0);
    return (3.0 * nn + 3.0) / (2.0 * nn * nn + 4.0 * nn + 3.0);
}

double watatani_closed_form(int n, Character which) {
    // phi sums n translates of one vector; psi sums n+1 of them
    const int terms = which == Character::phi ? n : n + 1;
    double s = 0;
    for (int j = 1; j < terms; ++j) s += static_cast<double>(terms - j) * (terms - j);
    return 2.0 * s / terms;
}

namespace {

// <v, w> with v, w sparse
cplx inner(const SparseVector& v, const SparseVector& w) {
    cplx s = 0;
    for (const auto& [i, x] : v) {
        auto it = w.find(i);
        if (it != w.end()) s += std::conj(x) * it->second;
    }
    return s;
}

// E applied through the coaction (chi (x) id) Delta, which is multiplicative
// because chi is a character: each generator's image is read off its
// coproduct, then images are multiplied in C[t, 1/t] (x) A.
AlgebraElement expectation_by_coaction(const QParam& q, const AlgebraElement& x, Character which) {
    using Key = std::pair<int, BasisMonomial>;
    using Image = std::map<Key, cplx>;
    auto image_of = [&](const AlgebraElement& g) {
        Image img;
        const TensorElement d = comultiply(q, g);
        for (const auto& [key, c] : d.terms()) {
            const LaurentPoly chi = character(AlgebraElement(key.first), which);
            for (const auto& [pw, lc] : chi.coeffs()) img[{pw, key.second}] += c * lc;
        }
        return img;
    };
    auto mul = [&](const Image& u, const Image& v) {
        Image out;
        for (const auto& [ku, cu] : u)
            for (const auto& [kv, cv] : v) {
                const AlgebraElement prod = multiply_monomials(q, ku.second, kv.second);
                for (const auto& [b, c] : prod.terms()) out[{ku.first + kv.first, b}] += cu * cv * c;
            }
        return out;
    };
    std::map<int, Image> cache;
    auto gen_image = [&](int tag) -> const Image& {
        auto it = cache.find(tag);
        if (it != cache.end()) return it->second;
        static const BasisMonomial gens[] = {{1, 0, 0, 0}, {-1, 0, 0, 0}, {0, 1, 0, 0},
                                             {0, 0, 1, 0}, {0, 0, 0, 1},  {0, 0, 0, -1}};
        return cache.emplace(tag, image_of(AlgebraElement(gens[tag]))).first->second;
    };

    AlgebraElement out;
    for (const auto& [b, c] : x.terms()) {
        Image acc{{{0, BasisMonomial::unit()}, 1.0}};
        auto times = [&](int tag, int e) {
            for (int i = 0; i < e; ++i) acc = mul(acc, gen_image(tag));
        };
        times(b.n >= 0 ? 0 : 1, std::abs(b.n));
        times(2, b.m);
        times(3, b.k);
        times(b.l >= 0 ? 4 : 5, std::abs(b.l));
        for (const auto& [key, v] : acc)
            if (key.first == 0) out.add(key.second, c * v);
    }
    return out;
}

}  // namespace

AlgebraElement expectation_coaction(const QParam& q, const AlgebraElement& x, Character which) {
    return expectation_by_coaction(q, x, which);
}

ProbeReport watatani_probe(const QParam& q, int n, Character which) {
    if (n < 1) throw std::invalid_argument("watatani probe needs n >= 1");
    ProbeReport r;
    r.n = n;
    r.grid = TruncGrid(1, 2 * n + 2, 0);
    const GeneratorSet gens = build_generators(q, r.grid);

    // x_n = sum_{j<n} D^j with xi on the third leg, or y_n = sum_{j<=n} b^j with xi on the middle leg
    AlgebraElement x;
    SparseVector xi;
    if (which == Character::phi) {
        for (int j = 0; j < n; ++j) x.add({0, 0, 0, j}, 1.0);
        for (int i = 0; i < n; ++i) xi[r.grid.index({0, 0, i})] = 1.0;
    } else {
        for (int j = 0; j <= n; ++j) x.add({0, j, 0, 0}, 1.0);
        for (int i = 0; i <= n; ++i) xi[r.grid.index({0, i, 0})] = 1.0;
    }

    const AlgebraElement xx = multiply(q, star(q, x), x);
    const AlgebraElement exx = expectation_by_coaction(q, xx, which);
    const double fast_gap = (exx - expectation_closed_form(xx, which)).norm1();
    if (fast_gap > kExpectationRouteTolerance * std::max(1.0, xx.norm1()))
        throw std::logic_error("conditional expectation routes disagree inside the probe");

    const double norm_xi = inner(xi, xi).real();
    const double full = inner(xi, apply_element(xx, gens, xi)).real();
    const double kept = inner(xi, apply_element(exx, gens, xi)).real();
    r.rayleigh_value = (full - kept) / norm_xi;
    r.bound_numeric = kept / full;
    r.bound_c = watatani_bound_formula(n, which);
    r.closed_form_value = watatani_closed_form(n, which);
    return r;
}

}  // namespace uq2
