#include "uq2/rewrite.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace uq2 {

namespace {

int rank_of(Letter x) {
    switch (x) {
        case Letter::a:
        case Letter::a_star: return 0;
        case Letter::b: return 1;
        case Letter::b_star: return 2;
        case Letter::D:
        case Letter::D_star: return 3;
    }
    return 0;
}

bool is_a(Letter x) { return x == Letter::a || x == Letter::a_star; }
bool is_D(Letter x) { return x == Letter::D || x == Letter::D_star; }

struct Item {
    cplx coeff;
    Word word;
};

// One rewrite of the pair (x, y) at position p.  Returns the replacement
// terms, each a coefficient and the two-letter slot contents.
struct Replacement {
    cplx coeff;
    Word middle;
};

bool rewrite_pair(const QParam& q, Letter x, Letter y, std::vector<Replacement>& out) {
    using L = Letter;
    const cplx c = q.c_pow(1);
    const double m2 = q.mod2();
    out.clear();
    // b-type letters moving left past a-type letters
    if (x == L::b && y == L::a) { out.push_back({q.q(), {L::a, L::b}}); return true; }
    if (x == L::b && y == L::a_star) { out.push_back({1.0 / q.q(), {L::a_star, L::b}}); return true; }
    if (x == L::b_star && y == L::a) { out.push_back({q.qbar(), {L::a, L::b_star}}); return true; }
    if (x == L::b_star && y == L::a_star) { out.push_back({1.0 / q.qbar(), {L::a_star, L::b_star}}); return true; }
    // D letters commute with a, a*
    if (is_D(x) && is_a(y)) { out.push_back({1.0, {y, x}}); return true; }
    // D letters moving right past b, b*
    if (x == L::D && y == L::b) { out.push_back({1.0 / c, {L::b, L::D}}); return true; }
    if (x == L::D_star && y == L::b) { out.push_back({c, {L::b, L::D_star}}); return true; }
    if (x == L::D && y == L::b_star) { out.push_back({c, {L::b_star, L::D}}); return true; }
    if (x == L::D_star && y == L::b_star) { out.push_back({1.0 / c, {L::b_star, L::D_star}}); return true; }
    // normality of b
    if (x == L::b_star && y == L::b) { out.push_back({1.0, {L::b, L::b_star}}); return true; }
    // sphere relations and unitarity of D
    if (x == L::a && y == L::a_star) {
        out.push_back({1.0, {}});
        out.push_back({-1.0, {L::b, L::b_star}});
        return true;
    }
    if (x == L::a_star && y == L::a) {
        out.push_back({1.0, {}});
        out.push_back({-m2, {L::b, L::b_star}});
        return true;
    }
    if ((x == L::D && y == L::D_star) || (x == L::D_star && y == L::D)) {
        out.push_back({1.0, {}});
        return true;
    }
    return false;
}

BasisMonomial read_normal_word(const Word& w) {
    BasisMonomial b;
    for (Letter x : w) {
        switch (x) {
            case Letter::a: ++b.n; break;
            case Letter::a_star: --b.n; break;
            case Letter::b: ++b.m; break;
            case Letter::b_star: ++b.k; break;
            case Letter::D: ++b.l; break;
            case Letter::D_star: --b.l; break;
        }
    }
    return b;
}

}  // namespace

Word word_of(const BasisMonomial& b) {
    Word w;
    for (int i = 0; i < std::abs(b.n); ++i) w.push_back(b.n > 0 ? Letter::a : Letter::a_star);
    for (int i = 0; i < b.m; ++i) w.push_back(Letter::b);
    for (int i = 0; i < b.k; ++i) w.push_back(Letter::b_star);
    for (int i = 0; i < std::abs(b.l); ++i) w.push_back(b.l > 0 ? Letter::D : Letter::D_star);
    return w;
}

std::string to_string(const Word& w) {
    static const char* names[] = {"a", "a*", "b", "b*", "D", "D*"};
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ' ';
        s += names[static_cast<int>(w[i])];
    }
    return s;
}

Word parse_word(const std::string& s) {
    std::istringstream is(s);
    std::string tok;
    Word w;
    while (is >> tok) {
        if (tok == "a") w.push_back(Letter::a);
        else if (tok == "a*") w.push_back(Letter::a_star);
        else if (tok == "b") w.push_back(Letter::b);
        else if (tok == "b*") w.push_back(Letter::b_star);
        else if (tok == "D") w.push_back(Letter::D);
        else if (tok == "D*") w.push_back(Letter::D_star);
        else throw std::invalid_argument("unknown letter '" + tok + "'");
    }
    return w;
}

Measure termination_measure(const Word& w) {
    Measure m{0, 0, 0};
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_a(w[i])) ++m[0];
        if (is_D(w[i])) ++m[1];
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (rank_of(w[i]) > rank_of(w[j])) ++m[2];
    }
    return m;
}

std::size_t rewrite_step_bound(const Word& w) {
    const std::size_t len = w.size();
    const double leaves = std::ldexp(1.0, static_cast<int>(len / 2) + 1);
    return static_cast<std::size_t>(leaves * static_cast<double>((len / 2 + 1) * (len * len + 1)));
}

RewriteResult normal_order(const QParam& q, const Word& w) {
    RewriteResult res;
    std::vector<Item> stack{{1.0, w}};
    std::vector<Replacement> reps;
    while (!stack.empty()) {
        Item it = std::move(stack.back());
        stack.pop_back();
        bool rewritten = false;
        for (std::size_t p = 0; p + 1 < it.word.size(); ++p) {
            if (!rewrite_pair(q, it.word[p], it.word[p + 1], reps)) continue;
            const Measure before = termination_measure(it.word);
            for (const auto& r : reps) {
                Word next(it.word.begin(), it.word.begin() + static_cast<long>(p));
                next.insert(next.end(), r.middle.begin(), r.middle.end());
                next.insert(next.end(), it.word.begin() + static_cast<long>(p + 2), it.word.end());
                if (!(termination_measure(next) < before)) res.measure_decreased = false;
                stack.push_back({it.coeff * r.coeff, std::move(next)});
            }
            ++res.steps;
            rewritten = true;
            break;
        }
        if (!rewritten) res.value.add(read_normal_word(it.word), it.coeff);
    }
    return res;
}

}  // namespace uq2
