#include "uq2/torus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "uq2/parallel.hpp"

namespace uq2 {

cplx TorusElement::coeff(int m, int n) const {
    auto it = rows_.find(n);
    if (it == rows_.end()) return {};
    const long idx = static_cast<long>(m) - it->second.m0;
    if (idx < 0 || idx >= static_cast<long>(it->second.c.size())) return {};
    return it->second.c[static_cast<std::size_t>(idx)];
}

TorusElement::Row& TorusElement::row(int n, int m_lo, int m_hi) {
    Row& r = rows_[n];
    if (r.c.empty()) {
        r.m0 = m_lo;
        r.c.assign(static_cast<std::size_t>(m_hi - m_lo + 1), cplx{});
        return r;
    }
    const int lo = std::min(m_lo, r.m0);
    const int hi = std::max(m_hi, r.m0 + static_cast<int>(r.c.size()) - 1);
    if (lo != r.m0 || hi != r.m0 + static_cast<int>(r.c.size()) - 1) {
        std::vector<cplx> grown(static_cast<std::size_t>(hi - lo + 1));
        std::copy(r.c.begin(), r.c.end(), grown.begin() + (r.m0 - lo));
        r.c = std::move(grown);
        r.m0 = lo;
    }
    return r;
}

void TorusElement::add(int m, int n, cplx v) {
    if (v == cplx{}) return;
    Row& r = row(n, m, m);
    r.c[static_cast<std::size_t>(m - r.m0)] += v;
}

TorusElement TorusElement::operator*(const TorusElement& o) const {
    // (u1^m u2^n)(u1^m' u2^n') = lambda^{n m'} u1^{m+m'} u2^{n+n'}
    TorusElement out(theta_);
    for (const auto& [n1, r1] : rows_)
        for (const auto& [n2, r2] : o.rows_) {
            if (r1.c.empty() || r2.c.empty()) continue;
            const int lo = r1.m0 + r2.m0;
            const int hi = lo + static_cast<int>(r1.c.size() + r2.c.size()) - 2;
            Row& dst = out.row(n1 + n2, lo, hi);
            std::vector<cplx> w(r2.c.size());
            for (std::size_t b = 0; b < r2.c.size(); ++b)
                w[b] = r2.c[b] * lambda_pow(static_cast<long>(n1) * (r2.m0 + static_cast<long>(b)));
            const int base = lo - dst.m0;
            for (std::size_t a = 0; a < r1.c.size(); ++a) {
                const cplx x = r1.c[a];
                if (x == cplx{}) continue;
                cplx* d = dst.c.data() + base + a;
                for (std::size_t b = 0; b < w.size(); ++b) d[b] += x * w[b];
            }
        }
    return out;
}

TorusElement TorusElement::operator+(const TorusElement& o) const {
    TorusElement out = *this;
    for (const auto& [n, r] : o.rows_)
        for (std::size_t a = 0; a < r.c.size(); ++a) out.add(r.m0 + static_cast<int>(a), n, r.c[a]);
    return out;
}

TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + o.scaled(-1.0); }

TorusElement TorusElement::scaled(cplx s) const {
    TorusElement out = *this;
    for (auto& [n, r] : out.rows_)
        for (auto& v : r.c) v *= s;
    return out;
}

TorusElement TorusElement::adjoint() const {
    // (u1^m u2^n)* = u2^{-n} u1^{-m} = lambda^{nm} u1^{-m} u2^{-n}
    TorusElement out(theta_);
    for (const auto& [n, r] : rows_)
        for (std::size_t a = 0; a < r.c.size(); ++a) {
            const int m = r.m0 + static_cast<int>(a);
            out.add(-m, -n, std::conj(r.c[a]) * lambda_pow(static_cast<long>(n) * m));
        }
    return out;
}

TorusElement TorusElement::delta1() const {
    TorusElement out = *this;
    for (auto& [n, r] : out.rows_)
        for (std::size_t a = 0; a < r.c.size(); ++a) r.c[a] *= cplx(0.0, 2.0 * kPi * (r.m0 + static_cast<int>(a)));
    return out;
}

TorusElement TorusElement::delta2() const {
    TorusElement out = *this;
    for (auto& [n, r] : out.rows_)
        for (auto& v : r.c) v *= cplx(0.0, 2.0 * kPi * n);
    return out;
}

double TorusElement::norm1() const {
    double s = 0;
    for (const auto& [n, r] : rows_)
        for (const auto& v : r.c) s += std::abs(v);
    return s;
}

TorusElement TorusElement::unit(double theta) {
    TorusElement e(theta);
    e.add(0, 0, 1.0);
    return e;
}

namespace {

double smooth_step(double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double wrap01(double t) { return t - std::floor(t); }

}  // namespace

double RieffelBumps::f(double t) const {
    t = wrap01(t);
    if (t < eps) {
        if (shape == RampShape::linear) return t / eps;
        const double s = std::sin(0.5 * kPi * smooth_step(t / eps));
        return s * s;
    }
    if (t <= theta) return 1.0;
    if (t < theta + eps) {
        if (shape == RampShape::linear) return 1.0 - (t - theta) / eps;
        const double c = std::cos(0.5 * kPi * smooth_step((t - theta) / eps));
        return c * c;
    }
    return 0.0;
}

double RieffelBumps::g(double t) const {
    t = wrap01(t);
    if (t <= theta || t >= theta + eps) return 0.0;
    if (shape == RampShape::linear) {
        const double v = f(t);
        return std::sqrt(std::max(0.0, v * (1.0 - v)));
    }
    const double phi = 0.5 * kPi * smooth_step((t - theta) / eps);
    return std::sin(phi) * std::cos(phi);
}

RieffelBumps make_bumps(const ProjectionSpec& spec, double* theta_reduced, bool* reflected) {
    if (!(spec.theta > 0.0 && spec.theta < 1.0)) throw std::invalid_argument("projection theta must lie in (0,1)");
    const bool refl = spec.theta > 0.5;
    const double th = refl ? 1.0 - spec.theta : spec.theta;
    if (spec.ramp_width < 0.0) throw std::invalid_argument("ramp width must be non-negative (0 selects the default)");
    const double eps = spec.ramp_width > 0 ? spec.ramp_width : 0.5 * th;
    // g lives on [th, th+eps] and its th-translate on [2th, 2th+eps]; they
    // stay disjoint on the circle exactly when eps <= th and th + eps <= 1
    if (!(eps > 0.0 && eps <= th && th + eps <= 1.0))
        throw std::invalid_argument("ramp width violates the support-disjointness condition (need 0 < eps <= theta)");
    if (theta_reduced) *theta_reduced = th;
    if (reflected) *reflected = refl;
    return RieffelBumps{th, eps, spec.shape};
}

std::vector<cplx> fourier_coefficients(const std::function<double(double)>& h, int Q, int K) {
    if (Q < 2 * K + 1) throw std::invalid_argument("quadrature too coarse for the Fourier cutoff (need Q >= 2K+1)");
    std::vector<double> samples(static_cast<std::size_t>(Q));
    for (int q = 0; q < Q; ++q) samples[static_cast<std::size_t>(q)] = h(static_cast<double>(q) / Q);
    std::vector<cplx> table(static_cast<std::size_t>(Q));
    for (int q = 0; q < Q; ++q) table[static_cast<std::size_t>(q)] = std::polar(1.0, -2.0 * kPi * q / Q);
    std::vector<cplx> out(static_cast<std::size_t>(2 * K + 1));
    parallel_for(static_cast<std::size_t>(2 * K + 1), [&](std::size_t slot) {
        const int m = static_cast<int>(slot) - K;
        cplx s = 0;
        const long mm = ((m % Q) + Q) % Q;
        for (int q = 0; q < Q; ++q) {
            const double v = samples[static_cast<std::size_t>(q)];
            if (v != 0.0) s += v * table[static_cast<std::size_t>((mm * q) % Q)];
        }
        out[slot] = s / static_cast<double>(Q);
    });
    return out;
}

RieffelSymbol rieffel_symbol(const ProjectionSpec& spec) {
    RieffelSymbol s;
    const RieffelBumps bumps = make_bumps(spec, &s.theta_reduced, &s.reflected);
    s.theta = spec.theta;
    s.eps = bumps.eps;
    s.shape = bumps.shape;
    const int K = spec.fourier_cutoff;
    s.f_hat = fourier_coefficients([&](double t) { return bumps.f(t); }, spec.quadrature_points, K);
    s.g_hat = fourier_coefficients([&](double t) { return bumps.g(t); }, spec.quadrature_points, K);

    // p = f(u1) + g(u1) u2 + u2* g(u1), or with u2 and u2* exchanged when reflected
    TorusElement p(spec.theta);
    for (int m = -K; m <= K; ++m) {
        const cplx fm = s.f_hat[static_cast<std::size_t>(m + K)];
        const cplx gm = s.g_hat[static_cast<std::size_t>(m + K)];
        p.add(m, 0, fm);
        if (!s.reflected) {
            p.add(m, 1, gm);
            p.add(m, -1, gm * p.lambda_pow(-m));  // u2^{-1} u1^m = lambda^{-m} u1^m u2^{-1}
        } else {
            p.add(m, -1, gm);
            p.add(m, 1, gm * p.lambda_pow(m));    // u2 u1^m = lambda^m u1^m u2
        }
    }
    s.p = std::move(p);
    return s;
}

ProjectionDefects projection_defects(const RieffelSymbol& s, int quadrature_points) {
    ProjectionDefects d{};
    d.idempotency = (s.p * s.p - s.p).norm1();
    d.selfadjointness = (s.p.adjoint() - s.p).norm1();
    d.trace = s.p.trace().real();
    ProjectionSpec spec;
    spec.theta = s.theta;
    spec.ramp_width = s.eps;
    spec.shape = s.shape;
    const RieffelBumps b = make_bumps(spec, nullptr, nullptr);
    const double th = s.theta_reduced;
    d.identity_f = d.identity_g = d.identity_gg = 0;
    for (int q = 0; q < quadrature_points; ++q) {
        const double t = static_cast<double>(q) / quadrature_points;
        const double f = b.f(t), g = b.g(t);
        const double gp = b.g(t + th), gm = b.g(t - th), fm = b.f(t - th);
        d.identity_f = std::max(d.identity_f, std::fabs(f * f + g * g + gp * gp - f));
        d.identity_g = std::max(d.identity_g, std::fabs(g * (f + fm) - g));
        d.identity_gg = std::max(d.identity_gg, std::fabs(g * gm));
    }
    return d;
}

ChernResult chern_number(const TorusElement& p) {
    const TorusElement d1 = p.delta1();
    const TorusElement d2 = p.delta2();
    const cplx t = (p * (d1 * d2 - d2 * d1)).trace();
    ChernResult r;
    r.raw = (t / cplx(0.0, 2.0 * kPi)).real();
    r.orientation = -1;
    r.value = r.orientation * r.raw;
    r.rounded = std::lround(r.value);
    r.distance = std::fabs(r.value - static_cast<double>(r.rounded));
    return r;
}

ChernResult chern_number(const ProjectionSpec& spec) {
    const ChernResult r = chern_number(rieffel_symbol(spec).p);
    if (r.distance > kChernIntegerTolerance)
        throw std::domain_error("Chern number is not within 1e-3 of an integer");
    return r;
}

}  // namespace uq2
