#include "uq2/qparam.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace uq2 {

cplx unit_phase(double x) {
    double r = x - std::floor(x);
    return std::polar(1.0, 2.0 * kPi * r);
}

cplx QParam::q() const { return q_pow(1); }
cplx QParam::qbar() const { return qbar_pow(1); }

double QParam::mod_pow(long e) const { return std::pow(modulus, static_cast<double>(e)); }

cplx QParam::q_pow(long e) const {
    // arg(q^e) = pi theta e, i.e. half a turn per unit of theta
    return mod_pow(e) * unit_phase(0.5 * theta * static_cast<double>(e));
}

cplx QParam::qbar_pow(long e) const { return std::conj(q_pow(e)); }

cplx QParam::c_pow(long e) const { return unit_phase(theta * static_cast<double>(e)); }

cplx QParam::turn(double t) const { return unit_phase(theta * t); }

std::vector<std::string> QParam::warnings() const {
    std::vector<std::string> out;
    if (near_rational) {
        std::ostringstream os;
        os << "theta_near_rational: theta is within " << near_rational->error << " of "
           << near_rational->numerator << "/" << near_rational->denominator;
        out.push_back(os.str());
    }
    return out;
}

std::optional<RationalApprox> rational_approximation(double x, long max_denominator,
                                                     double tolerance) {
    // convergents h/k of the continued fraction of x
    long h_prev = 1, h = static_cast<long>(std::floor(x));
    long k_prev = 0, k = 1;
    double frac = x - std::floor(x);
    for (int iter = 0; iter < 64; ++iter) {
        double err = std::fabs(x - static_cast<double>(h) / static_cast<double>(k));
        if (err <= tolerance) return RationalApprox{h, k, err};
        if (frac < 1e-15) break;
        double inv = 1.0 / frac;
        long ai = static_cast<long>(std::floor(inv));
        frac = inv - static_cast<double>(ai);
        long h_next = ai * h + h_prev;
        long k_next = ai * k + k_prev;
        if (k_next > max_denominator) break;
        h_prev = h;
        h = h_next;
        k_prev = k;
        k = k_next;
    }
    return std::nullopt;
}

QParam make_qparam(double modulus, double theta) {
    if (!std::isfinite(modulus) || !std::isfinite(theta))
        throw std::invalid_argument("q parameters must be finite");
    if (!(modulus > 0.0 && modulus < 1.0)) {
        std::ostringstream os;
        os << "modulus " << modulus << " is outside (0,1)";
        if (modulus >= 1.0)
            os << "; the same quantum group is described by q -> 1/q (modulus "
               << (modulus > 1.0 ? 1.0 / modulus : modulus)
               << "), and q -> conj(q) flips the sign of theta";
        throw std::invalid_argument(os.str());
    }
    QParam p;
    p.modulus = modulus;
    p.theta = std::fmod(theta, 2.0);
    if (p.theta < 0) p.theta += 2.0;
    if (p.theta >= 2.0) p.theta = 0.0;
    p.near_rational = rational_approximation(p.theta, kRationalDenominatorCap, kRationalTolerance);
    return p;
}

}  // namespace uq2
