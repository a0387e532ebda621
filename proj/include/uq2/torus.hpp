#pragma once

#include <functional>
#include <map>
#include <vector>

#include "uq2/qparam.hpp"

namespace uq2 {

// Finite sums  sum c(m,n) u1^m u2^n  in the algebra of two unitaries with
// u2 u1 = lambda u1 u2, lambda = exp(-2 pi i theta).  That is the relation
// satisfied by u1 = U (x) 1 and u2 = exp(-2 pi i theta N) (x) U on l2(Z^2).
class TorusElement {
public:
    struct Row {
        int m0 = 0;               // u1-degree of c[0]
        std::vector<cplx> c;
    };

    explicit TorusElement(double theta = 0.0) : theta_(theta) {}

    double theta() const { return theta_; }
    cplx lambda_pow(long e) const { return unit_phase(-theta_ * static_cast<double>(e)); }

    const std::map<int, Row>& rows() const { return rows_; }  // keyed by u2-degree n
    cplx coeff(int m, int n) const;
    void add(int m, int n, cplx v);

    TorusElement operator*(const TorusElement& o) const;
    TorusElement operator+(const TorusElement& o) const;
    TorusElement operator-(const TorusElement& o) const;
    TorusElement scaled(cplx s) const;
    TorusElement adjoint() const;

    // partial derivatives: multiply mode (m,n) by 2 pi i m, resp. 2 pi i n
    TorusElement delta1() const;
    TorusElement delta2() const;

    cplx trace() const { return coeff(0, 0); }
    double norm1() const;  // sum |c|, an upper bound for the operator norm

    static TorusElement unit(double theta);

private:
    Row& row(int n, int m_lo, int m_hi);
    double theta_;
    std::map<int, Row> rows_;
};

enum class RampShape { smooth, linear };

struct ProjectionSpec {
    double theta = 0.41421356237309503;
    double ramp_width = 0.0;  // 0 selects half the reduced theta
    int quadrature_points = 2048;
    int fourier_cutoff = 256;
    RampShape shape = RampShape::smooth;
};

// Circle functions f, g for the Powers-Rieffel construction.  theta is the
// reduced value in (0, 1/2]; t is read mod 1.
struct RieffelBumps {
    double theta;
    double eps;
    RampShape shape;
    double f(double t) const;
    double g(double t) const;
};

struct RieffelSymbol {
    TorusElement p;
    double theta = 0;          // the original parameter
    double theta_reduced = 0;  // in (0, 1/2]
    double eps = 0;
    RampShape shape = RampShape::smooth;
    bool reflected = false;    // theta > 1/2: built from (u1, u2*) with trace 1 - theta
    std::vector<cplx> f_hat;   // modes -K..K
    std::vector<cplx> g_hat;
};

RieffelBumps make_bumps(const ProjectionSpec& spec, double* theta_reduced, bool* reflected);
RieffelSymbol rieffel_symbol(const ProjectionSpec& spec);

// Fourier coefficients (1/Q) sum_q h(q/Q) exp(-2 pi i m q/Q) for |m| <= K.
std::vector<cplx> fourier_coefficients(const std::function<double(double)>& h, int Q, int K);

struct ProjectionDefects {
    double idempotency;    // ||p^2 - p||_1 on Fourier data
    double selfadjointness;
    double trace;
    double identity_f;     // max over quadrature nodes of |f^2 + g^2 + g^2(t+theta) - f|
    double identity_g;     // |g (f + f(t - theta)) - g|
    double identity_gg;    // |g g(t - theta)|
};
ProjectionDefects projection_defects(const RieffelSymbol& s, int quadrature_points);

struct ChernResult {
    double raw = 0;       // (1/2 pi i) tau(p [d_u1 p, d_u2 p]) in the concrete coordinates
    double value = 0;     // raw times the orientation sign
    int orientation = -1;
    long rounded = 0;
    double distance = 0;  // |value - rounded|
};

inline constexpr double kChernIntegerTolerance = 1e-3;

// Chern number in the orientation of the presentation V U = exp(2 pi i theta) U V.
// The concrete pair satisfies u1 u2 = exp(2 pi i theta) u2 u1, so (U, V) = (u2, u1)
// and the ordered derivations are (d_u2, d_u1): orientation -1 relative to (u1, u2).
ChernResult chern_number(const TorusElement& p);
ChernResult chern_number(const ProjectionSpec& spec);

}  // namespace uq2
