#pragma once

#include <string>
#include <vector>

#include "uq2/sparse.hpp"
#include "uq2/torus.hpp"

namespace uq2 {

// u1 = U (x) 1 and u2 = exp(-2 pi i theta N) (x) U on the (j, k) legs of the
// i = 0 slice of a TruncGrid{1, z_cut}.
struct TorusPair {
    double theta = 0;
    TruncGrid grid;
    SparseOperator u1;
    SparseOperator u2;
};

TorusPair build_torus(double theta, int z_cut);

// Max interior entry of u2 u1 - exp(sign * 2 pi i theta) u1 u2.  The concrete
// pair satisfies the relation with sign = -1.
double commutation_residual(const TorusPair& pair, int sign);
// Max interior entry of u* u - 1 and u u* - 1 over both unitaries.
double unitarity_residual(const TorusPair& pair);

// sum c(m,n) u1^m u2^n acting on the slice i = `slice` of the grid; entries
// that leave the box are dropped and every other column is zero.
SparseOperator torus_operator(const TorusElement& x, const TruncGrid& grid, int slice = 0);

SparseOperator rieffel_projection(const ProjectionSpec& spec, const TorusPair& pair);

// (j + i k) / |j + i k|, with the value `origin` at j = k = 0.
cplx phase_value(int j, int k, cplx origin = 1.0);
SparseOperator phase_operator(int z_cut, cplx origin = 1.0);

struct IndexOptions {
    double tol = 0.1;
    int window = -1;                   // column window |j|, |k| <= window; -1 picks min(12, z_cut / 2)
    double idempotency_limit = 1e-4;   // precondition on p^2 - p over the window
};

struct IndexResult {
    int index = 0;
    int kernel = 0;
    int cokernel = 0;
    int window = 0;
    std::size_t columns = 0;
    std::vector<double> kernel_singular_values;    // smallest few of A
    std::vector<double> cokernel_singular_values;  // smallest few of A*
    double gap_below = 0;  // largest singular value counted as zero
    double gap_above = 0;  // smallest singular value counted as nonzero
    double idempotency = 0;
    bool indeterminate = false;
};

// Index of the compression pFp on range(p), computed as the index of
// A = pFp + (1 - p).  Singular values of A and A* restricted to the window
// columns are counted below tol; any value in [tol/2, 2 tol] marks the count
// indeterminate.
IndexResult fredholm_index_svd(const SparseOperator& p, const SparseOperator& F, const IndexOptions& opts = {});

// The pairing operator P T|T|^{-1} P on a grid with an N leg, with
// P = |e_0><e_0| (x) p and T the Dirac operator.  On the i = 0 slice the Dirac
// phase coincides with the phase operator, so the result must agree with the
// planar computation; slice_deviation measures that agreement entrywise.
struct PairingCheck {
    TruncGrid grid;
    IndexResult result;
    double slice_deviation = 0;
};
inline IndexOptions pairing_default_options() {
    IndexOptions o;
    o.window = 12;
    return o;
}
PairingCheck pairing_operator_check(const ProjectionSpec& spec, int n_cut = 3, int z_cut = 32,
                                    const IndexOptions& opts = pairing_default_options());

struct IndexReport {
    ProjectionSpec spec;
    int z_cut = 0;
    double theta_reduced = 0;
    double eps = 0;
    bool reflected = false;
    ChernResult chern;
    IndexResult fredholm;
    IndexResult fredholm_origin_flipped;  // F(0,0) = -1 instead of 1
    ProjectionDefects defects;
    double operator_idempotency = 0;  // max entry of p^2 - p over the window columns
    double matrix_trace = 0;          // normalized trace of p over the window
    double commutation_residual = 0;
    bool consistent = false;          // chern == fredholm, both +-1, origin-independent
    std::string origin_convention = "F(e_00) = e_00";
};

IndexReport index_report(const ProjectionSpec& spec, int z_cut, const IndexOptions& opts = {});

}  // namespace uq2
