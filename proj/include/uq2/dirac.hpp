#pragma once

#include <functional>
#include <string>
#include <vector>

#include "uq2/rep.hpp"

namespace uq2 {

// d(i,j,k) = i + j + ik for j >= 0 and -i + j + ik for j < 0
cplx dirac_eigenvalue(int i, int j, int k);
inline cplx dirac_eigenvalue(const Site& s) { return dirac_eigenvalue(s.i, s.j, s.k); }

// The Dirac operator [[0, T*], [T, 0]] with grading diag(1, -1) on the doubled
// space.  T is diagonal, so only its eigenvalue function is kept; the block
// structure is checked structurally, never through a dense doubled matrix.
struct DiracSpec {
    TruncGrid grid;
    std::vector<Site> kernel;  // sites where d vanishes

    cplx eigenvalue(const Site& s) const { return dirac_eigenvalue(s); }
    double abs_inverse(const Site& s) const;  // |D|^{-1}, zero on the kernel
    SparseOperator T() const;
    SparseOperator phase() const;  // T|T|^{-1}, equal to 1 on the kernel
};

DiracSpec build_dirac(const TruncGrid& grid);

// Entrywise residual of gamma D + D gamma over the grid (both spinor blocks).
double grading_anticommutator_residual(const DiracSpec& spec);
// [gamma, pi(x) (x) 1] for a represented operator; zero by block structure.
double grading_commutator_residual(const SparseOperator& op);

struct CommutatorForm {
    Generator generator;
    Site shift;
    std::function<cplx(const Site&)> weight;  // [T, pi(g)] e_s = weight(s) e_{s+shift}
};

CommutatorForm commutator_closed_form(Generator g, const TruncGrid& grid, const QParam& q);

// Max entry of [T, pi(x)] minus the closed forms composed by the Leibniz rule,
// over interior columns.
double commutator_check(const AlgebraElement& x, const GeneratorSet& gens, const DiracSpec& spec);

// Max of |weight| of [T, b] over the grid, and its predicted value max_i |2i+1| |q|^i.
struct BoundednessWitness {
    double grid_sup;
    double predicted_sup;
};
BoundednessWitness commutator_b_sup(const GeneratorSet& gens);

// #{(i,j,k) in grid : (i+|j|)^2 + k^2 <= lambda^2}, doubled for the two spinor copies.
long counting_function(double lambda, const TruncGrid& grid);

struct SummabilityControl {
    double exponent;
    double s_start;  // S at the start of the last decade
    double s_end;
    double variation;  // (max - min) / mean of S over the last decade
};

struct SummabilityReport {
    double lambda_max = 0;
    std::size_t n_values = 0;
    double counting_slope = 0;   // least-squares slope of log N vs log lambda
    double volume_ratio = 0;     // N(lambda_fit_hi) / (8/3 lambda^3)
    double s_final = 0;
    double s_variation = 0;
    std::vector<SummabilityControl> controls;  // exponents 3, 2.5, 3.5
};

struct SummabilityOptions {
    double fit_lo = 20.0;
    double fit_hi = 60.0;
    int fit_points = 41;
    double decade = 10.0;  // last decade is N in [N_end / decade, N_end]
};

SummabilityReport summability_report(double lambda_max, const TruncGrid& grid,
                                     const SummabilityOptions& opts = {});

struct KernelScanEntry {
    BasisMonomial monomial;
    double norm;
    double relative;  // norm / ||pi(x)|| on the same interior columns
};
struct KernelScan {
    std::vector<BasisMonomial> kernel;
    std::vector<KernelScanEntry> all;  // every scanned monomial with its norm
    double min_outside = 0;            // smallest norm among non-kernel monomials
    BasisMonomial argmin_outside;
    double min_relative_outside = 0;
};
inline constexpr double kDerivationKernelTolerance = 1e-12;

KernelScan derivation_kernel_scan(int max_degree, const GeneratorSet& gens, const DiracSpec& spec);

// Interior sup-norm of [T, pi(x)] computed on weighted shifts.
double commutator_norm(const BasisMonomial& b, const GeneratorSet& gens, const DiracSpec& spec);
// Interior sup-norm of pi(x) itself, over the columns commutator_norm looks at.
double represented_norm(const BasisMonomial& b, const GeneratorSet& gens);

double equivariance_check(const DiracSpec& spec, cplx z1, cplx z2, cplx z3);

}  // namespace uq2
