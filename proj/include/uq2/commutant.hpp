#pragma once

#include <map>
#include <utility>
#include <vector>

#include "uq2/rep.hpp"

namespace uq2 {

// Coefficients of an operator T with T e_x = sum_y alpha[{x, y}] e_y.
// In the (d, i, j) labelling of the ell^2(N) (x) ell^2(Z) (x) ell^2(Z) basis,
// Site{d, i, j}; alpha[{x, y}] is the coefficient of output y for input x.
struct CommutantSolution {
    std::map<std::pair<Site, Site>, cplx> alpha;
    TruncGrid grid;

    cplx at(const Site& input, const Site& output) const;
};

struct CommutantOptions {
    std::size_t max_unknowns = 1'000'000;  // cap on dimension^2
    double rank_tolerance = 1e-9;          // relative to the largest singular value of a block
};

// Nullspace of the equations [T, pi(g)] = 0, g in {a, a*, b, b*, D, D*}.
// An entry of T G - G T at (y', x) becomes an equation only when every T
// coefficient it references lies on the grid; a reference to a site with
// i < 0 is a genuine zero of the untruncated operator and is kept.
std::vector<CommutantSolution> commutant_solve(const GeneratorSet& gens, const CommutantOptions& opts = {});

struct StructureResiduals {
    double off_block = 0;    // max |alpha| between different N-leg indices
    double phase_law = 0;    // deviation from exp(2 pi i theta j'(i-i')) alpha^{0,i-i',j-j'}_{0,0,0}
    double translation = 0;  // deviation from the law for a common shift of i and i'
    double max() const { return std::max({off_block, phase_law, translation}); }
};

StructureResiduals structure_residuals(const CommutantSolution& sol, const QParam& q);

struct CenterBlock {
    Site shift;                            // (n, m-k, l) shared by the block's monomials
    std::size_t monomials = 0;
    std::vector<double> singular_values;   // of the commutator map on the block
    int kernel = 0;                        // commutator kernel inside the represented span
};

struct CenterReport {
    int dimension = 0;
    int M = 0;
    TruncGrid grid;
    std::vector<CenterBlock> blocks;
    std::vector<BasisMonomial> central_support;  // monomials in blocks with a kernel
};

inline constexpr double kCenterRankThreshold = 1e-6;

CenterReport center_probe(const QParam& q, const TruncGrid& grid, int M);
int center_dimension(const QParam& q, const TruncGrid& grid, int M);

}  // namespace uq2
