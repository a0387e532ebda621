#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "uq2/algebra.hpp"
#include "uq2/sparse.hpp"

namespace uq2 {

enum class Generator { a, a_star, b, b_star, D, D_star };

inline constexpr std::array<Generator, 6> kAllGenerators{Generator::a, Generator::a_star, Generator::b,
                                                         Generator::b_star, Generator::D, Generator::D_star};

std::string generator_name(Generator g);
Site generator_shift(Generator g);
AlgebraElement generator_element(Generator g);

// pi(g) e_s = weight * e_target on the untruncated lattice; nullopt when the
// result is zero (a* on the i = 0 edge).
struct ShiftImage {
    Site target;
    cplx weight;
};
std::optional<ShiftImage> act(Generator g, const Site& s, const QParam& q);

// Every represented monomial is a weighted shift; this composes act() from
// the right (D first, a last) on the untruncated lattice.
std::optional<ShiftImage> monomial_action(const BasisMonomial& b, const Site& s, const QParam& q);
Site monomial_shift(const BasisMonomial& b);

struct GeneratorSet {
    QParam qparam;
    TruncGrid grid;
    SparseOperator op_a, op_a_star, op_b, op_b_star, op_D, op_D_star;
    // number of images dropped because they left the grid, per generator
    std::array<std::size_t, 6> dropped{};

    const SparseOperator& op(Generator g) const;
};

GeneratorSet build_generators(const QParam& q, const TruncGrid& grid);

SparseOperator generator_operator(Generator g, const QParam& q, const TruncGrid& grid,
                                  std::size_t* dropped = nullptr);

// Products of the truncated generator matrices.
SparseOperator monomial_operator(const AlgebraElement& x, const GeneratorSet& gens);

// pi(x) v using the generator matrices column by column (no product matrices).
SparseVector apply_element(const AlgebraElement& x, const GeneratorSet& gens, const SparseVector& v);

struct RelationResidual {
    std::string name;
    double residual;
};

// The eight defining relations, each as a Schur-bounded norm of the residual
// restricted to interior columns.
std::vector<RelationResidual> relation_residuals(const GeneratorSet& gens);

// e_{i,j,k} -> z1^i z2^j z3^k e_{i,j,k}
SparseOperator torus_unitary(cplx z1, cplx z2, cplx z3, const TruncGrid& grid);

// Max entrywise deviation of U pi(g) U* from pi(alpha_z(g)) over g in {a,b,D}.
double covariance_residual(cplx z1, cplx z2, cplx z3, const GeneratorSet& gens);

void require_unit(cplx z, const char* what);

}  // namespace uq2
