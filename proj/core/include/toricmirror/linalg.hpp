#pragma once

#include <optional>
#include <vector>

#include "toricmirror/arith.hpp"

namespace toricmirror {

/** Reduced row echelon form with pivot column list. */
struct RowEchelon {
    RatMat reduced;
    std::vector<std::size_t> pivots;
};

RowEchelon rref(const RatMat& a);
std::size_t rank(const RatMat& a);
std::size_t rank(const IntMat& a);
std::size_t rank_of_vectors(const std::vector<IntVec>& vs);

/** Basis of the rational null space {x : A x = 0}. */
std::vector<RatVec> nullspace(const RatMat& a);

/** Some solution of A x = b, or nothing when inconsistent. */
std::optional<RatVec> solve(const RatMat& a, const RatVec& b);

/** Unique solution of A x = b; nothing when inconsistent or underdetermined. */
std::optional<RatVec> solve_unique(const RatMat& a, const RatVec& b);

Rat determinant(const RatMat& a);
Int determinant(const IntMat& a);
std::optional<RatMat> inverse(const RatMat& a);

/** Smith normal form U A V = D with U, V unimodular. */
struct SmithForm {
    IntMat d;
    IntMat u;
    IntMat v;
    std::size_t rank = 0;
    /** Nonzero diagonal entries of d, each dividing the next. */
    IntVec invariant_factors() const;
};

SmithForm smith_normal_form(const IntMat& a);

/** Row-style Hermite normal form; zero rows are dropped. */
IntMat hermite_normal_form(const IntMat& a);

/**
 * Basis of the integer kernel {x in Z^n : A x = 0}.  The basis is saturated
 * (a basis of the full lattice) and in Hermite normal form.
 */
std::vector<IntVec> integer_kernel(const IntMat& a);

/** True iff the vectors span a saturated sublattice (all invariant factors 1). */
bool is_saturated(const std::vector<IntVec>& rows);

/** Coordinates of v in the lattice basis, or nothing if v is not in the span. */
std::optional<RatVec> coordinates_in_basis(const std::vector<IntVec>& basis, const IntVec& v);

std::vector<IntVec> rows_of(const IntMat& m);
IntMat matrix_from_rows(const std::vector<IntVec>& rows, std::size_t cols);

}  // namespace toricmirror
