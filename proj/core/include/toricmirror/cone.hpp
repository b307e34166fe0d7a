#pragma once

#include <vector>

#include "toricmirror/arith.hpp"

namespace toricmirror {

/**
 * Extreme rays of the pointed cone {x in Q^dim : g . x >= 0 for all rows g},
 * computed by the double description method.  Rays are primitive integer
 * vectors in lexicographic order.  Throws Error(cone, NotPointed) when the
 * inequality rows do not have full rank.
 */
std::vector<IntVec> extreme_rays(const std::vector<IntVec>& inequalities, std::size_t dim);

/** Half-space a . x + b >= 0 with primitive integer (a, b). */
struct Halfspace {
    IntVec normal;
    Int offset;
    Int eval(const IntVec& x) const;
    Rat eval(const RatVec& x) const;
};

/** Facet inequalities of the convex hull of full-dimensional points. */
std::vector<Halfspace> hull_facets(const std::vector<IntVec>& points);

/** Vertices of the bounded polyhedron {x : a_j . x + b_j >= 0}. */
std::vector<RatVec> polytope_vertices(const std::vector<Halfspace>& halfspaces, std::size_t dim);

/** The points that are vertices of their convex hull (any affine dimension), lex-sorted. */
std::vector<IntVec> hull_vertices(const std::vector<IntVec>& points);

}  // namespace toricmirror
