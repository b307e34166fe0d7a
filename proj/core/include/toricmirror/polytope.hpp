#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toricmirror/arith.hpp"
#include "toricmirror/cone.hpp"

namespace toricmirror {

/** A face of a lattice polytope, identified by the sorted indices of its vertices. */
struct Face {
    int dim = 0;
    std::vector<std::size_t> vertex_indices;
    /** Number of lattice points in the relative interior, l'(face). */
    std::size_t interior_points = 0;
    /** Total lattice points on the closed face. */
    std::size_t lattice_points = 0;
    /** Index of the dual face in the face list of the polar dual, when paired. */
    std::optional<std::size_t> dual_face;
};

/**
 * Convex hull of finitely many integer points.  The polytope may have lower
 * dimension than its ambient lattice (the parts of a nef partition do);
 * operations that need a full-dimensional polytope check this themselves.
 */
class LatticePolytope {
public:
    LatticePolytope() = default;
    /** Hull of the given points; interior and repeated points are discarded. */
    static LatticePolytope hull(const std::vector<IntVec>& points);
    /** Like hull() but throws Error(polytope, NotAVertex) if a point is not a vertex. */
    static LatticePolytope from_vertices(const std::vector<IntVec>& vertices);

    std::size_t ambient_rank() const { return n_; }
    std::size_t dim() const { return d_; }
    bool full_dimensional() const { return d_ == n_; }
    /** Vertices in lexicographic order. */
    const std::vector<IntVec>& vertices() const { return vertices_; }
    /** Facet inequalities a.x + b >= 0 (full-dimensional polytopes only). */
    const std::vector<Halfspace>& facets() const;

    bool contains(const IntVec& x) const;
    bool strictly_interior(const IntVec& x) const;
    /** All lattice points, lexicographically sorted. */
    const std::vector<IntVec>& lattice_points() const;
    /** Faces of every dimension, sorted by dimension and then vertex indices. */
    const std::vector<Face>& faces() const;
    /** Indices (into faces()) of the faces of the given dimension. */
    std::vector<std::size_t> faces_of_dim(int k) const;
    /** The face whose vertex set equals the given sorted index set. */
    std::optional<std::size_t> face_index(const std::vector<std::size_t>& vertex_indices) const;
    /** Smallest face containing x (x must lie in the polytope). */
    std::size_t carrier_face(const IntVec& x) const;

    bool operator==(const LatticePolytope& o) const { return vertices_ == o.vertices_; }

private:
    struct Cache;
    void init(std::vector<IntVec> verts);
    IntVec project(const IntVec& x) const;
    std::vector<std::size_t> carrier_vertices(const IntVec& x) const;

    std::size_t n_ = 0;
    std::size_t d_ = 0;
    std::vector<IntVec> vertices_;
    std::vector<std::size_t> pivots_;
    std::vector<IntVec> span_equations_;
    std::vector<Int> span_offsets_;
    std::vector<Halfspace> proj_facets_;
    std::shared_ptr<Cache> cache_;
};

/** Raised by polar_dual when a dual vertex is fractional. */
class NonLatticeDualError : public Error {
public:
    explicit NonLatticeDualError(std::vector<RatVec> vertices);
    const std::vector<RatVec>& vertices() const { return vertices_; }

private:
    std::vector<RatVec> vertices_;
};

/** Polar dual {y : <y,x> >= -1 for x in P}.  Throws OriginNotInterior or NonLatticeDualError. */
LatticePolytope polar_dual(const LatticePolytope& p);
/** Rational vertices of the polar dual. */
std::vector<RatVec> polar_dual_vertices(const LatticePolytope& p);
bool is_reflexive(const LatticePolytope& p);

/**
 * Face lattice of a reflexive polytope with the dual-face pairing filled in
 * against polar_dual(p).  Throws DualUnavailable when p is not reflexive.
 */
std::vector<Face> paired_face_lattice(const LatticePolytope& p);

struct HodgePair {
    Int h11;
    Int h21;
    /** Non-empty when the formula is evaluated outside its threefold meaning. */
    std::string caveat;
};

/**
 * Both lines of the hypersurface Hodge-number formula for any rank n.  The
 * second entry is h^{n-2,1}.  A caveat is attached when n != 4.
 */
HodgePair hodge_numbers(const LatticePolytope& delta);
/** Hodge numbers (h11, h21) of the Calabi-Yau threefold hypersurface; rank 4 only. */
HodgePair hodge_numbers_hypersurface(const LatticePolytope& delta);

/** Minkowski sum by pairwise vertex sums and hull reduction. */
LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b);

/**
 * A nef partition of a reflexive Delta: the vertices of Delta* split into r
 * groups.  Groups hold indices into polar_dual(parent).vertices().
 */
struct NefPartition {
    LatticePolytope parent;
    std::vector<std::vector<std::size_t>> parts;

    /** Build from groups of vertices of Delta* given as vectors. */
    static NefPartition from_vertex_groups(const LatticePolytope& delta_star,
                                           const std::vector<std::vector<IntVec>>& groups);
};

struct NefDual {
    LatticePolytope nabla;
    std::vector<LatticePolytope> nabla_parts;
    std::vector<LatticePolytope> delta_parts;
};

/** Dual nef partition; all post-checks are run and failures throw. */
NefDual nef_partition_dual(const NefPartition& np);

}  // namespace toricmirror
