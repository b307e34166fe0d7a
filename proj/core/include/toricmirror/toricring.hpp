#pragma once

#include <map>
#include <string>
#include <vector>

#include "toricmirror/algebra.hpp"
#include "toricmirror/config.hpp"
#include "toricmirror/triangulation.hpp"

namespace toricmirror {

/** Simplicial fan with rays indexed 0..p-1. */
struct Fan {
    std::size_t dim = 0;
    std::vector<IntVec> rays;
    /** Configuration column of each ray. */
    std::vector<std::size_t> ray_columns;
    std::vector<std::vector<std::size_t>> cones;
    std::vector<Int> multiplicity;
    std::vector<bool> smooth;

    bool is_cone(const std::vector<std::size_t>& sorted_rays) const;
    bool all_smooth() const;
};

/**
 * Fan of a maximal triangulation: rays are the non-origin columns without
 * their leading block coordinates, cones the simplices minus the origin
 * columns.  Throws NotMaximal, or NotComplete when a codimension-one face
 * does not lie on exactly two cones.
 */
Fan fan_from_triangulation(const PointConfiguration& cfg, const Triangulation& t);

/** Minimal non-faces, each sorted, in (size, lex) order. */
std::vector<std::vector<std::size_t>> stanley_reisner(const Fan& fan);

/** Polynomial in the ray divisors D_0..D_{p-1}, keyed by exponent vectors. */
struct DivisorPoly {
    std::map<std::vector<int>, Rat> terms;

    static DivisorPoly constant(const Rat& c, std::size_t p);
    static DivisorPoly linear(const RatVec& coeffs);
    DivisorPoly operator+(const DivisorPoly& o) const;
    DivisorPoly operator*(const DivisorPoly& o) const;
    DivisorPoly scaled(const Rat& c) const;
    DivisorPoly degree_part(int k) const;
    /** Drop every term of degree above k. */
    DivisorPoly truncated(int k) const;
};

/**
 * Top-degree functional of the ambient toric variety: square-free cone
 * monomials give 1/multiplicity, non-faces give 0 and repeated factors are
 * rewritten with linear relations.
 */
class IntersectionFunctional {
public:
    explicit IntersectionFunctional(const Fan& fan);
    Rat operator()(const std::vector<int>& exponents) const;
    Rat integrate(const DivisorPoly& f) const;

private:
    const Fan* fan_;
    mutable std::map<std::vector<int>, Rat> memo_;
};

/** Cohomology of the Calabi-Yau complete intersection generated by the J_k. */
struct CohomologyRing {
    Fan fan;
    std::vector<std::vector<std::size_t>> sr_ideal;
    /** J_k as combinations of ray divisors, dual to the chart basis. */
    std::vector<RatVec> j_divisors;
    /** Classes of the cutting divisors [Z_k] as ray-divisor combinations. */
    std::vector<RatVec> z_divisors;
    /** Complex dimension of the complete intersection. */
    int dim = 0;
    NilpotentAlgebra algebra;
    /** int J_k J_l J_m (threefolds). */
    std::vector<std::vector<std::vector<Rat>>> k;
    /** int J_k J_l (surfaces). */
    std::vector<std::vector<Rat>> eta;
    /** int J_k (curves). */
    RatVec degrees;
    /** int c2 J_k (threefolds). */
    RatVec c2j;
    /** int c_dim, the Euler characteristic. */
    Rat chi;
    /** Second and third Chern classes as algebra elements (zero where not defined). */
    NilpotentAlgebra::Elem c2;
    NilpotentAlgebra::Elem c3;
    /** Euler number of the ambient, int c_top(ambient). */
    Rat ambient_euler;
};

struct HodgeInput {
    Int h11;
    Int h21;
};

/**
 * Restriction of the ambient ring to the complete intersection cut out by the
 * origin blocks of cfg, with J_k dual to the chart basis.  Throws
 * TwistedSectorMismatch when the toric divisors do not account for h11 and
 * EulerMismatch when int c3 != 2 (h11 - h21) on a threefold.
 */
CohomologyRing hypersurface_ring(const PointConfiguration& cfg, const ChartBasis& chart, const HodgeInput& hodge);

/** Divisor-class convexity across every wall of the fan. */
struct WallCheck {
    std::size_t cone_a;
    std::size_t cone_b;
    /** <m_a, v_b> + a_b for the ray of cone_b outside cone_a. */
    Rat value;
};

struct KahlerCertificate {
    /** Per chart generator: every wall value is >= 0. */
    std::vector<bool> generator_nef;
    /** The sum of the generators has every wall value > 0. */
    bool sum_ample = false;
    std::vector<std::vector<WallCheck>> generator_walls;
    std::vector<WallCheck> sum_walls;
};

/** Wall values of a divisor a = sum a_i D_i; strictly convex iff all are positive. */
std::vector<WallCheck> convexity_walls(const Fan& fan, const RatVec& divisor);

/** Throws Error(toricring, NotConvex) naming the first violating wall. */
void require_strictly_convex(const Fan& fan, const RatVec& divisor);

KahlerCertificate kahler_cone_certificate(const CohomologyRing& ring);

}  // namespace toricmirror
