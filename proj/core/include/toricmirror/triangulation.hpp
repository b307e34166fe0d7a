#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmirror/arith.hpp"
#include "toricmirror/config.hpp"

namespace toricmirror {

/** Sorted column indices of a full-dimensional simplex. */
using Simplex = std::vector<std::size_t>;

/** A triangulation, stored canonically as a sorted list of sorted simplices. */
struct Triangulation {
    std::vector<Simplex> simplices;

    static Triangulation canonical(std::vector<Simplex> simplices);
    std::vector<std::size_t> used_points() const;
    std::string id() const;
    bool operator==(const Triangulation& o) const { return simplices == o.simplices; }
    bool operator<(const Triangulation& o) const { return simplices < o.simplices; }
};

/** Absolute determinant of the simplex columns, the lattice-normalized volume. */
Int normalized_volume(const PointConfiguration& cfg, const Simplex& s);

/** Throws Error(triangulation, InvalidTriangulation) unless T triangulates Conv(cfg). */
void validate_triangulation(const PointConfiguration& cfg, const Triangulation& t);

/** Sum of normalized volumes of all simplices. */
Int total_volume(const PointConfiguration& cfg, const Triangulation& t);

/** Placing triangulation for the column order of cfg. */
Triangulation placing_triangulation(const PointConfiguration& cfg);

/**
 * Exact regularity test.  `rows` are the folding inequalities (one per
 * interior wall and one per unused point) as vectors on the column space;
 * a regular triangulation has `heights` with rows . heights >= 1, otherwise
 * `dual` is a convex combination of rows summing to zero.
 */
struct RegularityCertificate {
    bool regular = false;
    std::vector<RatVec> rows;
    RatVec heights;
    RatVec dual;
};

RegularityCertificate is_regular(const PointConfiguration& cfg, const Triangulation& t);

/** Replays a regularity certificate from scratch. */
bool check_regularity_certificate(const PointConfiguration& cfg, const Triangulation& t,
                                  const RegularityCertificate& c);

/** Triangulation induced by generic heights; throws NonGenericHeights on ties. */
Triangulation lower_hull_triangulation(const PointConfiguration& cfg, const RatVec& heights);

/** All triangulations reachable from t by one bistellar flip, canonically ordered. */
std::vector<Triangulation> flip_neighbours(const PointConfiguration& cfg, const Triangulation& t);

struct EnumerationOptions {
    /** Column bound; 0 means the TORICMIRROR_MAX_COLUMNS environment value or 16. */
    std::size_t max_columns = 0;
    /** When false, explore the whole flip graph without the regularity filter. */
    bool regular_only = true;
};

struct RegularTriangulation {
    Triangulation triangulation;
    RegularityCertificate certificate;
};

/** Regular triangulations by flip-graph search, in canonical order. */
std::vector<RegularTriangulation> enumerate_regular_triangulations(const PointConfiguration& cfg,
                                                                   const EnumerationOptions& opt = {});

/** v_T^i = sum of volumes of the simplices having column i as a vertex. */
IntVec gkz_vector(const PointConfiguration& cfg, const Triangulation& t);

bool is_maximal(const PointConfiguration& cfg, const Triangulation& t);

/**
 * One chamber of the secondary fan in L-coordinates y_j = w . l_j, where
 * l_j is the kernel basis: sigma = {y : kappa . y >= 0 for every row kappa}.
 */
struct SecondaryCone {
    Triangulation triangulation;
    RatVec heights;
    IntVec gkz;
    /** gkz - gkz(first triangulation) in kernel-basis coordinates. */
    RatVec secondary_vertex;
    std::vector<IntVec> inequalities;
    std::vector<IntVec> rays;
    std::vector<IntVec> dual_rays;
};

struct SecondaryFan {
    GaleDiagram gale;
    std::vector<SecondaryCone> cones;

    /** Index of the chamber whose triangulation equals t. */
    std::optional<std::size_t> find(const Triangulation& t) const;
    /** Index of the chamber containing the cone spanned by the given L-coordinate rays. */
    std::optional<std::size_t> containing(const std::vector<IntVec>& rays) const;
    /** Vertices of the secondary polytope, in kernel-basis coordinates. */
    std::vector<RatVec> polytope_vertices() const;
};

SecondaryFan secondary_fan(const GaleDiagram& gale, const std::vector<RegularTriangulation>& ts);
SecondaryFan secondary_fan(const GaleDiagram& gale, const EnumerationOptions& opt = {});

/**
 * Chart basis l^(1..s) of a chamber, with the signs
 * (-1)^{sum of origin-column entries} defining x_k.
 */
struct ChartBasis {
    Triangulation triangulation;
    std::vector<IntVec> basis;
    std::vector<int> signs;
    /** Rays of the chart cone in L^dual coordinates, dual to `basis`. */
    std::vector<RatVec> dual_basis;
    bool overridden = false;
};

/**
 * Generators of the dual chamber intersected with L.  Throws
 * NonUnimodularChart unless they form a lattice basis of L.
 */
ChartBasis chart_basis(const SecondaryFan& fan, std::size_t cone);

/**
 * A caller-supplied basis of L.  It must be a lattice basis whose dual cone
 * lies inside the chamber (a subdivision chart).
 */
ChartBasis chart_basis_override(const SecondaryFan& fan, std::size_t cone, const std::vector<IntVec>& basis);

/** x = sign * a^l monomial description, e.g. "-a1*a2/a0^5". */
std::string chart_monomial(const IntVec& l, int sign);

}  // namespace toricmirror
