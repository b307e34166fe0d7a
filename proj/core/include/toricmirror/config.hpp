#pragma once

#include <string>
#include <vector>

#include "toricmirror/arith.hpp"
#include "toricmirror/polytope.hpp"

namespace toricmirror {

enum class ConfigKind { Hypersurface, CompleteIntersection, Generic };

std::string to_string(ConfigKind k);
ConfigKind parse_config_kind(const std::string& s);

/**
 * An ordered list of lifted integer points, the columns of the matrix A.
 * `origin_columns` lists the lifted origin of each block (the single column
 * 0 for hypersurfaces, the first r columns for complete intersections).
 */
struct PointConfiguration {
    std::size_t ambient_rank = 0;
    std::size_t r = 1;
    std::vector<IntVec> points;
    std::vector<std::string> labels;
    ConfigKind kind = ConfigKind::Generic;
    std::vector<std::size_t> origin_columns;

    std::size_t size() const { return points.size(); }
    IntMat matrix() const;
    /** Index of the column lattice in its saturation (1 when A is onto its saturation). */
    Int lattice_index() const;

    /**
     * Validated construction of an arbitrary configuration.  Throws
     * Error(config, InconsistentRanks) on ragged or rank-deficient input.
     */
    static PointConfiguration generic(std::vector<IntVec> points, std::vector<std::size_t> origin_columns,
                                      std::vector<std::string> labels = {});
    void validate() const;
};

/** Kernel lattice L = Ker A with a saturated basis. */
struct GaleDiagram {
    PointConfiguration config;
    std::vector<IntVec> kernel_basis;
    std::size_t rank_L = 0;
};

/** Lifted non-facet-interior lattice points of a reflexive Delta*; origin first. */
PointConfiguration build_hypersurface_config(const LatticePolytope& delta_star);

/**
 * Complete-intersection configuration from the parts of a dual nef
 * partition: r origin columns (e_k; 0) followed, block by block, by (e_k; v)
 * for the nonzero points v of the k-th part not interior to a facet of
 * Conv(parts).
 */
PointConfiguration build_cicy_config(const std::vector<LatticePolytope>& parts);

/**
 * Saturated kernel basis in Hermite normal form.  For hypersurface and
 * complete-intersection configurations of kernel rank 1 the sign is chosen
 * so that the origin block sum is negative.
 */
GaleDiagram kernel_lattice(const PointConfiguration& cfg);

}  // namespace toricmirror
