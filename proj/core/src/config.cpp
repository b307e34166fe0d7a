#include "toricmirror/config.hpp"

#include <algorithm>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

std::string to_string(ConfigKind k) {
    switch (k) {
        case ConfigKind::Hypersurface: return "hypersurface";
        case ConfigKind::CompleteIntersection: return "complete-intersection";
        case ConfigKind::Generic: return "generic";
    }
    return "generic";
}

ConfigKind parse_config_kind(const std::string& s) {
    if (s == "hypersurface") return ConfigKind::Hypersurface;
    if (s == "complete-intersection") return ConfigKind::CompleteIntersection;
    if (s == "generic") return ConfigKind::Generic;
    throw Error("config", "UnknownKind", "unknown configuration kind '" + s + "'");
}

IntMat PointConfiguration::matrix() const { return IntMat::from_columns(points); }

Int PointConfiguration::lattice_index() const {
    Int idx = 1;
    for (const auto& d : smith_normal_form(matrix()).invariant_factors()) idx *= d;
    return idx;
}

void PointConfiguration::validate() const {
    if (points.empty()) throw Error("config", "InconsistentRanks", "configuration has no points");
    for (const auto& p : points)
        if (p.size() != ambient_rank) throw Error("config", "InconsistentRanks", "column length differs from rank");
    if (labels.size() != points.size()) throw Error("config", "InconsistentRanks", "label count differs from columns");
    if (rank(matrix()) != ambient_rank)
        throw Error("config", "InconsistentRanks", "columns do not span the ambient lattice rationally");
    for (auto o : origin_columns)
        if (o >= points.size()) throw Error("config", "InconsistentRanks", "origin column out of range");
    if (kind == ConfigKind::Hypersurface) {
        for (const auto& p : points)
            if (p[0] != 1) throw Error("config", "InconsistentRanks", "hypersurface column without leading 1");
        for (std::size_t j = 1; j < ambient_rank; ++j)
            if (points[0][j] != 0) throw Error("config", "InconsistentRanks", "column 0 is not the lifted origin");
    }
    if (kind == ConfigKind::CompleteIntersection) {
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t j = 0; j < ambient_rank; ++j)
                if (points[k][j] != (j == k ? 1 : 0))
                    throw Error("config", "InconsistentRanks", "origin block column has the wrong shape");
    }
}

PointConfiguration PointConfiguration::generic(std::vector<IntVec> points, std::vector<std::size_t> origin_columns,
                                               std::vector<std::string> labels) {
    PointConfiguration c;
    c.ambient_rank = points.empty() ? 0 : points[0].size();
    c.r = 1;
    c.points = std::move(points);
    if (labels.empty())
        for (std::size_t i = 0; i < c.points.size(); ++i) labels.push_back("a" + std::to_string(i));
    c.labels = std::move(labels);
    c.kind = ConfigKind::Generic;
    c.origin_columns = std::move(origin_columns);
    c.validate();
    return c;
}

namespace {

bool interior_to_facet(const LatticePolytope& p, const IntVec& v) {
    const Face& f = p.faces()[p.carrier_face(v)];
    return f.dim == static_cast<int>(p.ambient_rank()) - 1;
}

bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

}  // namespace

PointConfiguration build_hypersurface_config(const LatticePolytope& delta_star) {
    if (!is_reflexive(delta_star)) throw Error("config", "NotReflexive", "hypersurface configuration needs reflexive input");
    const std::size_t n = delta_star.ambient_rank();
    PointConfiguration c;
    c.ambient_rank = n + 1;
    c.r = 1;
    c.kind = ConfigKind::Hypersurface;
    c.origin_columns = {0};
    c.points.push_back(IntVec(n + 1, Int(0)));
    c.points[0][0] = 1;
    c.labels.push_back("nu0");
    for (const auto& v : delta_star.lattice_points()) {
        if (is_zero(v) || interior_to_facet(delta_star, v)) continue;
        IntVec p(n + 1);
        p[0] = 1;
        std::copy(v.begin(), v.end(), p.begin() + 1);
        c.labels.push_back("nu" + std::to_string(c.points.size()));
        c.points.push_back(std::move(p));
    }
    c.validate();
    return c;
}

PointConfiguration build_cicy_config(const std::vector<LatticePolytope>& parts) {
    if (parts.empty()) throw Error("config", "InconsistentRanks", "no parts given");
    const std::size_t n = parts[0].ambient_rank();
    const std::size_t r = parts.size();
    std::vector<IntVec> all;
    for (const auto& p : parts) {
        if (p.ambient_rank() != n) throw Error("config", "InconsistentRanks", "parts have different ranks");
        all.insert(all.end(), p.vertices().begin(), p.vertices().end());
    }
    LatticePolytope dstar = LatticePolytope::hull(all);
    PointConfiguration c;
    c.ambient_rank = r + n;
    c.r = r;
    c.kind = ConfigKind::CompleteIntersection;
    for (std::size_t k = 0; k < r; ++k) {
        IntVec p(r + n, Int(0));
        p[k] = 1;
        c.points.push_back(std::move(p));
        c.labels.push_back("nu0(" + std::to_string(k + 1) + ")");
        c.origin_columns.push_back(k);
    }
    for (std::size_t k = 0; k < r; ++k) {
        std::size_t j = 0;
        for (const auto& v : parts[k].lattice_points()) {
            if (is_zero(v) || interior_to_facet(dstar, v)) continue;
            IntVec p(r + n, Int(0));
            p[k] = 1;
            std::copy(v.begin(), v.end(), p.begin() + static_cast<std::ptrdiff_t>(r));
            c.points.push_back(std::move(p));
            c.labels.push_back("nu" + std::to_string(++j) + "(" + std::to_string(k + 1) + ")");
        }
    }
    c.validate();
    return c;
}

GaleDiagram kernel_lattice(const PointConfiguration& cfg) {
    GaleDiagram g;
    g.config = cfg;
    g.kernel_basis = integer_kernel(cfg.matrix());
    g.rank_L = g.kernel_basis.size();
    if (g.rank_L == 1 && cfg.kind != ConfigKind::Generic) {
        Int s = 0;
        for (auto o : cfg.origin_columns) s += g.kernel_basis[0][o];
        if (s > 0)
            for (auto& x : g.kernel_basis[0]) x = -x;
    }
    return g;
}

}  // namespace toricmirror
