#include "toricmirror/polytope.hpp"

#include <algorithm>
#include <climits>
#include <mutex>
#include <set>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

struct LatticePolytope::Cache {
    std::once_flag points_once;
    std::vector<IntVec> points;
    std::once_flag faces_once;
    std::vector<Face> faces;
    std::map<std::vector<std::size_t>, std::size_t> face_ids;
    std::vector<std::vector<std::size_t>> facet_vertices;
};

namespace {

std::size_t affine_rank(const std::vector<IntVec>& pts) {
    if (pts.size() <= 1) return 0;
    std::vector<IntVec> diff;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        IntVec d(pts[0].size());
        for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
        diff.push_back(std::move(d));
    }
    return rank_of_vectors(diff);
}

bool fits_small(const Int& x) { return abs(x) < (Int(1) << 24); }

}  // namespace

LatticePolytope LatticePolytope::hull(const std::vector<IntVec>& points) {
    if (points.empty()) throw Error("polytope", "Empty", "polytope needs at least one point");
    for (const auto& p : points)
        if (p.size() != points[0].size()) throw Error("polytope", "RankMismatch", "points of different length");
    LatticePolytope p;
    p.init(hull_vertices(points));
    return p;
}

LatticePolytope LatticePolytope::from_vertices(const std::vector<IntVec>& vertices) {
    LatticePolytope p = hull(vertices);
    std::vector<IntVec> given = vertices;
    std::sort(given.begin(), given.end());
    given.erase(std::unique(given.begin(), given.end()), given.end());
    if (given != p.vertices_) {
        for (const auto& v : given)
            if (!std::binary_search(p.vertices_.begin(), p.vertices_.end(), v))
                throw Error("polytope", "NotAVertex", "point " + to_string(v) + " is not a vertex");
    }
    return p;
}

void LatticePolytope::init(std::vector<IntVec> verts) {
    n_ = verts[0].size();
    vertices_ = std::move(verts);
    cache_ = std::make_shared<Cache>();
    RatMat diff(vertices_.size() - 1, n_);
    for (std::size_t i = 1; i < vertices_.size(); ++i)
        for (std::size_t j = 0; j < n_; ++j) diff(i - 1, j) = vertices_[i][j] - vertices_[0][j];
    if (vertices_.size() > 1) {
        pivots_ = rref(diff).pivots;
        for (const auto& w : nullspace(diff)) {
            IntVec e = primitive(w);
            span_offsets_.push_back(dot(e, vertices_[0]));
            span_equations_.push_back(std::move(e));
        }
    } else {
        for (std::size_t j = 0; j < n_; ++j) {
            IntVec e(n_, Int(0));
            e[j] = 1;
            span_offsets_.push_back(vertices_[0][j]);
            span_equations_.push_back(std::move(e));
        }
    }
    d_ = pivots_.size();
    std::vector<IntVec> proj;
    for (const auto& v : vertices_) proj.push_back(project(v));
    if (d_ == 1) {
        auto mm = std::minmax_element(proj.begin(), proj.end());
        proj_facets_.push_back(Halfspace{IntVec{Int(1)}, -(*mm.first)[0]});
        proj_facets_.push_back(Halfspace{IntVec{Int(-1)}, (*mm.second)[0]});
    } else if (d_ >= 2) {
        proj_facets_ = hull_facets(proj);
    }
}

IntVec LatticePolytope::project(const IntVec& x) const {
    IntVec q(pivots_.size());
    for (std::size_t k = 0; k < pivots_.size(); ++k) q[k] = x[pivots_[k]];
    return q;
}

const std::vector<Halfspace>& LatticePolytope::facets() const {
    if (!full_dimensional())
        throw Error("polytope", "NotFullDimensional", "facets requested for a lower-dimensional polytope");
    return proj_facets_;
}

bool LatticePolytope::contains(const IntVec& x) const {
    if (x.size() != n_) return false;
    for (std::size_t i = 0; i < span_equations_.size(); ++i)
        if (dot(span_equations_[i], x) != span_offsets_[i]) return false;
    IntVec q = project(x);
    for (const auto& f : proj_facets_)
        if (f.eval(q) < 0) return false;
    return true;
}

bool LatticePolytope::strictly_interior(const IntVec& x) const {
    if (!contains(x)) return false;
    IntVec q = project(x);
    for (const auto& f : proj_facets_)
        if (f.eval(q) == 0) return false;
    return true;
}

const std::vector<IntVec>& LatticePolytope::lattice_points() const {
    std::call_once(cache_->points_once, [this] {
        IntVec lo = vertices_[0], hi = vertices_[0];
        for (const auto& v : vertices_)
            for (std::size_t j = 0; j < n_; ++j) {
                if (v[j] < lo[j]) lo[j] = v[j];
                if (v[j] > hi[j]) hi[j] = v[j];
            }
        bool small = true;
        for (std::size_t j = 0; j < n_; ++j) small = small && fits_small(lo[j]) && fits_small(hi[j]);
        for (const auto& f : proj_facets_) {
            small = small && fits_small(f.offset);
            for (const auto& a : f.normal) small = small && fits_small(a);
        }
        for (std::size_t i = 0; i < span_equations_.size(); ++i) {
            small = small && fits_small(span_offsets_[i]);
            for (const auto& a : span_equations_[i]) small = small && fits_small(a);
        }
        auto& out = cache_->points;
        if (!small) {
            IntVec x = lo;
            for (;;) {
                if (contains(x)) out.push_back(x);
                std::size_t j = n_;
                bool done = true;
                while (j > 0) {
                    --j;
                    if (x[j] < hi[j]) {
                        ++x[j];
                        done = false;
                        break;
                    }
                    x[j] = lo[j];
                }
                if (done) return;
            }
        }
        // Machine-integer scan of the bounding box; the bounds above keep every sum in range.
        using ll = long long;
        std::vector<ll> l(n_), h(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            l[j] = lo[j].get_si();
            h[j] = hi[j].get_si();
        }
        std::vector<std::vector<ll>> eq;
        std::vector<ll> eqo;
        for (std::size_t i = 0; i < span_equations_.size(); ++i) {
            std::vector<ll> e;
            for (const auto& a : span_equations_[i]) e.push_back(a.get_si());
            eq.push_back(e);
            eqo.push_back(span_offsets_[i].get_si());
        }
        std::vector<std::vector<ll>> fn;
        std::vector<ll> fo;
        for (const auto& f : proj_facets_) {
            std::vector<ll> a;
            for (const auto& c : f.normal) a.push_back(c.get_si());
            fn.push_back(a);
            fo.push_back(f.offset.get_si());
        }
        std::vector<ll> x = l;
        for (;;) {
            bool ok = true;
            for (std::size_t i = 0; ok && i < eq.size(); ++i) {
                ll s = 0;
                for (std::size_t j = 0; j < n_; ++j) s += eq[i][j] * x[j];
                ok = s == eqo[i];
            }
            for (std::size_t i = 0; ok && i < fn.size(); ++i) {
                ll s = fo[i];
                for (std::size_t k = 0; k < pivots_.size(); ++k) s += fn[i][k] * x[pivots_[k]];
                ok = s >= 0;
            }
            if (ok) {
                IntVec p(n_);
                for (std::size_t j = 0; j < n_; ++j) p[j] = Int(static_cast<long>(x[j]));
                out.push_back(std::move(p));
            }
            std::size_t j = n_;
            bool done = true;
            while (j > 0) {
                --j;
                if (x[j] < h[j]) {
                    ++x[j];
                    done = false;
                    break;
                }
                x[j] = l[j];
            }
            if (done) break;
        }
    });
    return cache_->points;
}

const std::vector<Face>& LatticePolytope::faces() const {
    std::call_once(cache_->faces_once, [this] {
        const std::size_t nv = vertices_.size();
        std::vector<IntVec> proj;
        for (const auto& v : vertices_) proj.push_back(project(v));
        auto& fv = cache_->facet_vertices;
        for (const auto& f : proj_facets_) {
            std::vector<std::size_t> s;
            for (std::size_t i = 0; i < nv; ++i)
                if (f.eval(proj[i]) == 0) s.push_back(i);
            fv.push_back(std::move(s));
        }
        std::set<std::vector<std::size_t>> seen;
        std::vector<std::vector<std::size_t>> queue;
        std::vector<std::size_t> all(nv);
        for (std::size_t i = 0; i < nv; ++i) all[i] = i;
        seen.insert(all);
        for (const auto& s : fv)
            if (seen.insert(s).second) queue.push_back(s);
        for (std::size_t q = 0; q < queue.size(); ++q) {
            for (const auto& s : fv) {
                std::vector<std::size_t> meet;
                std::set_intersection(queue[q].begin(), queue[q].end(), s.begin(), s.end(),
                                      std::back_inserter(meet));
                if (!meet.empty() && seen.insert(meet).second) queue.push_back(meet);
            }
        }
        std::vector<Face> faces;
        for (const auto& s : seen) {
            Face f;
            f.vertex_indices = s;
            std::vector<IntVec> pts;
            for (auto i : s) pts.push_back(vertices_[i]);
            f.dim = static_cast<int>(affine_rank(pts));
            faces.push_back(std::move(f));
        }
        std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
            if (a.dim != b.dim) return a.dim < b.dim;
            return a.vertex_indices < b.vertex_indices;
        });
        for (std::size_t i = 0; i < faces.size(); ++i) cache_->face_ids[faces[i].vertex_indices] = i;
        cache_->faces = std::move(faces);
        for (const auto& p : lattice_points())
            ++cache_->faces[cache_->face_ids.at(carrier_vertices(p))].interior_points;
        for (auto& f : cache_->faces) {
            for (const auto& g : cache_->faces)
                if (std::includes(f.vertex_indices.begin(), f.vertex_indices.end(), g.vertex_indices.begin(),
                                  g.vertex_indices.end()))
                    f.lattice_points += g.interior_points;
        }
    });
    return cache_->faces;
}

std::vector<std::size_t> LatticePolytope::faces_of_dim(int k) const {
    std::vector<std::size_t> out;
    const auto& fs = faces();
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (fs[i].dim == k) out.push_back(i);
    return out;
}

std::optional<std::size_t> LatticePolytope::face_index(const std::vector<std::size_t>& vertex_indices) const {
    faces();
    auto it = cache_->face_ids.find(vertex_indices);
    if (it == cache_->face_ids.end()) return std::nullopt;
    return it->second;
}

std::size_t LatticePolytope::carrier_face(const IntVec& x) const {
    if (!contains(x)) throw Error("polytope", "NotInPolytope", "point " + to_string(x) + " is outside");
    faces();
    return cache_->face_ids.at(carrier_vertices(x));
}

std::vector<std::size_t> LatticePolytope::carrier_vertices(const IntVec& x) const {
    IntVec q = project(x);
    std::vector<std::size_t> s(vertices_.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = i;
    const auto& fv = cache_->facet_vertices;
    for (std::size_t j = 0; j < proj_facets_.size(); ++j) {
        if (proj_facets_[j].eval(q) != 0) continue;
        std::vector<std::size_t> meet;
        std::set_intersection(s.begin(), s.end(), fv[j].begin(), fv[j].end(), std::back_inserter(meet));
        s = std::move(meet);
    }
    return s;
}

NonLatticeDualError::NonLatticeDualError(std::vector<RatVec> vertices)
    : Error("polytope", "NonLatticeDual", [&] {
          std::string s = "polar dual has fractional vertices:";
          for (const auto& v : vertices) s += " " + to_string(v);
          return s;
      }()),
      vertices_(std::move(vertices)) {}

std::vector<RatVec> polar_dual_vertices(const LatticePolytope& p) {
    if (!p.full_dimensional()) throw Error("polytope", "OriginNotInterior", "polytope is not full-dimensional");
    std::vector<RatVec> out;
    for (const auto& f : p.facets()) {
        if (f.offset <= 0) throw Error("polytope", "OriginNotInterior", "origin is not an interior point");
        RatVec v(f.normal.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] = Rat(f.normal[i], f.offset);
            v[i].canonicalize();
        }
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

LatticePolytope polar_dual(const LatticePolytope& p) {
    std::vector<RatVec> rv = polar_dual_vertices(p);
    std::vector<IntVec> iv;
    for (const auto& v : rv) {
        if (!is_integral(v)) throw NonLatticeDualError(rv);
        iv.push_back(to_int(v));
    }
    return LatticePolytope::from_vertices(iv);
}

bool is_reflexive(const LatticePolytope& p) {
    if (!p.full_dimensional()) return false;
    for (const auto& f : p.facets())
        if (f.offset <= 0) return false;
    for (const auto& f : p.facets())
        if (f.offset != 1) return false;
    std::size_t interior = 0;
    for (const auto& x : p.lattice_points())
        if (p.strictly_interior(x)) ++interior;
    if (interior != 1) throw std::logic_error("reflexive polytope with extra interior lattice points");
    return true;
}

std::vector<Face> paired_face_lattice(const LatticePolytope& p) {
    if (!is_reflexive(p)) throw Error("polytope", "DualUnavailable", "dual pairing needs a reflexive polytope");
    LatticePolytope q = polar_dual(p);
    const auto& facets = p.facets();
    std::vector<std::size_t> facet_to_dual(facets.size());
    for (std::size_t j = 0; j < facets.size(); ++j) {
        auto it = std::lower_bound(q.vertices().begin(), q.vertices().end(), facets[j].normal);
        facet_to_dual[j] = static_cast<std::size_t>(it - q.vertices().begin());
    }
    std::vector<Face> faces = p.faces();
    const int n = static_cast<int>(p.ambient_rank());
    for (auto& f : faces) {
        if (f.dim == n) continue;
        std::vector<std::size_t> dual;
        for (std::size_t j = 0; j < facets.size(); ++j) {
            bool all = true;
            for (auto i : f.vertex_indices)
                if (dot(facets[j].normal, p.vertices()[i]) + facets[j].offset != 0) {
                    all = false;
                    break;
                }
            if (all) dual.push_back(facet_to_dual[j]);
        }
        std::sort(dual.begin(), dual.end());
        f.dual_face = q.face_index(dual);
        if (!f.dual_face || q.faces()[*f.dual_face].dim != n - f.dim - 1)
            throw std::logic_error("face pairing does not reverse dimension");
    }
    return faces;
}

namespace {

Int formula_line(const LatticePolytope& p, const std::vector<Face>& faces, const std::vector<Face>& dual_faces) {
    const int n = static_cast<int>(p.ambient_rank());
    Int h = Int(static_cast<long>(p.lattice_points().size())) - n - 1;
    for (const auto& f : faces) {
        if (f.dim == n - 1) h -= Int(static_cast<unsigned long>(f.interior_points));
        if (f.dim == n - 2)
            h += Int(static_cast<unsigned long>(f.interior_points)) *
                 Int(static_cast<unsigned long>(dual_faces[*f.dual_face].interior_points));
    }
    return h;
}

}  // namespace

HodgePair hodge_numbers(const LatticePolytope& delta) {
    if (!is_reflexive(delta)) throw Error("polytope", "NotReflexive", "Hodge numbers need a reflexive polytope");
    LatticePolytope dual = polar_dual(delta);
    std::vector<Face> f = paired_face_lattice(delta);
    std::vector<Face> g = paired_face_lattice(dual);
    HodgePair out;
    out.h21 = formula_line(delta, f, g);
    out.h11 = formula_line(dual, g, f);
    const std::size_t n = delta.ambient_rank();
    if (n != 4)
        out.caveat = "rank " + std::to_string(n) +
                     ": values are lattice counts, not Hodge numbers of a Calabi-Yau threefold";
    return out;
}

HodgePair hodge_numbers_hypersurface(const LatticePolytope& delta) {
    if (delta.ambient_rank() != 4) throw Error("polytope", "WrongRank", "threefold Hodge numbers need rank 4");
    return hodge_numbers(delta);
}

LatticePolytope minkowski_sum(const LatticePolytope& a, const LatticePolytope& b) {
    if (a.ambient_rank() != b.ambient_rank()) throw Error("polytope", "RankMismatch", "Minkowski sum ranks differ");
    std::vector<IntVec> sums;
    for (const auto& u : a.vertices())
        for (const auto& v : b.vertices()) {
            IntVec s(u.size());
            for (std::size_t i = 0; i < s.size(); ++i) s[i] = u[i] + v[i];
            sums.push_back(std::move(s));
        }
    return LatticePolytope::hull(sums);
}

NefPartition NefPartition::from_vertex_groups(const LatticePolytope& delta_star,
                                              const std::vector<std::vector<IntVec>>& groups) {
    NefPartition np{polar_dual(delta_star), {}};
    const auto& vs = delta_star.vertices();
    for (const auto& g : groups) {
        std::vector<std::size_t> idx;
        for (const auto& v : g) {
            auto it = std::lower_bound(vs.begin(), vs.end(), v);
            if (it == vs.end() || *it != v)
                throw Error("polytope", "InvalidPartition", to_string(v) + " is not a vertex of the dual polytope");
            idx.push_back(static_cast<std::size_t>(it - vs.begin()));
        }
        std::sort(idx.begin(), idx.end());
        np.parts.push_back(std::move(idx));
    }
    return np;
}

NefDual nef_partition_dual(const NefPartition& np) {
    LatticePolytope dstar = polar_dual(np.parent);
    const auto& verts = dstar.vertices();
    const std::size_t n = dstar.ambient_rank();
    const std::size_t r = np.parts.size();
    if (r == 0) throw Error("polytope", "InvalidPartition", "no parts");
    std::vector<int> owner(verts.size(), -1);
    for (std::size_t k = 0; k < r; ++k)
        for (auto i : np.parts[k]) {
            if (i >= verts.size()) throw Error("polytope", "InvalidPartition", "vertex index out of range");
            if (owner[i] != -1) throw Error("polytope", "InvalidPartition", "groups overlap");
            owner[i] = static_cast<int>(k);
        }
    for (auto o : owner)
        if (o == -1) throw Error("polytope", "InvalidPartition", "groups miss a vertex");

    // Linear pieces m_{F,k} of each phi_k on the cone over facet F of Delta*.
    const auto& facets = dstar.facets();
    std::vector<std::vector<IntVec>> pieces(facets.size());
    for (std::size_t j = 0; j < facets.size(); ++j) {
        std::vector<std::size_t> on;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (facets[j].eval(verts[i]) == 0) on.push_back(i);
        RatMat a(on.size(), n);
        for (std::size_t t = 0; t < on.size(); ++t)
            for (std::size_t c = 0; c < n; ++c) a(t, c) = verts[on[t]][c];
        for (std::size_t k = 0; k < r; ++k) {
            RatVec rhs(on.size());
            for (std::size_t t = 0; t < on.size(); ++t) rhs[t] = owner[on[t]] == static_cast<int>(k) ? 1 : 0;
            auto m = solve_unique(a, rhs);
            if (!m || !is_integral(*m))
                throw Error("polytope", "InvalidPartition", "partition is not nef on a facet");
            pieces[j].push_back(to_int(*m));
        }
    }

    std::vector<std::vector<IntVec>> nabla_pts(r, std::vector<IntVec>{IntVec(n, Int(0))});
    for (const auto& v : dstar.lattice_points()) {
        std::size_t j = 0;
        while (j < facets.size() && facets[j].eval(v) != 0) ++j;
        if (j == facets.size()) continue;
        for (std::size_t k = 0; k < r; ++k)
            if (dot(pieces[j][k], v) == 1) nabla_pts[k].push_back(v);
    }
    NefDual out;
    for (std::size_t k = 0; k < r; ++k) out.nabla_parts.push_back(LatticePolytope::hull(nabla_pts[k]));
    out.nabla = out.nabla_parts[0];
    for (std::size_t k = 1; k < r; ++k) out.nabla = minkowski_sum(out.nabla, out.nabla_parts[k]);

    for (std::size_t k = 0; k < r; ++k) {
        std::vector<Halfspace> hs;
        for (std::size_t j = 0; j < r; ++j)
            for (const auto& v : out.nabla_parts[j].vertices()) {
                bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
                if (!zero) hs.push_back(Halfspace{v, Int(j == k ? 1 : 0)});
            }
        std::vector<IntVec> iv;
        for (const auto& v : polytope_vertices(hs, n)) {
            if (!is_integral(v)) throw Error("polytope", "InvalidPartition", "a part of Delta is not a lattice polytope");
            iv.push_back(to_int(v));
        }
        out.delta_parts.push_back(LatticePolytope::hull(iv));
    }

    std::vector<IntVec> all;
    for (const auto& p : out.nabla_parts) all.insert(all.end(), p.vertices().begin(), p.vertices().end());
    if (!(LatticePolytope::hull(all) == dstar))
        throw Error("polytope", "PostCheckFailed", "Conv of the nabla parts differs from Delta*");
    all.clear();
    for (const auto& p : out.delta_parts) all.insert(all.end(), p.vertices().begin(), p.vertices().end());
    LatticePolytope conv_delta = LatticePolytope::hull(all);
    if (!is_reflexive(conv_delta) || !(polar_dual(conv_delta) == out.nabla))
        throw Error("polytope", "PostCheckFailed", "polar of Conv of the Delta parts differs from nabla");
    return out;
}

}  // namespace toricmirror
