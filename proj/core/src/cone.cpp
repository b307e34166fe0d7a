#include "toricmirror/cone.hpp"

#include <algorithm>
#include <cstdint>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

namespace {

class Bits {
public:
    explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
    void set(std::size_t i) { w_[i / 64] |= (std::uint64_t(1) << (i % 64)); }
    void grow(std::size_t n) { w_.resize((n + 63) / 64, 0); }
    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }
    Bits operator&(const Bits& o) const {
        Bits r;
        r.w_.resize(std::max(w_.size(), o.w_.size()), 0);
        for (std::size_t i = 0; i < std::min(w_.size(), o.w_.size()); ++i) r.w_[i] = w_[i] & o.w_[i];
        return r;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t other = i < o.w_.size() ? o.w_[i] : 0;
            if (w_[i] & ~other) return false;
        }
        return true;
    }

private:
    std::vector<std::uint64_t> w_;
};

struct Ray {
    IntVec v;
    Bits zeros;
};

}  // namespace

std::vector<IntVec> extreme_rays(const std::vector<IntVec>& ineq, std::size_t dim) {
    if (dim == 0) return {};
    for (const auto& g : ineq)
        if (g.size() != dim) throw std::invalid_argument("extreme_rays: inequality length mismatch");

    std::vector<std::size_t> basis;
    std::vector<IntVec> chosen;
    for (std::size_t i = 0; i < ineq.size() && basis.size() < dim; ++i) {
        chosen.push_back(ineq[i]);
        if (rank_of_vectors(chosen) == chosen.size()) {
            basis.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    if (basis.size() < dim) throw Error("cone", "NotPointed", "inequalities do not have full rank");

    std::vector<std::size_t> order = basis;
    std::vector<bool> in_basis(ineq.size(), false);
    for (auto b : basis) in_basis[b] = true;
    for (std::size_t i = 0; i < ineq.size(); ++i)
        if (!in_basis[i]) order.push_back(i);

    RatMat bm = to_rat(matrix_from_rows(chosen, dim));
    RatMat binv = *inverse(bm);
    std::vector<Ray> rays;
    for (std::size_t j = 0; j < dim; ++j) {
        Ray r{primitive(binv.col(j)), Bits(order.size())};
        for (std::size_t i = 0; i < dim; ++i)
            if (i != j) r.zeros.set(i);
        rays.push_back(std::move(r));
    }

    for (std::size_t step = dim; step < order.size(); ++step) {
        const IntVec& g = ineq[order[step]];
        std::vector<Ray> pos, neg, next;
        std::vector<Int> neg_val, pos_val;
        for (auto& r : rays) {
            Int s = dot(g, r.v);
            if (s > 0) {
                pos_val.push_back(s);
                pos.push_back(std::move(r));
            } else if (s < 0) {
                neg_val.push_back(s);
                neg.push_back(std::move(r));
            } else {
                r.zeros.set(step);
                next.push_back(std::move(r));
            }
        }
        std::vector<const Ray*> all;
        for (auto& r : pos) all.push_back(&r);
        for (auto& r : neg) all.push_back(&r);
        for (auto& r : next) all.push_back(&r);
        std::vector<Ray> created;
        for (std::size_t a = 0; a < pos.size(); ++a) {
            for (std::size_t b = 0; b < neg.size(); ++b) {
                Bits common = pos[a].zeros & neg[b].zeros;
                if (common.count() + 2 < dim) continue;
                bool adjacent = true;
                for (const Ray* o : all) {
                    if (o == &pos[a] || o == &neg[b]) continue;
                    if (common.subset_of(o->zeros)) {
                        adjacent = false;
                        break;
                    }
                }
                if (!adjacent) continue;
                IntVec v(dim);
                for (std::size_t k = 0; k < dim; ++k)
                    v[k] = pos_val[a] * neg[b].v[k] - neg_val[b] * pos[a].v[k];
                Ray r{primitive(v), common};
                r.zeros.set(step);
                created.push_back(std::move(r));
            }
        }
        for (auto& r : pos) next.push_back(std::move(r));
        for (auto& r : created) next.push_back(std::move(r));
        rays = std::move(next);
    }

    std::vector<IntVec> out;
    for (auto& r : rays) out.push_back(r.v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Int Halfspace::eval(const IntVec& x) const { return dot(normal, x) + offset; }

Rat Halfspace::eval(const RatVec& x) const { return dot(to_rat(normal), x) + Rat(offset); }

std::vector<Halfspace> hull_facets(const std::vector<IntVec>& points) {
    if (points.empty()) throw std::invalid_argument("hull_facets: no points");
    const std::size_t n = points[0].size();
    std::vector<IntVec> rows;
    for (const auto& p : points) {
        IntVec r(n + 1);
        r[0] = 1;
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = p[i];
        rows.push_back(std::move(r));
    }
    std::vector<Halfspace> out;
    for (const auto& z : extreme_rays(rows, n + 1)) {
        Halfspace h;
        h.offset = z[0];
        h.normal.assign(z.begin() + 1, z.end());
        out.push_back(std::move(h));
    }
    return out;
}

std::vector<RatVec> polytope_vertices(const std::vector<Halfspace>& hs, std::size_t dim) {
    std::vector<IntVec> rows;
    for (const auto& h : hs) {
        IntVec r(dim + 1);
        r[0] = h.offset;
        for (std::size_t i = 0; i < dim; ++i) r[i + 1] = h.normal[i];
        rows.push_back(std::move(r));
    }
    IntVec t(dim + 1, Int(0));
    t[0] = 1;
    rows.push_back(t);
    std::vector<RatVec> out;
    for (const auto& z : extreme_rays(rows, dim + 1)) {
        if (z[0] == 0) throw Error("cone", "Unbounded", "polyhedron has a recession direction");
        RatVec v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = Rat(z[i + 1], z[0]);
        for (auto& x : v) x.canonicalize();
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IntVec> hull_vertices(const std::vector<IntVec>& points) {
    if (points.empty()) return {};
    const std::size_t n = points[0].size();
    std::vector<IntVec> uniq = points;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    if (uniq.size() == 1) return uniq;

    // Work in coordinates of the affine span so lower-dimensional sets are handled.
    RatMat diff(uniq.size() - 1, n);
    for (std::size_t i = 1; i < uniq.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) diff(i - 1, j) = uniq[i][j] - uniq[0][j];
    std::vector<std::size_t> piv = rref(diff).pivots;
    const std::size_t d = piv.size();
    std::vector<IntVec> proj;
    for (const auto& p : uniq) {
        IntVec q(d);
        for (std::size_t k = 0; k < d; ++k) q[k] = p[piv[k]];
        proj.push_back(std::move(q));
    }
    if (d == 1) {
        auto mm = std::minmax_element(proj.begin(), proj.end());
        std::vector<IntVec> out{uniq[mm.first - proj.begin()], uniq[mm.second - proj.begin()]};
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<Halfspace> facets = hull_facets(proj);
    std::vector<IntVec> out;
    for (std::size_t i = 0; i < proj.size(); ++i) {
        std::vector<IntVec> tight;
        for (const auto& f : facets)
            if (f.eval(proj[i]) == 0) tight.push_back(f.normal);
        if (rank_of_vectors(tight) == d) out.push_back(uniq[i]);
    }
    return out;
}

}  // namespace toricmirror
