#include "toricmirror/triangulation.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

#include "toricmirror/cone.hpp"
#include "toricmirror/linalg.hpp"
#include "toricmirror/lp.hpp"

namespace toricmirror {

namespace {

IntMat columns(const PointConfiguration& cfg, const std::vector<std::size_t>& idx) {
    IntMat m(cfg.ambient_rank, idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t r = 0; r < cfg.ambient_rank; ++r) m(r, c) = cfg.points[idx[c]][r];
    return m;
}

/** Normal to the hyperplane spanned by m-1 independent columns. */
IntVec hyperplane_normal(const PointConfiguration& cfg, const std::vector<std::size_t>& facet) {
    auto ns = nullspace(to_rat(columns(cfg, facet).transposed()));
    if (ns.size() != 1) throw std::logic_error("degenerate facet");
    return primitive(ns[0]);
}

int sign_of(const Int& x) { return sgn(x); }

/** The unique dependency among m+1 columns spanning rank m, or nothing. */
std::optional<RatVec> circuit_on(const PointConfiguration& cfg, const std::vector<std::size_t>& idx) {
    auto ns = nullspace(to_rat(columns(cfg, idx)));
    if (ns.size() != 1) return std::nullopt;
    return ns[0];
}

Simplex without(const Simplex& s, std::size_t skip) {
    Simplex f;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (i != skip) f.push_back(s[i]);
    return f;
}

struct Wall {
    Simplex facet;
    std::size_t p;
    std::size_t q;
};

struct FacetMap {
    std::map<Simplex, std::vector<std::pair<std::size_t, std::size_t>>> incidences;
};

FacetMap facet_map(const Triangulation& t) {
    FacetMap fm;
    for (std::size_t s = 0; s < t.simplices.size(); ++s) {
        const Simplex& sim = t.simplices[s];
        for (std::size_t i = 0; i < sim.size(); ++i) fm.incidences[without(sim, i)].push_back({s, sim[i]});
    }
    return fm;
}

std::vector<Wall> interior_walls(const Triangulation& t) {
    std::vector<Wall> out;
    for (const auto& [f, inc] : facet_map(t).incidences)
        if (inc.size() == 2) out.push_back(Wall{f, inc[0].second, inc[1].second});
    return out;
}

/** Barycentric coordinates of column u in the cone of a simplex, if it lies there. */
std::optional<RatVec> cone_coordinates(const PointConfiguration& cfg, const Simplex& s, std::size_t u) {
    RatMat b = to_rat(columns(cfg, s));
    auto lam = solve_unique(b, to_rat(cfg.points[u]));
    if (!lam) return std::nullopt;
    for (const auto& x : *lam)
        if (x < 0) return std::nullopt;
    return lam;
}

std::vector<RatVec> folding_rows(const PointConfiguration& cfg, const Triangulation& t) {
    const std::size_t n = cfg.size();
    std::vector<RatVec> rows;
    for (const auto& w : interior_walls(t)) {
        std::vector<std::size_t> idx = w.facet;
        idx.push_back(w.p);
        idx.push_back(w.q);
        auto mu = circuit_on(cfg, idx);
        if (!mu) throw std::logic_error("wall without a circuit");
        Rat s = (*mu)[idx.size() - 2];
        RatVec row(n, Rat(0));
        for (std::size_t i = 0; i < idx.size(); ++i) row[idx[i]] = (*mu)[i] / s;
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> used = t.used_points();
    for (std::size_t u = 0; u < n; ++u) {
        if (std::binary_search(used.begin(), used.end(), u)) continue;
        bool found = false;
        for (const auto& s : t.simplices) {
            auto lam = cone_coordinates(cfg, s, u);
            if (!lam) continue;
            RatVec row(n, Rat(0));
            row[u] = 1;
            for (std::size_t i = 0; i < s.size(); ++i) row[s[i]] -= (*lam)[i];
            rows.push_back(std::move(row));
            found = true;
            break;
        }
        if (!found) throw Error("triangulation", "InvalidTriangulation", "an unused point is not covered");
    }
    return rows;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        f(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

std::size_t column_bound(const EnumerationOptions& opt) {
    if (opt.max_columns) return opt.max_columns;
    if (const char* env = std::getenv("TORICMIRROR_MAX_COLUMNS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 16;
}

}  // namespace

Triangulation Triangulation::canonical(std::vector<Simplex> simplices) {
    for (auto& s : simplices) std::sort(s.begin(), s.end());
    std::sort(simplices.begin(), simplices.end());
    return Triangulation{std::move(simplices)};
}

std::vector<std::size_t> Triangulation::used_points() const {
    std::set<std::size_t> u;
    for (const auto& s : simplices) u.insert(s.begin(), s.end());
    return {u.begin(), u.end()};
}

std::string Triangulation::id() const {
    std::string s = "[";
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        if (i) s += ",";
        s += "{";
        for (std::size_t j = 0; j < simplices[i].size(); ++j) {
            if (j) s += ",";
            s += std::to_string(simplices[i][j]);
        }
        s += "}";
    }
    return s + "]";
}

Int normalized_volume(const PointConfiguration& cfg, const Simplex& s) {
    if (s.size() != cfg.ambient_rank) throw Error("triangulation", "DegenerateSimplex", "simplex has the wrong size");
    for (auto i : s)
        if (i >= cfg.size()) throw Error("triangulation", "DegenerateSimplex", "simplex index out of range");
    return abs(determinant(columns(cfg, s)));
}

Int total_volume(const PointConfiguration& cfg, const Triangulation& t) {
    Int v = 0;
    for (const auto& s : t.simplices) v += normalized_volume(cfg, s);
    return v;
}

void validate_triangulation(const PointConfiguration& cfg, const Triangulation& t) {
    auto fail = [](const std::string& why) { throw Error("triangulation", "InvalidTriangulation", why); };
    if (t.simplices.empty()) fail("no simplices");
    for (const auto& s : t.simplices) {
        if (!std::is_sorted(s.begin(), s.end()) || std::adjacent_find(s.begin(), s.end()) != s.end())
            fail("simplex indices are not sorted and distinct");
        if (normalized_volume(cfg, s) == 0) fail("degenerate simplex");
    }
    for (const auto& [f, inc] : facet_map(t).incidences) {
        IntVec nrm = hyperplane_normal(cfg, f);
        if (inc.size() > 2) fail("a facet lies in more than two simplices");
        if (inc.size() == 2) {
            int a = sign_of(dot(nrm, cfg.points[inc[0].second]));
            int b = sign_of(dot(nrm, cfg.points[inc[1].second]));
            if (a * b >= 0) fail("two simplices on the same side of a common facet");
        } else {
            int a = sign_of(dot(nrm, cfg.points[inc[0].second]));
            for (const auto& p : cfg.points)
                if (sign_of(dot(nrm, p)) * a < 0) fail("boundary facet is not on the hull boundary");
        }
    }
    if (total_volume(cfg, t) != total_volume(cfg, placing_triangulation(cfg))) fail("volume does not match the hull");
}

Triangulation placing_triangulation(const PointConfiguration& cfg) {
    const std::size_t m = cfg.ambient_rank;
    Simplex first;
    std::vector<IntVec> chosen;
    for (std::size_t i = 0; i < cfg.size() && first.size() < m; ++i) {
        chosen.push_back(cfg.points[i]);
        if (rank_of_vectors(chosen) == chosen.size()) {
            first.push_back(i);
        } else {
            chosen.pop_back();
        }
    }
    if (first.size() < m) throw Error("triangulation", "DegenerateSimplex", "configuration is not full rank");
    std::vector<Simplex> simplices{first};
    for (std::size_t p = 0; p < cfg.size(); ++p) {
        if (std::binary_search(first.begin(), first.end(), p)) continue;
        std::vector<Simplex> added;
        for (const auto& [f, inc] : facet_map(Triangulation{simplices}).incidences) {
            if (inc.size() != 1) continue;
            IntVec nrm = hyperplane_normal(cfg, f);
            int so = sign_of(dot(nrm, cfg.points[inc[0].second]));
            int sp = sign_of(dot(nrm, cfg.points[p]));
            if (so * sp < 0) {
                Simplex s = f;
                s.push_back(p);
                std::sort(s.begin(), s.end());
                added.push_back(std::move(s));
            }
        }
        simplices.insert(simplices.end(), added.begin(), added.end());
    }
    return Triangulation::canonical(std::move(simplices));
}

RegularityCertificate is_regular(const PointConfiguration& cfg, const Triangulation& t) {
    RegularityCertificate c;
    c.rows = folding_rows(cfg, t);
    if (c.rows.empty()) {
        c.regular = true;
        c.heights.assign(cfg.size(), Rat(0));
        return c;
    }
    RatMat m = RatMat::from_rows(c.rows);
    StrictSystemResult r = solve_strict_system(m);
    c.regular = r.feasible;
    c.heights = r.solution;
    c.dual = r.dual;
    return c;
}

bool check_regularity_certificate(const PointConfiguration& cfg, const Triangulation& t,
                                  const RegularityCertificate& c) {
    std::vector<RatVec> rows = folding_rows(cfg, t);
    if (rows != c.rows) return false;
    if (c.regular) {
        for (const auto& r : rows)
            if (dot(r, c.heights) < 1) return false;
        try {
            if (!rows.empty() && !(lower_hull_triangulation(cfg, c.heights) == t)) return false;
        } catch (const Error&) {
            return false;
        }
        return true;
    }
    if (rows.empty()) return false;
    StrictSystemResult r;
    r.feasible = false;
    r.dual = c.dual;
    return check_strict_certificate(RatMat::from_rows(rows), r);
}

Triangulation lower_hull_triangulation(const PointConfiguration& cfg, const RatVec& heights) {
    const std::size_t m = cfg.ambient_rank, n = cfg.size();
    if (heights.size() != n) throw std::invalid_argument("lower_hull_triangulation: height length");
    std::vector<Simplex> out;
    for_each_subset(n, m, [&](const std::vector<std::size_t>& s) {
        RatMat b = to_rat(columns(cfg, s)).transposed();
        RatVec rhs(m);
        for (std::size_t i = 0; i < m; ++i) rhs[i] = heights[s[i]];
        auto psi = solve_unique(b, rhs);
        if (!psi) return;
        bool lower = true, tie = false;
        for (std::size_t j = 0; j < n && lower; ++j) {
            if (std::binary_search(s.begin(), s.end(), j)) continue;
            Rat v = dot(*psi, to_rat(cfg.points[j]));
            if (v == heights[j]) tie = true;
            if (v > heights[j]) lower = false;
        }
        if (lower && tie) throw Error("triangulation", "NonGenericHeights", "heights are not generic");
        if (lower) out.push_back(s);
    });
    return Triangulation::canonical(std::move(out));
}

std::vector<Triangulation> flip_neighbours(const PointConfiguration& cfg, const Triangulation& t) {
    std::set<std::vector<std::size_t>> supports;
    for (const auto& w : interior_walls(t)) {
        std::vector<std::size_t> idx = w.facet;
        idx.push_back(w.p);
        idx.push_back(w.q);
        std::sort(idx.begin(), idx.end());
        supports.insert(idx);
    }
    std::vector<std::size_t> used = t.used_points();
    for (std::size_t u = 0; u < cfg.size(); ++u) {
        if (std::binary_search(used.begin(), used.end(), u)) continue;
        for (const auto& s : t.simplices)
            if (cone_coordinates(cfg, s, u)) {
                std::vector<std::size_t> idx = s;
                idx.push_back(u);
                std::sort(idx.begin(), idx.end());
                supports.insert(idx);
                break;
            }
    }

    std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> circuits;
    for (const auto& idx : supports) {
        auto mu = circuit_on(cfg, idx);
        if (!mu) continue;
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if ((*mu)[i] > 0) pos.push_back(idx[i]);
            if ((*mu)[i] < 0) neg.push_back(idx[i]);
        }
        circuits.insert({pos, neg});
        circuits.insert({neg, pos});
    }

    std::set<Triangulation> out;
    for (const auto& [plus, minus] : circuits) {
        std::vector<std::size_t> z = plus;
        z.insert(z.end(), minus.begin(), minus.end());
        std::sort(z.begin(), z.end());
        auto remove_one = [&](std::size_t v) {
            std::vector<std::size_t> r;
            for (auto x : z)
                if (x != v) r.push_back(x);
            return r;
        };
        std::optional<std::vector<Simplex>> links;
        bool ok = true;
        for (auto p : plus) {
            std::vector<std::size_t> part = remove_one(p);
            std::vector<Simplex> ls;
            for (const auto& s : t.simplices)
                if (std::includes(s.begin(), s.end(), part.begin(), part.end())) {
                    Simplex rho;
                    std::set_difference(s.begin(), s.end(), part.begin(), part.end(), std::back_inserter(rho));
                    ls.push_back(std::move(rho));
                }
            std::sort(ls.begin(), ls.end());
            if (ls.empty() || (links && *links != ls)) {
                ok = false;
                break;
            }
            links = std::move(ls);
        }
        if (!ok || !links) continue;
        std::set<Simplex> removed;
        for (auto p : plus)
            for (const auto& rho : *links) {
                Simplex s = remove_one(p);
                s.insert(s.end(), rho.begin(), rho.end());
                std::sort(s.begin(), s.end());
                removed.insert(s);
            }
        std::vector<Simplex> next;
        for (const auto& s : t.simplices)
            if (!removed.count(s)) next.push_back(s);
        bool degenerate = false;
        for (auto q : minus)
            for (const auto& rho : *links) {
                Simplex s = remove_one(q);
                s.insert(s.end(), rho.begin(), rho.end());
                std::sort(s.begin(), s.end());
                if (determinant(columns(cfg, s)) == 0) degenerate = true;
                next.push_back(std::move(s));
            }
        if (degenerate) continue;
        out.insert(Triangulation::canonical(std::move(next)));
    }
    return {out.begin(), out.end()};
}

std::vector<RegularTriangulation> enumerate_regular_triangulations(const PointConfiguration& cfg,
                                                                   const EnumerationOptions& opt) {
    const std::size_t bound = column_bound(opt);
    if (cfg.size() > bound)
        throw Error("triangulation", "ScaleGuardExceeded",
                    std::to_string(cfg.size()) + " columns exceed the bound " + std::to_string(bound));
    Triangulation seed = placing_triangulation(cfg);
    std::map<Triangulation, RegularityCertificate> found;
    std::set<Triangulation> seen{seed};
    std::deque<Triangulation> queue{seed};
    found.emplace(seed, is_regular(cfg, seed));
    while (!queue.empty()) {
        Triangulation t = std::move(queue.front());
        queue.pop_front();
        for (auto& nb : flip_neighbours(cfg, t)) {
            if (!seen.insert(nb).second) continue;
            RegularityCertificate c = is_regular(cfg, nb);
            if (opt.regular_only && !c.regular) continue;
            found.emplace(nb, std::move(c));
            queue.push_back(std::move(nb));
        }
    }
    std::vector<RegularTriangulation> out;
    for (auto& [t, c] : found) out.push_back(RegularTriangulation{t, c});
    return out;
}

IntVec gkz_vector(const PointConfiguration& cfg, const Triangulation& t) {
    IntVec v(cfg.size(), Int(0));
    for (const auto& s : t.simplices) {
        Int vol = normalized_volume(cfg, s);
        for (auto i : s) v[i] += vol;
    }
    return v;
}

bool is_maximal(const PointConfiguration& cfg, const Triangulation& t) {
    if (t.used_points().size() != cfg.size()) return false;
    for (const auto& s : t.simplices)
        for (auto o : cfg.origin_columns)
            if (!std::binary_search(s.begin(), s.end(), o)) return false;
    return true;
}

std::optional<std::size_t> SecondaryFan::find(const Triangulation& t) const {
    for (std::size_t i = 0; i < cones.size(); ++i)
        if (cones[i].triangulation == t) return i;
    return std::nullopt;
}

std::optional<std::size_t> SecondaryFan::containing(const std::vector<IntVec>& rays) const {
    for (std::size_t i = 0; i < cones.size(); ++i) {
        bool inside = true;
        for (const auto& k : cones[i].inequalities)
            for (const auto& r : rays)
                if (dot(k, r) < 0) inside = false;
        if (inside) return i;
    }
    return std::nullopt;
}

std::vector<RatVec> SecondaryFan::polytope_vertices() const {
    std::vector<RatVec> out;
    for (const auto& c : cones) out.push_back(c.secondary_vertex);
    return out;
}

SecondaryFan secondary_fan(const GaleDiagram& gale, const std::vector<RegularTriangulation>& ts) {
    SecondaryFan fan;
    fan.gale = gale;
    const PointConfiguration& cfg = gale.config;
    const std::size_t s = gale.rank_L;
    IntVec base;
    for (const auto& rt : ts) {
        if (!rt.certificate.regular) continue;
        SecondaryCone c;
        c.triangulation = rt.triangulation;
        c.heights = rt.certificate.heights;
        c.gkz = gkz_vector(cfg, rt.triangulation);
        if (base.empty()) base = c.gkz;
        IntVec diff(c.gkz.size());
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = c.gkz[i] - base[i];
        auto coords = coordinates_in_basis(gale.kernel_basis, diff);
        if (!coords) throw std::logic_error("GKZ vector difference outside the kernel");
        c.secondary_vertex = *coords;
        std::set<IntVec> ineq;
        for (const auto& row : rt.certificate.rows) {
            std::vector<IntVec> basis = gale.kernel_basis;
            RatVec r = row;
            auto kappa = coordinates_in_basis(basis, primitive(r));
            if (!kappa) throw std::logic_error("folding row outside the kernel");
            ineq.insert(primitive(*kappa));
        }
        c.inequalities.assign(ineq.begin(), ineq.end());
        if (s > 0) {
            c.rays = extreme_rays(c.inequalities, s);
            c.dual_rays = extreme_rays(c.rays, s);
        }
        fan.cones.push_back(std::move(c));
    }
    return fan;
}

SecondaryFan secondary_fan(const GaleDiagram& gale, const EnumerationOptions& opt) {
    return secondary_fan(gale, enumerate_regular_triangulations(gale.config, opt));
}

namespace {

ChartBasis make_chart(const SecondaryFan& fan, std::size_t cone, const std::vector<IntVec>& kappas) {
    const auto& g = fan.gale;
    const std::size_t s = g.rank_L;
    ChartBasis cb;
    cb.triangulation = fan.cones[cone].triangulation;
    RatMat k(s, s);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) k(i, j) = kappas[i][j];
    RatMat dual = inverse(k)->transposed();
    for (std::size_t i = 0; i < s; ++i) {
        IntVec l(g.config.size(), Int(0));
        for (std::size_t j = 0; j < s; ++j)
            for (std::size_t c = 0; c < l.size(); ++c) l[c] += kappas[i][j] * g.kernel_basis[j][c];
        Int o = 0;
        for (auto c : g.config.origin_columns) o += l[c];
        cb.signs.push_back(mpz_odd_p(o.get_mpz_t()) ? -1 : 1);
        cb.basis.push_back(std::move(l));
        cb.dual_basis.push_back(dual.row(i));
    }
    return cb;
}

}  // namespace

ChartBasis chart_basis(const SecondaryFan& fan, std::size_t cone) {
    const std::size_t s = fan.gale.rank_L;
    const auto& gens = fan.cones.at(cone).dual_rays;
    auto describe = [&] {
        std::string d;
        for (const auto& r : gens) d += " " + to_string(r);
        return d;
    };
    if (gens.size() != s) throw Error("triangulation", "NonUnimodularChart", "dual cone is not simplicial:" + describe());
    if (s > 0 && abs(determinant(matrix_from_rows(gens, s))) != 1)
        throw Error("triangulation", "NonUnimodularChart", "dual cone generators are not a lattice basis:" + describe());
    return make_chart(fan, cone, gens);
}

ChartBasis chart_basis_override(const SecondaryFan& fan, std::size_t cone, const std::vector<IntVec>& basis) {
    const auto& g = fan.gale;
    const std::size_t s = g.rank_L;
    if (basis.size() != s) throw Error("triangulation", "InvalidOverride", "override basis has the wrong size");
    std::vector<IntVec> kappas;
    for (const auto& l : basis) {
        auto k = coordinates_in_basis(g.kernel_basis, l);
        if (!k || !is_integral(*k)) throw Error("triangulation", "InvalidOverride", to_string(l) + " is not in L");
        kappas.push_back(to_int(*k));
    }
    if (abs(determinant(matrix_from_rows(kappas, s))) != 1)
        throw Error("triangulation", "InvalidOverride", "override is not a lattice basis of L");
    ChartBasis cb = make_chart(fan, cone, kappas);
    for (const auto& d : cb.dual_basis)
        for (const auto& k : fan.cones[cone].inequalities)
            if (dot(to_rat(k), d) < 0)
                throw Error("triangulation", "InvalidOverride", "override chart is not inside the chamber");
    cb.overridden = true;
    return cb;
}

std::string chart_monomial(const IntVec& l, int sign) {
    std::string num, den;
    for (std::size_t i = 0; i < l.size(); ++i) {
        if (l[i] == 0) continue;
        std::string f = "a" + std::to_string(i);
        Int e = abs(l[i]);
        if (e != 1) f += "^" + to_string(e);
        std::string& dst = l[i] > 0 ? num : den;
        if (!dst.empty()) dst += "*";
        dst += f;
    }
    std::string out = sign < 0 ? "-" : "";
    out += num.empty() ? "1" : num;
    if (!den.empty()) out += "/" + (den.find('*') == std::string::npos ? den : "(" + den + ")");
    return out;
}

}  // namespace toricmirror
