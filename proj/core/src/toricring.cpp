#include "toricmirror/toricring.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <sstream>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& what) { throw Error("toricring", code, what); }

std::string set_str(const std::vector<std::size_t>& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

bool subset_of(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

/** Pairs of cones sharing a codimension-one face, with the ray of b outside a. */
struct Wall {
    std::size_t a, b, ray_b;
};

std::vector<Wall> walls_of(const Fan& fan) {
    std::map<std::vector<std::size_t>, std::vector<std::size_t>> faces;
    for (std::size_t c = 0; c < fan.cones.size(); ++c)
        for (std::size_t drop = 0; drop < fan.cones[c].size(); ++drop) {
            std::vector<std::size_t> f;
            for (std::size_t j = 0; j < fan.cones[c].size(); ++j)
                if (j != drop) f.push_back(fan.cones[c][j]);
            faces[f].push_back(c);
        }
    std::vector<Wall> out;
    for (const auto& [f, cs] : faces) {
        if (cs.size() != 2) continue;
        for (int dir = 0; dir < 2; ++dir) {
            std::size_t a = cs[dir], b = cs[1 - dir];
            for (auto r : fan.cones[b])
                if (!std::binary_search(f.begin(), f.end(), r)) out.push_back({a, b, r});
        }
    }
    return out;
}

}  // namespace

bool Fan::is_cone(const std::vector<std::size_t>& s) const {
    for (const auto& c : cones)
        if (subset_of(s, c)) return true;
    return false;
}

bool Fan::all_smooth() const {
    return std::all_of(smooth.begin(), smooth.end(), [](bool b) { return b; });
}

Fan fan_from_triangulation(const PointConfiguration& cfg, const Triangulation& t) {
    if (!is_maximal(cfg, t)) fail("NotMaximal", "triangulation " + t.id() + " is not maximal");
    const std::size_t r = cfg.origin_columns.size();
    Fan fan;
    fan.dim = cfg.ambient_rank - r;
    std::map<std::size_t, std::size_t> ray_of;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        if (std::find(cfg.origin_columns.begin(), cfg.origin_columns.end(), i) != cfg.origin_columns.end()) continue;
        ray_of[i] = fan.rays.size();
        fan.rays.emplace_back(cfg.points[i].begin() + static_cast<long>(r), cfg.points[i].end());
        fan.ray_columns.push_back(i);
    }
    for (const auto& s : t.simplices) {
        std::vector<std::size_t> cone;
        for (auto i : s)
            if (ray_of.count(i)) cone.push_back(ray_of[i]);
        std::sort(cone.begin(), cone.end());
        if (cone.size() != fan.dim) fail("NotMaximal", "simplex without every origin column");
        IntMat m(fan.dim, fan.dim);
        for (std::size_t a = 0; a < fan.dim; ++a)
            for (std::size_t b = 0; b < fan.dim; ++b) m(a, b) = fan.rays[cone[a]][b];
        Int d = abs(determinant(m));
        if (d == 0) fail("NotComplete", "degenerate cone " + set_str(cone));
        fan.cones.push_back(cone);
        fan.multiplicity.push_back(d);
        fan.smooth.push_back(d == 1);
    }
    std::map<std::vector<std::size_t>, int> faces;
    for (const auto& c : fan.cones)
        for (std::size_t drop = 0; drop < c.size(); ++drop) {
            std::vector<std::size_t> f;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (j != drop) f.push_back(c[j]);
            ++faces[f];
        }
    for (const auto& [f, cnt] : faces)
        if (cnt != 2) fail("NotComplete", "face " + set_str(f) + " lies on " + std::to_string(cnt) + " cones");
    return fan;
}

std::vector<std::vector<std::size_t>> stanley_reisner(const Fan& fan) {
    std::set<std::vector<std::size_t>> faces;
    for (const auto& c : fan.cones) {
        const std::size_t m = c.size();
        for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
            std::vector<std::size_t> f;
            for (std::size_t j = 0; j < m; ++j)
                if (mask & (std::size_t(1) << j)) f.push_back(c[j]);
            faces.insert(f);
        }
    }
    std::set<std::vector<std::size_t>> out;
    for (const auto& f : faces)
        for (std::size_t r = 0; r < fan.rays.size(); ++r) {
            if (std::binary_search(f.begin(), f.end(), r)) continue;
            std::vector<std::size_t> g = f;
            g.insert(std::upper_bound(g.begin(), g.end(), r), r);
            if (faces.count(g)) continue;
            bool minimal = true;
            for (std::size_t drop = 0; drop < g.size() && minimal; ++drop) {
                std::vector<std::size_t> h;
                for (std::size_t j = 0; j < g.size(); ++j)
                    if (j != drop) h.push_back(g[j]);
                minimal = faces.count(h) > 0;
            }
            if (minimal) out.insert(g);
        }
    std::vector<std::vector<std::size_t>> v(out.begin(), out.end());
    std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return v;
}

// ---------------------------------------------------------------- divisor polynomials

DivisorPoly DivisorPoly::constant(const Rat& c, std::size_t p) {
    DivisorPoly d;
    if (c != 0) d.terms[std::vector<int>(p, 0)] = c;
    return d;
}

DivisorPoly DivisorPoly::linear(const RatVec& coeffs) {
    DivisorPoly d;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0) continue;
        std::vector<int> e(coeffs.size(), 0);
        e[i] = 1;
        d.terms[e] = coeffs[i];
    }
    return d;
}

DivisorPoly DivisorPoly::operator+(const DivisorPoly& o) const {
    DivisorPoly r = *this;
    for (const auto& [e, c] : o.terms) {
        Rat& x = r.terms[e];
        x += c;
        if (x == 0) r.terms.erase(e);
    }
    return r;
}

DivisorPoly DivisorPoly::operator*(const DivisorPoly& o) const {
    DivisorPoly r;
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            std::vector<int> e = ea;
            for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
            r.terms[e] += ca * cb;
        }
    for (auto it = r.terms.begin(); it != r.terms.end();) it = it->second == 0 ? r.terms.erase(it) : std::next(it);
    return r;
}

DivisorPoly DivisorPoly::scaled(const Rat& c) const {
    DivisorPoly r;
    if (c == 0) return r;
    for (const auto& [e, x] : terms) r.terms[e] = x * c;
    return r;
}

static int total_degree(const std::vector<int>& e) {
    int s = 0;
    for (auto x : e) s += x;
    return s;
}

DivisorPoly DivisorPoly::degree_part(int k) const {
    DivisorPoly r;
    for (const auto& [e, c] : terms)
        if (total_degree(e) == k) r.terms[e] = c;
    return r;
}

DivisorPoly DivisorPoly::truncated(int k) const {
    DivisorPoly r;
    for (const auto& [e, c] : terms)
        if (total_degree(e) <= k) r.terms[e] = c;
    return r;
}

IntersectionFunctional::IntersectionFunctional(const Fan& fan) : fan_(&fan) {}

Rat IntersectionFunctional::operator()(const std::vector<int>& e) const {
    const Fan& fan = *fan_;
    if (total_degree(e) != static_cast<int>(fan.dim)) return 0;
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] > 0) support.push_back(i);
    std::optional<std::size_t> cone;
    for (std::size_t c = 0; c < fan.cones.size(); ++c)
        if (subset_of(support, fan.cones[c])) {
            cone = c;
            break;
        }
    Rat result = 0;
    if (cone) {
        const auto& sigma = fan.cones[*cone];
        if (support.size() == fan.dim) {
            result = Rat(1) / Rat(fan.multiplicity[*cone]);
        } else {
            std::size_t rep = 0;
            while (e[rep] < 2) ++rep;
            RatMat rows(fan.dim, fan.dim);
            std::size_t pos = 0;
            for (std::size_t a = 0; a < fan.dim; ++a) {
                if (sigma[a] == rep) pos = a;
                for (std::size_t b = 0; b < fan.dim; ++b) rows(a, b) = fan.rays[sigma[a]][b];
            }
            RatVec target(fan.dim, Rat(0));
            target[pos] = 1;
            RatVec m = *solve_unique(rows, target);
            for (std::size_t j = 0; j < fan.rays.size(); ++j) {
                if (std::binary_search(sigma.begin(), sigma.end(), j)) continue;
                Rat w = dot(m, to_rat(fan.rays[j]));
                if (w == 0) continue;
                std::vector<int> f = e;
                --f[rep];
                ++f[j];
                result -= w * (*this)(f);
            }
        }
    }
    memo_[e] = result;
    return result;
}

Rat IntersectionFunctional::integrate(const DivisorPoly& f) const {
    Rat s = 0;
    for (const auto& [e, c] : f.terms) s += c * (*this)(e);
    return s;
}

// ---------------------------------------------------------------- the Calabi-Yau ring

CohomologyRing hypersurface_ring(const PointConfiguration& cfg, const ChartBasis& chart, const HodgeInput& hodge) {
    CohomologyRing ring;
    ring.fan = fan_from_triangulation(cfg, chart.triangulation);
    const Fan& fan = ring.fan;
    const std::size_t p = fan.rays.size();
    const std::size_t s = chart.basis.size();
    const std::size_t r = cfg.origin_columns.size();
    if (Int(s) != hodge.h11)
        fail("TwistedSectorMismatch", "toric divisors give rank " + std::to_string(s) + " but h11 = " +
                                          to_string(hodge.h11));
    ring.sr_ideal = stanley_reisner(fan);
    ring.dim = static_cast<int>(fan.dim) - static_cast<int>(r);
    if (ring.dim < 1 || ring.dim > 3) fail("UnsupportedDimension", "complete intersection of dimension " + std::to_string(ring.dim));

    RatMat lm(s, p);
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < p; ++i) lm(k, i) = chart.basis[k][fan.ray_columns[i]];
    for (std::size_t k = 0; k < s; ++k) {
        RatVec ek(s, Rat(0));
        ek[k] = 1;
        auto q = solve(lm, ek);
        if (!q) fail("PairingMismatch", "chart basis does not pair with the ray divisors");
        ring.j_divisors.push_back(*q);
    }
    for (std::size_t b = 0; b < r; ++b) {
        RatVec z(p, Rat(0));
        for (std::size_t i = 0; i < p; ++i)
            if (cfg.points[fan.ray_columns[i]][b] == 1) z[i] = 1;
        ring.z_divisors.push_back(z);
    }

    IntersectionFunctional amb(fan);
    DivisorPoly zprod = DivisorPoly::constant(1, p);
    for (const auto& z : ring.z_divisors) zprod = zprod * DivisorPoly::linear(z);
    auto on_x = [&](const DivisorPoly& f) { return amb.integrate(f * zprod); };

    // c(X) = prod (1 + D_i) / prod (1 + Z_b), truncated at the dimension of X.
    const int d = ring.dim;
    DivisorPoly chern = DivisorPoly::constant(1, p);
    for (std::size_t i = 0; i < p; ++i) {
        RatVec e(p, Rat(0));
        e[i] = 1;
        chern = (chern * (DivisorPoly::constant(1, p) + DivisorPoly::linear(e))).truncated(d);
    }
    for (const auto& z : ring.z_divisors) {
        DivisorPoly inv = DivisorPoly::constant(1, p), pw = DivisorPoly::constant(1, p);
        for (int j = 1; j <= d; ++j) {
            pw = (pw * DivisorPoly::linear(z)).scaled(-1);
            inv = inv + pw;
        }
        chern = (chern * inv).truncated(d);
    }
    ring.chi = on_x(chern.degree_part(d));
    DivisorPoly etop = DivisorPoly::constant(1, p);
    for (std::size_t i = 0; i < p; ++i) {
        RatVec e(p, Rat(0));
        e[i] = 1;
        etop = (etop * (DivisorPoly::constant(1, p) + DivisorPoly::linear(e))).truncated(static_cast<int>(fan.dim));
    }
    ring.ambient_euler = amb.integrate(etop.degree_part(static_cast<int>(fan.dim)));

    std::vector<DivisorPoly> j;
    for (const auto& q : ring.j_divisors) j.push_back(DivisorPoly::linear(q));
    if (d == 3) {
        ring.k.assign(s, std::vector<std::vector<Rat>>(s, std::vector<Rat>(s)));
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = a; b < s; ++b)
                for (std::size_t c = b; c < s; ++c) {
                    Rat v = on_x(j[a] * j[b] * j[c]);
                    for (auto [x, y, z] : {std::array{a, b, c}, std::array{a, c, b}, std::array{b, a, c},
                                           std::array{b, c, a}, std::array{c, a, b}, std::array{c, b, a}})
                        ring.k[x][y][z] = v;
                }
        DivisorPoly c2 = chern.degree_part(2);
        for (std::size_t a = 0; a < s; ++a) ring.c2j.push_back(on_x(c2 * j[a]));
        ring.algebra = NilpotentAlgebra::threefold(ring.k);
        ring.c2 = ring.algebra.zero();
        for (std::size_t a = 0; a < s; ++a) ring.c2[1 + s + a] = ring.c2j[a];
        if (ring.chi != Rat(2 * (hodge.h11 - hodge.h21)))
            fail("EulerMismatch", "int c3 = " + to_string(ring.chi) + " but 2(h11 - h21) = " +
                                      to_string(Int(2 * (hodge.h11 - hodge.h21))));
    } else if (d == 2) {
        ring.eta.assign(s, std::vector<Rat>(s));
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b) ring.eta[a][b] = on_x(j[a] * j[b]);
        ring.algebra = NilpotentAlgebra::surface(ring.eta);
        ring.c2 = ring.algebra.scale(ring.algebra.basis(s + 1), ring.chi);
    } else {
        for (std::size_t a = 0; a < s; ++a) ring.degrees.push_back(on_x(j[a]));
        ring.algebra = NilpotentAlgebra::curve(ring.degrees);
        ring.c2 = ring.algebra.zero();
        if (ring.chi != 0) fail("EulerMismatch", "a Calabi-Yau curve must have Euler number 0");
    }
    ring.c3 = ring.algebra.zero();
    if (d == 3) ring.c3[ring.algebra.top_class()] = ring.chi;
    ring.algebra.check_axioms();
    return ring;
}

// ---------------------------------------------------------------- Kahler cone

std::vector<WallCheck> convexity_walls(const Fan& fan, const RatVec& divisor) {
    std::vector<RatVec> m(fan.cones.size());
    for (std::size_t c = 0; c < fan.cones.size(); ++c) {
        RatMat rows(fan.dim, fan.dim);
        RatVec rhs(fan.dim);
        for (std::size_t a = 0; a < fan.dim; ++a) {
            for (std::size_t b = 0; b < fan.dim; ++b) rows(a, b) = fan.rays[fan.cones[c][a]][b];
            rhs[a] = -divisor[fan.cones[c][a]];
        }
        m[c] = *solve_unique(rows, rhs);
    }
    std::vector<WallCheck> out;
    for (const auto& w : walls_of(fan))
        out.push_back({w.a, w.b, dot(m[w.a], to_rat(fan.rays[w.ray_b])) + divisor[w.ray_b]});
    return out;
}

void require_strictly_convex(const Fan& fan, const RatVec& divisor) {
    for (const auto& w : convexity_walls(fan, divisor))
        if (w.value <= 0)
            fail("NotConvex", "wall between cones " + set_str(fan.cones[w.cone_a]) + " and " +
                                  set_str(fan.cones[w.cone_b]) + " has value " + to_string(w.value));
}

KahlerCertificate kahler_cone_certificate(const CohomologyRing& ring) {
    KahlerCertificate cert;
    RatVec sum(ring.fan.rays.size(), Rat(0));
    for (const auto& q : ring.j_divisors) {
        auto walls = convexity_walls(ring.fan, q);
        bool nef = std::all_of(walls.begin(), walls.end(), [](const WallCheck& w) { return w.value >= 0; });
        cert.generator_nef.push_back(nef);
        cert.generator_walls.push_back(std::move(walls));
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += q[i];
    }
    cert.sum_walls = convexity_walls(ring.fan, sum);
    cert.sum_ample =
        std::all_of(cert.sum_walls.begin(), cert.sum_walls.end(), [](const WallCheck& w) { return w.value > 0; });
    return cert;
}

}  // namespace toricmirror
