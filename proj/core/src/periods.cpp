#include "toricmirror/periods.hpp"

#include <sstream>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& what) { throw Error("periods", code, what); }

using Elem = NilpotentAlgebra::Elem;
using Coeff = LogSeries::Coeff;

Coeff to_poly(const Elem& e) {
    Coeff c(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) c[i] = Poly(e[i]);
    return c;
}

RatMat mat_pow(const RatMat& m, int k) {
    RatMat r = RatMat::identity(m.rows());
    for (int i = 0; i < k; ++i) r = r * m;
    return r;
}

/** Columns of m reduced to a basis of their span. */
RatMat column_basis(const RatMat& m) {
    if (m.cols() == 0) return m;
    RowEchelon e = rref(m.transposed());
    RatMat out(m.rows(), e.pivots.size());
    for (std::size_t c = 0; c < e.pivots.size(); ++c)
        for (std::size_t i = 0; i < m.rows(); ++i) out(i, c) = e.reduced(c, i);
    return out;
}

RatMat concat(const RatMat& a, const RatMat& b) {
    RatMat r(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) r(i, a.cols() + j) = b(i, j);
    }
    return r;
}

RatMat kernel_matrix(const RatMat& m) {
    auto ns = nullspace(m);
    RatMat r(m.cols(), ns.size());
    for (std::size_t c = 0; c < ns.size(); ++c)
        for (std::size_t i = 0; i < m.cols(); ++i) r(i, c) = ns[c][i];
    return r;
}

std::size_t threefold_rank(const NilpotentAlgebra& ring) {
    const std::size_t s = ring.generators();
    if (ring.top_degree() != 3 || ring.dim() != 2 * s + 2)
        fail("RingMismatch", "expected a threefold ring with basis 1, J, b, vol");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            if (ring.integrate(ring.mul(ring.generator(i), ring.basis(1 + s + j))) != (i == j ? 1 : 0))
                fail("RingMismatch", "degree-two basis is not dual to the generators");
    return s;
}

}  // namespace

Elem todd_class(const NilpotentAlgebra& ring, const Elem& c2) {
    Elem t = ring.one();
    return ring.add(t, ring.scale(c2, Rat(1, 12)));
}

Elem dual_sign(const NilpotentAlgebra& ring, const Elem& a) {
    Elem r = a;
    for (std::size_t b = 0; b < ring.dim(); ++b)
        if (ring.degree(b) % 2 != 0) r[b] = -r[b];
    return r;
}

Rat rr_pairing(const Elem& a, const Elem& b, const NilpotentAlgebra& ring, const Elem& todd) {
    return ring.integrate(ring.mul(ring.mul(dual_sign(ring, a), b), todd));
}

SymplecticBasis SymplecticBasis::build(const NilpotentAlgebra& ring, const Elem& c2, std::optional<RatMat> a,
                                       bool todd) {
    SymplecticBasis sb;
    sb.ring = ring;
    sb.c2 = c2;
    sb.todd = todd;
    const std::size_t s = ring.generators();
    sb.a = a ? *a : RatMat(s, s);
    if (sb.a.rows() != s || sb.a.cols() != s) fail("RingMismatch", "a-parameter matrix has the wrong shape");
    Elem vol = ring.basis(ring.top_class());
    if (ring.top_degree() == 3) {
        threefold_rank(ring);
        std::vector<Elem> b1, b2;
        for (std::size_t j = 0; j < s; ++j) b2.push_back(ring.basis(1 + s + j));
        for (std::size_t i = 0; i < s; ++i) {
            Elem e = ring.generator(i);
            if (todd) e = ring.add(e, ring.scale(vol, -ring.integrate(ring.mul(c2, ring.generator(i))) / 12));
            for (std::size_t k = 0; k < s; ++k) e = ring.add(e, ring.scale(b2[k], -sb.a(k, i)));
            b1.push_back(e);
        }
        sb.elements.push_back(ring.one());
        sb.labels.push_back("b0");
        for (std::size_t i = 0; i < s; ++i) {
            sb.elements.push_back(b1[i]);
            sb.labels.push_back("b1_" + std::to_string(i + 1));
        }
        for (std::size_t j = s; j-- > 0;) {
            sb.elements.push_back(b2[j]);
            sb.labels.push_back("b2_" + std::to_string(j + 1));
        }
        sb.elements.push_back(ring.scale(vol, -1));
        sb.labels.push_back("b3");
    } else if (ring.top_degree() == 1 && ring.dim() == 2) {
        sb.elements = {ring.one(), ring.scale(vol, -1)};
        sb.labels = {"b0", "b1"};
    } else {
        fail("RingMismatch", "symplectic basis needs a threefold or curve ring");
    }
    return sb;
}

RatMat SymplecticBasis::matrix() const { return RatMat::from_columns(elements); }

RatMat SymplecticBasis::gram() const {
    Elem td = todd_class(ring, c2);
    RatMat g(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) g(i, j) = rr_pairing(elements[i], elements[j], ring, td);
    return g;
}

RatMat SymplecticBasis::multiplication(const Elem& x) const {
    RatMat m = matrix();
    auto inv = inverse(m);
    if (!inv) fail("RingMismatch", "basis elements are not independent");
    return *inv * ring.multiplication_matrix(x) * m;
}

RatMat standard_sigma(std::size_t n) {
    if (n % 2 != 0) throw std::invalid_argument("standard_sigma: odd size");
    RatMat s(n, n);
    for (std::size_t a = 0; a < n; ++a) s(a, n - 1 - a) = a < n / 2 ? 1 : -1;
    return s;
}

std::vector<std::vector<Poly>> symbolic_pairing_table(const NilpotentAlgebra& ring, const Elem& c2) {
    const std::size_t s = threefold_rank(ring);
    const std::size_t vol = ring.top_class();
    std::vector<Coeff> el;
    el.push_back(to_poly(ring.one()));
    for (std::size_t i = 0; i < s; ++i) {
        Coeff e = to_poly(ring.generator(i));
        e[vol] -= Poly(ring.integrate(ring.mul(c2, ring.generator(i))) / 12);
        for (std::size_t k = 0; k < s; ++k) e[1 + s + k] -= Poly::var(sym::A(std::min(k, i), std::max(k, i)));
        el.push_back(e);
    }
    for (std::size_t j = s; j-- > 0;) el.push_back(to_poly(ring.basis(1 + s + j)));
    el.push_back(to_poly(ring.scale(ring.basis(vol), -1)));
    Coeff td = to_poly(todd_class(ring, c2));
    std::vector<std::vector<Poly>> table(el.size(), std::vector<Poly>(el.size()));
    for (std::size_t a = 0; a < el.size(); ++a) {
        Coeff star = el[a];
        for (std::size_t b = 0; b < ring.dim(); ++b)
            if (ring.degree(b) % 2 != 0) star[b] = -star[b];
        for (std::size_t b = 0; b < el.size(); ++b) table[a][b] = ring.mul(ring.mul(star, el[b]), td)[vol];
    }
    return table;
}

// ---------------------------------------------------------------- period vectors

PeriodVector period_vector_in_basis(const LogSeries& w, const RatMat& m, std::vector<std::string> labels) {
    if (m.rows() != w.dim()) fail("RingMismatch", "series and basis live over different rings");
    auto inv = inverse(m);
    if (!inv) fail("RingMismatch", "basis matrix is singular");
    PeriodVector pv;
    pv.labels = std::move(labels);
    pv.route = "direct";
    for (std::size_t a = 0; a < m.cols(); ++a) pv.components.emplace_back(w.nvars(), 1, w.truncation(), w.offsets());
    for (const auto& [e, c] : w.terms())
        for (std::size_t a = 0; a < m.cols(); ++a) {
            Poly v;
            for (std::size_t b = 0; b < m.rows(); ++b)
                if ((*inv)(a, b) != 0) v += c[b] * (*inv)(a, b);
            pv.components[a].add(e, 0, v);
        }
    return pv;
}

PeriodVector period_vector(const LogSeries& w, const SymplecticBasis& basis) {
    if (w.dim() != basis.ring.dim()) fail("RingMismatch", "series and basis live over different rings");
    return period_vector_in_basis(w, basis.matrix(), basis.labels);
}

PeriodVector canonical_periods(const GkzSystem& sys, const ChartBasis& chart, const CohomologyRing& ring,
                               const Truncation& trunc, std::optional<RatMat> a_opt) {
    if (ring.dim != 3) fail("RingMismatch", "the closed period formulas are for threefolds");
    const std::size_t s = chart.basis.size();
    RatMat a = a_opt ? *a_opt : RatMat(s, s);
    NilpotentAlgebra free = NilpotentAlgebra::free_truncated(s, 3);
    FrobeniusOptions opt;
    opt.negative_window = 0;
    opt.with_w0 = false;
    CohomologySeries cs = frobenius_cohomology(sys, chart, free, trunc, opt);

    // Taylor component w_{s,k1..kj} = alpha! f_alpha for the monomial u^alpha = u_k1...u_kj.
    auto component = [&](std::vector<std::size_t> ks) {
        Elem m = free.one();
        std::vector<int> alpha(s, 0);
        for (auto k : ks) {
            m = free.mul(m, free.generator(k));
            ++alpha[k];
        }
        std::size_t idx = 0;
        while (m[idx] == 0) ++idx;
        Int fact = 1;
        for (auto x : alpha) fact *= factorial(static_cast<unsigned long>(x));
        return cs.ws.component(idx).scaled(Poly(Rat(fact)));
    };

    LogSeries w0 = component({});
    std::vector<LogSeries> w1;
    for (std::size_t i = 0; i < s; ++i) w1.push_back(component({i}));
    LogSeries zero(s, 1, trunc);

    std::vector<LogSeries> pi2(s, zero);
    for (std::size_t k = 0; k < s; ++k) {
        for (std::size_t l = 0; l < s; ++l)
            for (std::size_t m = 0; m < s; ++m)
                if (ring.k[k][l][m] != 0) pi2[k] = pi2[k] + component({l, m}).scaled(Poly(ring.k[k][l][m] / 2));
        pi2[k] = pi2[k] - w0.scaled(Poly(ring.c2j[k] / 24));
        for (std::size_t i = 0; i < s; ++i)
            if (a(k, i) != 0) pi2[k] = pi2[k] + w1[i].scaled(Poly(a(k, i)));
    }
    LogSeries pi3 = zero;
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t l = 0; l < s; ++l)
            for (std::size_t m = 0; m < s; ++m)
                if (ring.k[k][l][m] != 0) pi3 = pi3 - component({k, l, m}).scaled(Poly(ring.k[k][l][m] / 6));
    for (std::size_t k = 0; k < s; ++k) pi3 = pi3 - w1[k].scaled(Poly(ring.c2j[k] / 24));
    pi3 = pi3 - w0.scaled(Poly::var(sym::Z3) * ring.chi);

    PeriodVector pv;
    pv.route = "canonical";
    pv.components.push_back(w0);
    pv.labels.push_back("Pi0");
    for (std::size_t i = 0; i < s; ++i) {
        pv.components.push_back(w1[i]);
        pv.labels.push_back("Pi1_" + std::to_string(i + 1));
    }
    for (std::size_t j = s; j-- > 0;) {
        pv.components.push_back(pi2[j]);
        pv.labels.push_back("Pi2_" + std::to_string(j + 1));
    }
    pv.components.push_back(pi3);
    pv.labels.push_back("Pi3");
    return pv;
}

// ---------------------------------------------------------------- power series

PowerSeries PowerSeries::from_log_series(const LogSeries& s) {
    PowerSeries p;
    p.nvars = s.nvars();
    p.trunc = s.truncation();
    for (const auto& [e, c] : s.terms()) {
        if (!c[0].is_constant()) fail("NotInvertible", "series has logarithmic or symbolic terms");
        if (c[0].constant_term() != 0) p.terms[e] = c[0].constant_term();
    }
    return p;
}

PowerSeries PowerSeries::variable(std::size_t nvars, const Truncation& t, std::size_t k) {
    PowerSeries p;
    p.nvars = nvars;
    p.trunc = t;
    Exponent e(nvars, 0);
    e[k] = 1;
    if (t.contains(e)) p.terms[e] = 1;
    return p;
}

Rat PowerSeries::coefficient(const Exponent& e) const {
    auto it = terms.find(e);
    return it == terms.end() ? Rat(0) : it->second;
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
    PowerSeries r = *this;
    for (const auto& [e, c] : o.terms) {
        Rat& x = r.terms[e];
        x += c;
        if (x == 0) r.terms.erase(e);
    }
    return r;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const { return *this + o.scaled(-1); }

PowerSeries PowerSeries::scaled(const Rat& c) const {
    PowerSeries r = *this;
    r.terms.clear();
    if (c == 0) return r;
    for (const auto& [e, x] : terms) r.terms[e] = x * c;
    return r;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
    PowerSeries r = *this;
    r.terms.clear();
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            Exponent e(nvars);
            for (std::size_t k = 0; k < nvars; ++k) e[k] = ea[k] + eb[k];
            if (!trunc.contains(e)) continue;
            r.terms[e] += ca * cb;
        }
    for (auto it = r.terms.begin(); it != r.terms.end();) it = it->second == 0 ? r.terms.erase(it) : std::next(it);
    return r;
}

PowerSeries PowerSeries::inverse() const {
    Rat c0 = coefficient(Exponent(nvars, 0));
    if (c0 == 0) fail("NotInvertible", "series has no constant term");
    PowerSeries one = scaled(0);
    one.terms[Exponent(nvars, 0)] = 1;
    PowerSeries u = scaled(1 / c0) - one;
    PowerSeries r = one, pw = one;
    for (int j = 1; j <= trunc.max_total(nvars); ++j) {
        pw = (pw * u).scaled(-1);
        r = r + pw;
    }
    return r.scaled(1 / c0);
}

PowerSeries PowerSeries::exp() const {
    if (coefficient(Exponent(nvars, 0)) != 0) fail("NotInvertible", "exp of a series with a constant term");
    PowerSeries one = scaled(0);
    one.terms[Exponent(nvars, 0)] = 1;
    PowerSeries r = one, pw = one;
    for (int j = 1; j <= trunc.max_total(nvars); ++j) {
        pw = (pw * *this).scaled(Rat(1, j));
        r = r + pw;
    }
    return r;
}

PowerSeries PowerSeries::compose(const std::vector<PowerSeries>& subs) const {
    PowerSeries r = subs.at(0).scaled(0);
    std::vector<std::vector<PowerSeries>> powers(nvars);
    for (std::size_t k = 0; k < nvars; ++k) {
        PowerSeries one = r;
        one.terms[Exponent(subs[k].nvars, 0)] = 1;
        powers[k].push_back(one);
    }
    for (const auto& [e, c] : terms) {
        PowerSeries t = powers[0][0];
        for (std::size_t k = 0; k < nvars; ++k) {
            while (static_cast<int>(powers[k].size()) <= e[k]) powers[k].push_back(powers[k].back() * subs[k]);
            t = t * powers[k][e[k]];
        }
        r = r + t.scaled(c);
    }
    return r;
}

bool PowerSeries::operator==(const PowerSeries& o) const { return terms == o.terms; }

std::string PowerSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms) {
        os << (first ? "" : " + ") << to_string(c);
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k]) os << "*x" << k + 1 << (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
        first = false;
    }
    return first ? "0" : os.str();
}

// ---------------------------------------------------------------- mirror map

MirrorMap mirror_map(const PeriodVector& pv, std::size_t r) {
    if (pv.components.size() < r + 1) fail("NotInvertible", "period vector too short");
    const LogSeries& pi0 = pv.components[0];
    PowerSeries p0 = PowerSeries::from_log_series(pi0);
    if (p0.coefficient(Exponent(pi0.nvars(), 0)) != 1) fail("NotInvertible", "Pi0 does not start with 1");
    PowerSeries inv0 = p0.inverse();
    MirrorMap mm;
    const Poly p = Poly::var(sym::P);
    for (std::size_t k = 0; k < r; ++k) {
        // Pi1_k = eps (L_k Pi0 + P g_k) with eps = +-1, fixed by the basis orientation.
        Rat eps = pv.components[1 + k].coefficient(Exponent(pi0.nvars(), 0)).coefficient_of(sym::L(k), 1).constant_term();
        if (eps != 1 && eps != -1) fail("NotInvertible", "Pi1_" + std::to_string(k + 1) + " does not start with +-L");
        const LogSeries pi1 = pv.components[1 + k].scaled(Poly(eps));
        PowerSeries g = p0.scaled(0);
        for (const auto& [e, c] : pi1.terms()) {
            Poly rest = c[0] - Poly::var(sym::L(k)) * Poly(p0.coefficient(e));
            Rat gk = rest.coefficient_of(sym::P, 1).constant_term();
            if (rest != p * gk) fail("NotInvertible", "Pi1_" + std::to_string(k + 1) + " is not L Pi0 + P g");
            if (gk != 0) g.terms[e] = gk;
        }
        for (const auto& [e, c] : p0.terms)
            if (pi1.coefficient(e).coefficient_of(sym::L(k), 1).constant_term() != c)
                fail("NotInvertible", "Pi1 log coefficient differs from Pi0");
        PowerSeries h = g * inv0;
        LogSeries t(pi0.nvars(), 1, pi0.truncation());
        t.add(Exponent(pi0.nvars(), 0), 0, Poly::var(sym::L(k)));
        for (const auto& [e, c] : h.terms) t.add(e, 0, p * c);
        mm.t.push_back(std::move(t));
        mm.q_of_x.push_back(PowerSeries::variable(h.nvars, h.trunc, k) * h.exp());
        mm.h.push_back(std::move(h));
    }
    return mm;
}

std::vector<PowerSeries> invert_mirror_map(const MirrorMap& mm) {
    const std::size_t r = mm.h.size();
    if (r == 0) return {};
    const std::size_t nv = mm.h[0].nvars;
    const Truncation& t = mm.h[0].trunc;
    std::vector<PowerSeries> q, x;
    for (std::size_t k = 0; k < r; ++k) q.push_back(PowerSeries::variable(nv, t, k));
    x = q;
    for (int it = 0; it <= t.max_total(nv); ++it) {
        std::vector<PowerSeries> next;
        for (std::size_t k = 0; k < r; ++k) next.push_back(q[k] * mm.h[k].compose(x).scaled(-1).exp());
        x = std::move(next);
    }
    return x;
}

bool mirror_round_trip(const MirrorMap& mm, const std::vector<PowerSeries>& x) {
    for (std::size_t k = 0; k < mm.h.size(); ++k)
        if (!(mm.q_of_x[k].compose(x) == PowerSeries::variable(x[k].nvars, x[k].trunc, k))) return false;
    return true;
}

// ---------------------------------------------------------------- monodromy

RatMat lcsl_monodromy(const PeriodVector& pv, std::size_t k) {
    const std::size_t d = pv.components.size();
    std::map<std::pair<Exponent, Poly::Monomial>, std::size_t> coord;
    auto flatten = [&](const LogSeries& f) {
        std::map<std::size_t, Rat> v;
        for (const auto& [e, c] : f.terms())
            for (const auto& [m, x] : c[0].terms()) {
                auto key = std::make_pair(e, m);
                auto it = coord.find(key);
                if (it == coord.end()) it = coord.emplace(key, coord.size()).first;
                v[it->second] = x;
            }
        return v;
    };
    std::vector<std::map<std::size_t, Rat>> base, shifted;
    for (const auto& c : pv.components) base.push_back(flatten(c));
    for (const auto& c : pv.components) shifted.push_back(flatten(c.shift_log(k, 1)));
    RatMat vt(coord.size(), d);
    for (std::size_t b = 0; b < d; ++b)
        for (const auto& [i, x] : base[b]) vt(i, b) = x;
    RatMat t(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        RatVec target(coord.size(), Rat(0));
        for (const auto& [i, x] : shifted[a]) target[i] = x;
        auto row = solve_unique(vt, target);
        if (!row) fail("SolveFailed", "shifted component " + std::to_string(a) + " is not a combination of the periods");
        for (std::size_t b = 0; b < d; ++b) t(a, b) = (*row)[b];
    }
    return t;
}

RatMat unipotent_log(const RatMat& t) {
    const std::size_t n = t.rows();
    RatMat u = t - RatMat::identity(n);
    if (!mat_pow(u, static_cast<int>(n)).is_zero()) fail("NotUnipotent", "T - I is not nilpotent");
    RatMat r(n, n), pw = RatMat::identity(n);
    for (std::size_t j = 1; j <= n; ++j) {
        pw = pw * u;
        r = r + pw.scaled(Rat(j % 2 == 1 ? 1 : -1, static_cast<long>(j)));
    }
    return r;
}

MonodromyData monodromy_data(const PeriodVector& pv, std::size_t r, const RatMat* sigma) {
    MonodromyData md;
    for (std::size_t k = 0; k < r; ++k) {
        md.t.push_back(lcsl_monodromy(pv, k));
        if (sigma && !is_symplectic(md.t.back(), *sigma))
            fail("NotSymplectic", "T_" + std::to_string(k + 1) + " does not preserve Sigma");
        md.n.push_back(unipotent_log(md.t.back()));
    }
    return md;
}

bool is_symplectic(const RatMat& t, const RatMat& sigma) { return t.transposed() * sigma * t == sigma; }

WeightFiltration weight_filtration(const RatMat& n, int center) {
    const std::size_t dim = n.rows();
    if (!mat_pow(n, static_cast<int>(dim)).is_zero()) fail("NotNilpotent", "matrix is not nilpotent");
    WeightFiltration wf;
    wf.center = center;
    const int top = static_cast<int>(dim) + 2;
    std::vector<RatMat> pw{RatMat::identity(dim)};
    for (int j = 1; j <= 2 * top + 2; ++j) pw.push_back(pw.back() * n);
    auto ker_pow = [&](int e) {
        if (e <= 0) return RatMat(dim, 0);
        return kernel_matrix(pw[std::min<std::size_t>(static_cast<std::size_t>(e), pw.size() - 1)]);
    };
    for (int m = -center; m <= center; ++m) {
        RatMat space(dim, 0);
        for (int j = std::max(0, -m); j <= top; ++j) {
            RatMat k = ker_pow(m + 1 + 2 * j);
            if (k.cols() == 0) continue;
            space = concat(space, pw[static_cast<std::size_t>(j)] * k);
        }
        space = column_basis(space);
        wf.dims.push_back(space.cols());
        wf.spaces.push_back(std::move(space));
    }
    bool ok = wf.dims.front() == 1 && wf.dims.back() == dim;
    for (std::size_t i = 0; i + 1 < wf.dims.size(); i += 2) ok = ok && wf.dims[i] == wf.dims[i + 1];
    wf.lcsl = ok;
    return wf;
}

bool same_filtration(const WeightFiltration& a, const WeightFiltration& b) {
    if (a.dims != b.dims) return false;
    for (std::size_t i = 0; i < a.spaces.size(); ++i) {
        if (a.spaces[i].cols() == 0) continue;
        if (rank(concat(a.spaces[i], b.spaces[i])) != a.dims[i]) return false;
    }
    return true;
}

std::vector<MirrorCheck> verify_mirror_isomorphism(const MonodromyData& mono, const SymplecticBasis& basis) {
    RatMat sigma = standard_sigma(basis.size());
    RatMat sinv = *inverse(sigma);
    std::vector<MirrorCheck> out;
    for (std::size_t k = 0; k < mono.n.size(); ++k) {
        RatMat jm = basis.multiplication(basis.ring.generator(k));
        RatMat rhs = sigma * jm.scaled(-1) * sinv;
        RatMat res = mono.n[k].transposed() - rhs;
        RatMat e = RatMat::identity(jm.rows()), pw = e;
        for (std::size_t j = 1; j <= jm.rows(); ++j) {
            pw = (pw * jm).scaled(Rat(1, static_cast<long>(j)));
            e = e + pw;
        }
        bool agrees = k < mono.t.size() && mono.t[k] == e;
        out.push_back({k, res.is_zero(), res, agrees});
    }
    return out;
}

LogSeries central_charge(const Elem& che, const LogSeries& w, const SymplecticBasis& basis) {
    const NilpotentAlgebra& ring = basis.ring;
    if (che.size() != ring.dim() || w.dim() != ring.dim()) fail("RingMismatch", "class and series over different rings");
    Coeff c = to_poly(ring.mul(che, todd_class(ring, basis.c2)));
    LogSeries z(w.nvars(), 1, w.truncation(), w.offsets());
    for (const auto& [e, v] : w.terms()) z.add(e, 0, ring.mul(c, v)[ring.top_class()]);
    return z;
}

}  // namespace toricmirror
