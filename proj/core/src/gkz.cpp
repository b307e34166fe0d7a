#include "toricmirror/gkz.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

namespace {

[[noreturn]] void fail(const std::string& code, const std::string& what) { throw Error("gkz", code, what); }

std::string join_exponent(const Exponent& e) {
    std::ostringstream os;
    os << "(";
    for (std::size_t k = 0; k < e.size(); ++k) os << (k ? "," : "") << e[k];
    os << ")";
    return os.str();
}

bool is_origin(const PointConfiguration& cfg, std::size_t i) {
    return std::find(cfg.origin_columns.begin(), cfg.origin_columns.end(), i) != cfg.origin_columns.end();
}

/** Row i of the chart basis: (l_i^(1), ..., l_i^(s)). */
RatVec column_row(const ChartBasis& chart, std::size_t i) {
    RatVec r(chart.basis.size());
    for (std::size_t k = 0; k < chart.basis.size(); ++k) r[k] = chart.basis[k][i];
    return r;
}

Int n_dot_l(const ChartBasis& chart, const Exponent& n, std::size_t i) {
    Int s = 0;
    for (std::size_t k = 0; k < n.size(); ++k) s += Int(n[k]) * chart.basis[k][i];
    return s;
}

struct LinearFactor {
    Rat kappa;
    RatVec form;
};

/**
 * c(n + rho)/c(rho) as constant * prod(zeros) / prod(poles) * prod(num) / prod(den),
 * where zeros and poles are linear forms without constant term.
 */
struct Factorization {
    Rat constant = 1;
    std::vector<RatVec> zeros;
    std::vector<RatVec> poles;
    std::vector<LinearFactor> num;
    std::vector<LinearFactor> den;
};

Factorization factorize(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift, const Exponent& n) {
    Factorization f;
    const auto& cfg = sys.config;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        RatVec lam = column_row(chart, i);
        bool origin = is_origin(cfg, i);
        Rat kappa0 = origin ? Rat(-shift[i]) : Rat(1 + shift[i]);
        Rat sigma = origin ? Rat(-1) : Rat(1);
        long u = n_dot_l(chart, n, i).get_si();
        if (origin) u = -u;
        RatVec form = lam;
        for (auto& x : form) x *= sigma;
        std::vector<LinearFactor> up, down;
        if (u >= 0) {
            for (long j = 0; j < u; ++j) up.push_back({kappa0 + j, form});
        } else {
            for (long j = 1; j <= -u; ++j) down.push_back({kappa0 - j, form});
        }
        if (!origin) std::swap(up, down);
        for (auto& x : up) {
            if (x.kappa == 0) f.zeros.push_back(x.form);
            else f.num.push_back(x);
        }
        for (auto& x : down) {
            if (x.kappa == 0) f.poles.push_back(x.form);
            else f.den.push_back(x);
        }
    }
    return f;
}

bool is_zero_vec(const RatVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

/** alpha with z = alpha p, when it exists. */
std::optional<Rat> proportional(const RatVec& z, const RatVec& p) {
    std::optional<Rat> alpha;
    for (std::size_t k = 0; k < z.size(); ++k) {
        if (p[k] == 0) {
            if (z[k] != 0) return std::nullopt;
            continue;
        }
        Rat a = z[k] / p[k];
        if (alpha && *alpha != a) return std::nullopt;
        alpha = a;
    }
    return alpha;
}

using Coeff = LogSeries::Coeff;

Coeff to_poly(const NilpotentAlgebra::Elem& e) {
    Coeff c(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) c[i] = Poly(e[i]);
    return c;
}

Coeff poly_one(const NilpotentAlgebra& ring) { return to_poly(ring.one()); }

Coeff poly_add(const Coeff& a, const Coeff& b) {
    Coeff r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Coeff poly_scale(const Coeff& a, const Poly& s) {
    Coeff r = a;
    for (auto& x : r) x = x * s;
    return r;
}

Coeff poly_exp(const NilpotentAlgebra& ring, const Coeff& a) {
    if (!a[0].is_zero()) throw std::logic_error("poly_exp: argument has a degree-0 part");
    Coeff r = poly_one(ring), term = poly_one(ring);
    for (int k = 1; k <= ring.top_degree(); ++k) {
        term = poly_scale(ring.mul(term, a), Poly(Rat(1, k)));
        r = poly_add(r, term);
    }
    return r;
}

Poly trans_to_poly(const TransValue& t, int k) {
    Poly pk = Poly::var(sym::P, k);
    Poly r = pk * t.rational + Poly::var(sym::GAMMA) * pk * t.gamma + Poly::var(sym::LN2) * pk * t.ln2;
    if (t.zeta2 != 0) {
        if (k != 2) throw std::logic_error("zeta(2) outside the quadratic coefficient");
        r += Poly(t.zeta2 * Rat(-1, 24));  // zeta(2) P^2 = -1/24
    }
    if (t.zeta3 != 0) {
        if (k != 3) throw std::logic_error("zeta(3) outside the cubic coefficient");
        r += Poly::var(sym::Z3) * t.zeta3;
    }
    return r;
}

}  // namespace

// ---------------------------------------------------------------- systems and operators

GkzSystem GkzSystem::standard(const PointConfiguration& cfg) {
    if (cfg.kind == ConfigKind::Generic)
        fail("BadExponent", "a generic configuration needs an explicit exponent");
    RatVec beta(cfg.ambient_rank, Rat(0));
    for (std::size_t j = 0; j < cfg.r; ++j) beta[j] = -1;
    return with_beta(cfg, beta);
}

GkzSystem GkzSystem::with_beta(const PointConfiguration& cfg, RatVec beta) {
    if (beta.size() != cfg.ambient_rank)
        fail("BadExponent", "exponent length " + std::to_string(beta.size()) + " != ambient rank " +
                                std::to_string(cfg.ambient_rank));
    GkzSystem s;
    s.config = cfg;
    s.beta = std::move(beta);
    s.gale = kernel_lattice(cfg);
    return s;
}

std::string BoxOperator::str(const std::vector<std::string>& labels) const {
    auto side = [&](int sgn) {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < ell.size(); ++i) {
            Int e = ell[i] * sgn;
            if (e <= 0) continue;
            os << (first ? "" : "*") << "d" << (i < labels.size() ? labels[i] : std::to_string(i));
            if (e > 1) os << "^" << to_string(e);
            first = false;
        }
        return first ? std::string("1") : os.str();
    };
    return side(1) + " - " + side(-1);
}

std::string EulerOperator::str(const std::vector<std::string>& labels) const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] == 0) continue;
        Rat a = row[i];
        os << (first ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + "));
        if (a < 0) a = -a;
        if (a != 1) os << to_string(a) << "*";
        std::string l = i < labels.size() ? labels[i] : std::to_string(i);
        os << l << "*d" << l;
        first = false;
    }
    Rat b = -beta;
    if (b != 0) os << (b < 0 ? " - " : " + ") << to_string(b < 0 ? Rat(-b) : b);
    return os.str();
}

GkzOperators gkz_operators(const GkzSystem& sys) {
    GkzOperators ops;
    for (const auto& l : sys.gale.kernel_basis) ops.boxes.push_back({l});
    IntMat a = sys.config.matrix();
    for (std::size_t j = 0; j < a.rows(); ++j) ops.euler.push_back({to_rat(a.row(j)), sys.beta[j]});
    return ops;
}

RatVec exponent_shift(const GkzSystem& sys) {
    const auto& cfg = sys.config;
    RatMat a = to_rat(cfg.matrix());
    RatVec c(cfg.size(), Rat(0));
    for (auto o : cfg.origin_columns) c[o] = -1;
    if (a.apply(c) == sys.beta) return c;

    if (!cfg.origin_columns.empty()) {
        RatMat ao(a.rows(), cfg.origin_columns.size());
        for (std::size_t j = 0; j < a.rows(); ++j)
            for (std::size_t k = 0; k < cfg.origin_columns.size(); ++k) ao(j, k) = a(j, cfg.origin_columns[k]);
        if (auto x = solve(ao, sys.beta)) {
            RatVec r(cfg.size(), Rat(0));
            for (std::size_t k = 0; k < cfg.origin_columns.size(); ++k) r[cfg.origin_columns[k]] = (*x)[k];
            return r;
        }
    }
    auto x = solve(a, sys.beta);
    if (!x) fail("NoSolution", "exponent is not in the column span of A");
    return *x;
}

ThetaOperator pushforward_box(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift, const IntVec& m) {
    const std::size_t s = chart.basis.size();
    const std::size_t np = sys.config.size();
    if (m.size() != s) throw std::invalid_argument("pushforward_box: coefficient length mismatch");
    IntVec ell(np, Int(0));
    for (std::size_t k = 0; k < s; ++k)
        for (std::size_t i = 0; i < np; ++i) ell[i] += m[k] * chart.basis[k][i];

    ThetaOperator op;
    op.nvars = s;
    OperatorTerm plus, minus;
    plus.shift.assign(s, 0);
    minus.shift.assign(s, 0);
    int sign = 1;
    for (std::size_t k = 0; k < s; ++k) {
        int mk = static_cast<int>(m[k].get_si());
        if (mk < 0) plus.shift[k] = -mk;
        else minus.shift[k] = mk;
        if (chart.signs[k] < 0 && (mk % 2 != 0)) sign = -sign;
    }
    minus.scalar = -sign;
    for (std::size_t i = 0; i < np; ++i) {
        long e = ell[i].get_si();
        RatVec row = column_row(chart, i);
        OperatorTerm& t = e > 0 ? plus : minus;
        for (long j = 0; j < std::labs(e); ++j) t.factors.push_back({shift[i] - j, row});
    }
    op.terms = {plus, minus};
    std::ostringstream name;
    name << "box" << to_string(m);
    op.name = name.str();
    return op;
}

std::vector<ThetaOperator> chart_operators(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift) {
    const std::size_t s = chart.basis.size();
    std::vector<ThetaOperator> out;
    IntVec m(s, Int(-1));
    for (;;) {
        bool nonzero = false;
        for (const auto& x : m) nonzero = nonzero || x != 0;
        // Keep one of each +-m pair: the first nonzero entry positive.
        bool canonical = false;
        for (const auto& x : m)
            if (x != 0) {
                canonical = x > 0;
                break;
            }
        if (nonzero && canonical) out.push_back(pushforward_box(sys, chart, shift, m));
        std::size_t k = 0;
        while (k < s && m[k] == 1) m[k++] = -1;
        if (k == s) break;
        m[k] += 1;
    }
    return out;
}

std::vector<ThetaOperator> pushforward_euler(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift) {
    const std::size_t s = chart.basis.size();
    RatMat a = to_rat(sys.config.matrix());
    RatVec ac = a.apply(shift);
    std::vector<ThetaOperator> out;
    for (std::size_t j = 0; j < a.rows(); ++j) {
        ThetaForm f{ac[j] - sys.beta[j], RatVec(s, Rat(0))};
        for (std::size_t k = 0; k < s; ++k)
            for (std::size_t i = 0; i < sys.config.size(); ++i) f.coeffs[k] += a(j, i) * chart.basis[k][i];
        ThetaOperator op;
        op.nvars = s;
        op.name = "euler" + std::to_string(j);
        op.terms.push_back({Exponent(s, 0), Rat(1), {f}});
        out.push_back(std::move(op));
    }
    return out;
}

// ---------------------------------------------------------------- scalar series

Rat w0_coefficient(const GkzSystem& sys, const ChartBasis& chart, const RatVec& shift, const Exponent& n) {
    Factorization f = factorize(sys, chart, shift, n);
    if (!f.poles.empty())
        fail("NonMaximalChart", "pole in the coefficient of x^" + join_exponent(n) + " at the chart " +
                                    chart.triangulation.id());
    if (!f.zeros.empty()) return 0;
    Rat r = f.constant;
    for (const auto& x : f.num) r *= x.kappa;
    for (const auto& x : f.den) r /= x.kappa;
    return r;
}

LogSeries frobenius_w0(const GkzSystem& sys, const ChartBasis& chart, const Truncation& trunc) {
    RatVec shift = exponent_shift(sys);
    const std::size_t s = chart.basis.size();
    LogSeries w(s, 1, trunc);
    for (const auto& n : trunc.points(s)) w.add(n, 0, Poly(w0_coefficient(sys, chart, shift, n)));
    if (w.coefficient(Exponent(s, 0)) != Poly(1)) throw std::logic_error("frobenius_w0: constant term is not 1");
    return w;
}

// ---------------------------------------------------------------- Gamma expansions

std::vector<TransValue> gamma_log_expansion(const Rat& a, int depth) {
    if (depth > 3) fail("DepthExceeded", "Gamma expansion depth " + std::to_string(depth) + " > 3");
    std::vector<TransValue> out(static_cast<std::size_t>(std::max(depth, 0)) + 1);
    if (depth <= 0) return out;
    Rat twice = a * 2;
    if (a <= 0 || twice.get_den() != 1)
        fail("UnsupportedShift", "log Gamma expansion only at positive integers and half-integers, got " + to_string(a));
    // psi^(m)(a) = base value + finite sum over the shifts from the base point.
    bool half = a.get_den() != 1;
    TransValue psi0, psi1, psi2;
    if (half) {
        psi0.gamma = -1;
        psi0.ln2 = -2;
        psi1.zeta2 = 3;
        psi2.zeta3 = -14;
    } else {
        psi0.gamma = -1;
        psi1.zeta2 = 1;
        psi2.zeta3 = -2;
    }
    Rat base = half ? Rat(1, 2) : Rat(1);
    for (Rat x = base; x < a; x += 1) {
        psi0.rational += 1 / x;
        psi1.rational -= 1 / (x * x);
        psi2.rational += 2 / (x * x * x);
    }
    const TransValue psis[3] = {psi0, psi1, psi2};
    for (int k = 1; k <= depth; ++k) {
        Rat f = Rat(1) / Rat(factorial(static_cast<unsigned long>(k)));
        const TransValue& p = psis[k - 1];
        out[k] = {p.rational * f, p.gamma * f, p.zeta2 * f, p.zeta3 * f, p.ln2 * f};
    }
    return out;
}

// ---------------------------------------------------------------- cohomology-valued series

std::optional<NilpotentAlgebra::Elem> ratio_element(const GkzSystem& sys, const ChartBasis& chart,
                                                    const RatVec& shift, const NilpotentAlgebra& ring,
                                                    const Exponent& n) {
    Factorization f = factorize(sys, chart, shift, n);
    for (const auto& z : f.zeros)
        if (is_zero_vec(z)) return ring.zero();
    std::vector<bool> used(f.zeros.size(), false);
    for (const auto& p : f.poles) {
        if (is_zero_vec(p)) return std::nullopt;
        bool matched = false;
        for (std::size_t z = 0; z < f.zeros.size() && !matched; ++z) {
            if (used[z]) continue;
            if (auto alpha = proportional(f.zeros[z], p)) {
                used[z] = true;
                f.constant *= *alpha;
                matched = true;
            }
        }
        if (!matched) return std::nullopt;
    }
    std::vector<RatVec> zeros;
    for (std::size_t z = 0; z < f.zeros.size(); ++z)
        if (!used[z]) zeros.push_back(f.zeros[z]);
    if (static_cast<int>(zeros.size()) > ring.top_degree()) return ring.zero();

    NilpotentAlgebra::Elem r = ring.scale(ring.one(), f.constant);
    for (const auto& z : zeros) {
        r = ring.mul(r, ring.linear_form(z));
        if (ring.is_zero(r)) return r;
    }
    for (const auto& x : f.num) {
        NilpotentAlgebra::Elem g = ring.linear_form(x.form);
        g[0] += x.kappa;
        r = ring.mul(r, g);
    }
    for (const auto& x : f.den) {
        NilpotentAlgebra::Elem g = ring.linear_form(x.form);
        g[0] += x.kappa;
        r = ring.mul(r, ring.inverse(g));
    }
    return r;
}

LogSeries::Coeff graded_by_p(const NilpotentAlgebra& ring, const NilpotentAlgebra::Elem& e) {
    Coeff c(ring.dim());
    for (std::size_t b = 0; b < ring.dim(); ++b)
        if (e[b] != 0) c[b] = Poly::var(sym::P, ring.degree(b)) * e[b];
    return c;
}

CohomologySeries frobenius_cohomology(const GkzSystem& sys, const ChartBasis& chart, const NilpotentAlgebra& ring,
                                      const Truncation& trunc, const FrobeniusOptions& opt) {
    const std::size_t s = chart.basis.size();
    if (ring.generators() != s)
        fail("PairingMismatch", "ring has " + std::to_string(ring.generators()) + " generators, chart has " +
                                    std::to_string(s) + " basis vectors");
    RatVec shift = exponent_shift(sys);

    Coeff jl(ring.dim());
    for (std::size_t k = 0; k < s; ++k) jl = poly_add(jl, poly_scale(to_poly(ring.generator(k)), Poly::var(sym::L(k))));
    Coeff e = poly_exp(ring, jl);

    CohomologySeries out;
    out.ws = LogSeries(s, ring.dim(), trunc);
    out.ws_tilde = LogSeries(s, ring.dim(), trunc);
    for (const auto& n : trunc.points(s)) {
        auto r = ratio_element(sys, chart, shift, ring, n);
        if (!r) fail("NonMaximalChart", "pole term at x^" + join_exponent(n));
        if (ring.is_zero(*r)) continue;
        Coeff g = graded_by_p(ring, *r);
        out.ws_tilde.add(n, g);
        out.ws.add(n, ring.mul(g, e));
    }
    if (out.ws.coefficient(Exponent(s, 0), 0) != Poly(1)) throw std::logic_error("w_s constant term is not 1");

    // Support stability: every exponent with a negative entry near the orthant must vanish.
    std::vector<int> lo(s, -opt.negative_window), hi(s);
    for (std::size_t k = 0; k < s; ++k) hi[k] = trunc.max_in(k);
    Exponent n = lo;
    for (;;) {
        bool negative = false;
        Exponent pos(s);
        for (std::size_t k = 0; k < s; ++k) {
            negative = negative || n[k] < 0;
            pos[k] = std::max(n[k], 0);
        }
        if (negative && trunc.contains(pos)) {
            auto r = ratio_element(sys, chart, shift, ring, n);
            if (!r) {
                ++out.support_singular;
            } else if (!ring.is_zero(*r)) {
                fail("SupportUnstable", "nonzero coefficient at x^" + join_exponent(n) + ": " + ring.str(*r));
            } else {
                ++out.support_checked;
            }
        }
        std::size_t k = 0;
        while (k < s && n[k] == hi[k]) n[k] = lo[k], ++k;
        if (k == s) break;
        ++n[k];
    }

    if (opt.with_w0) {
        Coeff logc(ring.dim());
        bool ok = true;
        for (std::size_t i = 0; i < sys.config.size() && ok; ++i) {
            bool origin = is_origin(sys.config, i);
            Rat a = origin ? Rat(-shift[i]) : Rat(1 + shift[i]);
            Rat sgn = origin ? Rat(-1) : Rat(1);
            std::vector<TransValue> t;
            try {
                t = gamma_log_expansion(a, ring.top_degree());
            } catch (const Error& err) {
                if (err.code() != "UnsupportedShift") throw;
                ok = false;
                break;
            }
            NilpotentAlgebra::Elem eps = ring.scale(ring.linear_form(column_row(chart, i)), sgn);
            NilpotentAlgebra::Elem pw = ring.one();
            for (int k = 1; k <= ring.top_degree(); ++k) {
                pw = ring.mul(pw, eps);
                Poly coef = trans_to_poly(t[k], k) * (origin ? Rat(1) : Rat(-1));
                logc = poly_add(logc, poly_scale(to_poly(pw), coef));
            }
        }
        if (ok) {
            for (const auto& x : logc)
                if (x.depends_on(sym::GAMMA)) fail("GammaNotCancelled", "Euler gamma survives in log c(PJ)");
            for (const auto& x : logc)
                if (x.depends_on(sym::LN2)) ok = false;
        }
        if (ok) {
            Coeff c = poly_exp(ring, logc);
            out.gamma_factor = c;
            LogSeries w0(s, ring.dim(), trunc), w0t(s, ring.dim(), trunc);
            for (const auto& [ex, v] : out.ws.terms()) w0.add(ex, ring.mul(c, v));
            for (const auto& [ex, v] : out.ws_tilde.terms()) w0t.add(ex, ring.mul(c, v));
            out.w0 = std::move(w0);
            out.w0_tilde = std::move(w0t);
        }
    }
    for (const LogSeries* w : {&out.ws, &out.ws_tilde})
        if (w->mentions(sym::GAMMA)) fail("GammaNotCancelled", "Euler gamma in an assembled series");
    if (out.w0 && out.w0->mentions(sym::GAMMA)) fail("GammaNotCancelled", "Euler gamma in w0");
    return out;
}

// ---------------------------------------------------------------- checks

bool AnnihilationReport::all_zero() const {
    for (const auto& r : results)
        if (!r.zero) return false;
    return true;
}

AnnihilationReport annihilation_check(const std::vector<ThetaOperator>& ops, const LogSeries& series) {
    AnnihilationReport rep;
    for (const auto& op : ops) {
        AnnihilationResult r;
        r.name = op.name;
        r.residual = op.apply(series);
        r.zero = r.residual.is_zero();
        for (const auto& e : r.residual.support()) {
            int tot = 0;
            for (auto x : e) tot += x;
            if (!r.first_nonzero || tot < *r.first_nonzero) r.first_nonzero = tot;
        }
        rep.results.push_back(std::move(r));
    }
    return rep;
}

std::size_t holomorphic_solution_dimension(const std::vector<ThetaOperator>& ops, std::size_t nvars,
                                           const Truncation& trunc) {
    std::vector<Exponent> pts = trunc.points(nvars);
    std::map<Exponent, std::size_t> index;
    for (std::size_t i = 0; i < pts.size(); ++i) index[pts[i]] = i;
    std::vector<std::map<std::size_t, Rat>> rows;  // keyed by (op, exponent)
    std::map<std::pair<std::size_t, Exponent>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rat>>> entries;
    for (std::size_t u = 0; u < pts.size(); ++u) {
        LogSeries unit(nvars, 1, trunc);
        unit.add(pts[u], 0, Poly(1));
        for (std::size_t o = 0; o < ops.size(); ++o) {
            LogSeries res = ops[o].apply(unit);
            for (const auto& [e, c] : res.terms()) {
                auto key = std::make_pair(o, e);
                auto it = row_of.find(key);
                if (it == row_of.end()) {
                    it = row_of.emplace(key, entries.size()).first;
                    entries.emplace_back();
                }
                entries[it->second].emplace_back(u, c[0].constant_term());
            }
        }
    }
    RatMat m(entries.size(), pts.size());
    for (std::size_t r = 0; r < entries.size(); ++r)
        for (const auto& [u, v] : entries[r]) m(r, u) += v;
    return pts.size() - rank(m);
}

ASeries a_space_series(const GkzSystem& sys, const ChartBasis& chart, const Truncation& trunc) {
    RatVec shift = exponent_shift(sys);
    const std::size_t s = chart.basis.size();
    ASeries out;
    for (const auto& n : trunc.points(s)) {
        Rat c = w0_coefficient(sys, chart, shift, n);
        if (c == 0) continue;
        RatVec v = shift;
        for (std::size_t k = 0; k < s; ++k) {
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += Rat(n[k]) * Rat(chart.basis[k][i]);
            if (chart.signs[k] < 0 && n[k] % 2 != 0) c = -c;
        }
        out.terms.emplace_back(std::move(v), c);
    }
    return out;
}

std::size_t a_space_residuals(const GkzSystem& sys, const ChartBasis& chart, const GkzOperators& ops,
                              const Truncation& trunc, std::size_t* checked) {
    RatVec shift = exponent_shift(sys);
    ASeries series = a_space_series(sys, chart, trunc);
    std::map<RatVec, Rat> coeff(series.terms.begin(), series.terms.end());
    const std::size_t np = sys.config.size();
    std::size_t bad = 0, seen = 0;

    auto preimage_known = [&](const RatVec& v) {
        IntVec d(np);
        for (std::size_t i = 0; i < np; ++i) {
            Rat x = v[i] - shift[i];
            if (x.get_den() != 1) return true;  // outside the coset: coefficient is zero
            d[i] = x.get_num();
        }
        auto n = coordinates_in_basis(chart.basis, d);
        if (!n) return true;
        Exponent e(n->size());
        for (std::size_t k = 0; k < e.size(); ++k) {
            if ((*n)[k] < 0) return true;
            e[k] = static_cast<int>((*n)[k].get_num().get_si());
        }
        return trunc.contains(e);
    };
    auto falling = [](const RatVec& v, const IntVec& u) {
        Rat r = 1;
        for (std::size_t i = 0; i < v.size(); ++i)
            for (long j = 0; j < u[i].get_si(); ++j) r *= v[i] - j;
        return r;
    };

    for (const auto& box : ops.boxes) {
        IntVec plus(np), minus(np);
        for (std::size_t i = 0; i < np; ++i) {
            plus[i] = box.ell[i] > 0 ? Int(box.ell[i]) : Int(0);
            minus[i] = box.ell[i] < 0 ? Int(-box.ell[i]) : Int(0);
        }
        std::set<RatVec> targets;
        for (const auto& [v, c] : series.terms) {
            RatVec a = v, b = v;
            for (std::size_t i = 0; i < np; ++i) {
                a[i] -= Rat(plus[i]);
                b[i] -= Rat(minus[i]);
            }
            targets.insert(a);
            targets.insert(b);
        }
        for (const auto& w : targets) {
            RatVec vp = w, vm = w;
            for (std::size_t i = 0; i < np; ++i) {
                vp[i] += Rat(plus[i]);
                vm[i] += Rat(minus[i]);
            }
            if (!preimage_known(vp) || !preimage_known(vm)) continue;
            Rat res = 0;
            if (auto it = coeff.find(vp); it != coeff.end()) res += it->second * falling(vp, plus);
            if (auto it = coeff.find(vm); it != coeff.end()) res -= it->second * falling(vm, minus);
            ++seen;
            if (res != 0) ++bad;
        }
    }
    for (const auto& eu : ops.euler)
        for (const auto& [v, c] : series.terms) {
            ++seen;
            if ((dot(eu.row, v) - eu.beta) * c != 0) ++bad;
        }
    if (checked) *checked = seen;
    return bad;
}

std::vector<std::vector<Rat>> infer_surface_form(const std::vector<ThetaOperator>& ops, std::size_t s) {
    std::vector<std::pair<std::size_t, std::size_t>> unknowns;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = i; j < s; ++j) unknowns.emplace_back(i, j);
    std::vector<RatVec> rows;
    for (const auto& op : ops) {
        for (const auto& t : op.terms) {
            bool base = std::all_of(t.shift.begin(), t.shift.end(), [](int x) { return x == 0; });
            if (!base) continue;
            if (t.factors.size() != 2) fail("RingInference", "operator " + op.name + " is not second order");
            const auto& a = t.factors[0].coeffs;
            const auto& b = t.factors[1].coeffs;
            RatVec row(unknowns.size());
            for (std::size_t u = 0; u < unknowns.size(); ++u) {
                auto [i, j] = unknowns[u];
                row[u] = i == j ? Rat(a[i] * b[i]) : Rat(a[i] * b[j] + a[j] * b[i]);
                row[u] *= t.scalar;
            }
            rows.push_back(row);
        }
    }
    RatMat m = RatMat::from_rows(rows);
    auto ns = nullspace(m);
    if (ns.size() != 1) fail("RingInference", "apolar forms span dimension " + std::to_string(ns.size()));
    IntVec prim = primitive(ns[0]);
    std::vector<std::vector<Rat>> eta(s, std::vector<Rat>(s));
    Rat total = 0;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        auto [i, j] = unknowns[u];
        eta[i][j] = eta[j][i] = Rat(prim[u]);
        total += i == j ? Rat(prim[u]) : Rat(2 * prim[u]);
    }
    if (total == 0) fail("RingInference", "form vanishes on the diagonal class");
    if (total < 0)
        for (auto& row : eta)
            for (auto& x : row) x = -x;
    return eta;
}

}  // namespace toricmirror
