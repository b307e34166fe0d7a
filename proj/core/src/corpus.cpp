#include "toricmirror/corpus.hpp"

#include <algorithm>
#include <sstream>

#include "toricmirror/linalg.hpp"

namespace toricmirror {

namespace {

IntVec iv(std::initializer_list<long> l) {
    IntVec r;
    for (long x : l) r.push_back(Int(x));
    return r;
}

LatticePolytope simplex_with(const IntVec& last) {
    return LatticePolytope::from_vertices({iv({1, 0, 0, 0}), iv({0, 1, 0, 0}), iv({0, 0, 1, 0}), iv({0, 0, 0, 1}), last});
}

/** c + sum a_k theta_k with coefficients given as (numerator) integers and a half-integer constant. */
ThetaForm form(Rat c, std::vector<int> a) {
    ThetaForm f;
    f.constant = c;
    for (int x : a) f.coeffs.push_back(Rat(x));
    return f;
}

OperatorTerm term(Exponent shift, Rat scalar, std::vector<ThetaForm> factors) {
    return OperatorTerm{std::move(shift), scalar, std::move(factors)};
}

std::vector<ThetaOperator> k3_operators() {
    const Rat h(1, 2);
    auto op = [](std::string name, std::vector<OperatorTerm> ts) {
        return ThetaOperator{std::move(name), 4, std::move(ts)};
    };
    return {
        op("D1", {term({0, 0, 0, 0}, 1, {form(0, {1, 1, 0, -1}), form(0, {1, 0, 1, -1})}),
                  term({1, 0, 0, 0}, 1, {form(h, {1, 0, 0, 0}), form(0, {1, 0, 0, -1})})}),
        op("D2", {term({0, 0, 0, 0}, 1, {form(0, {1, 1, 0, -1}), form(0, {0, 1, 1, -1})}),
                  term({0, 1, 0, 0}, 1, {form(h, {0, 1, 0, 0}), form(0, {0, 1, 0, -1})})}),
        op("D3", {term({0, 0, 0, 0}, 1, {form(0, {1, 0, 1, -1}), form(0, {0, 1, 1, -1})}),
                  term({0, 0, 1, 0}, 1, {form(h, {0, 0, 1, 0}), form(0, {0, 0, 1, -1})})}),
        op("D4", {term({0, 0, 0, 0}, 1, {form(0, {0, 1, 0, -1}), form(0, {0, 0, 1, -1})}),
                  term({1, 0, 0, 1}, -1, {form(h, {1, 0, 0, 0}), form(0, {0, 1, 1, -1})})}),
        op("D5", {term({0, 0, 0, 0}, 1, {form(0, {1, 0, 0, -1}), form(0, {0, 0, 1, -1})}),
                  term({0, 1, 0, 1}, -1, {form(h, {0, 1, 0, 0}), form(0, {1, 0, 1, -1})})}),
        op("D6", {term({0, 0, 0, 0}, 1, {form(0, {1, 0, 0, -1}), form(0, {0, 1, 0, -1})}),
                  term({0, 0, 1, 1}, -1, {form(h, {0, 0, 1, 0}), form(0, {1, 1, 0, -1})})}),
        op("D7", {term({0, 0, 0, 0}, 1, {form(0, {1, 1, 0, -1}), form(0, {0, 0, 1, -1})}),
                  term({1, 1, 0, 1}, 1, {form(h, {1, 0, 0, 0}), form(h, {0, 1, 0, 0})})}),
        op("D8", {term({0, 0, 0, 0}, 1, {form(0, {1, 0, 1, -1}), form(0, {0, 1, 0, -1})}),
                  term({1, 0, 1, 1}, 1, {form(h, {1, 0, 0, 0}), form(h, {0, 0, 1, 0})})}),
        op("D9", {term({0, 0, 0, 0}, 1, {form(0, {0, 1, 1, -1}), form(0, {1, 0, 0, -1})}),
                  term({0, 1, 1, 1}, 1, {form(h, {0, 1, 0, 0}), form(h, {0, 0, 1, 0})})}),
    };
}

ThetaOperator lambda_operator() {
    const Rat h(1, 2);
    return ThetaOperator{"PF", 1,
                         {term({0}, 1, {form(0, {1}), form(0, {1})}), term({1}, -1, {form(h, {1}), form(h, {1})})}};
}

Fixture hypersurface_fixture(std::string name, std::string description, const LatticePolytope& ds, int order) {
    Fixture f;
    f.name = std::move(name);
    f.description = std::move(description);
    f.delta_star = ds;
    f.config = build_hypersurface_config(ds);
    f.system = GkzSystem::standard(f.config);
    if (ds.ambient_rank() == 4) {
        HodgePair h = hodge_numbers_hypersurface(polar_dual(ds));
        f.hodge = HodgeInput{h.h11, h.h21};
    }
    f.ring_source = RingSource::Toric;
    f.order = order;
    return f;
}

bool unipotent_with_index(const RatMat& t, std::size_t m) {
    RatMat u = t - RatMat::identity(t.rows()), p = RatMat::identity(t.rows());
    for (std::size_t i = 0; i < m; ++i) p = p * u;
    return p.is_zero();
}

std::size_t unipotency_index(const RatMat& t) {
    for (std::size_t m = 0; m <= t.rows(); ++m)
        if (unipotent_with_index(t, m)) return m;
    return t.rows() + 1;
}

Json w0_json(const LogSeries& w) {
    Json j = Json::object();
    for (const auto& [e, c] : w.terms()) j[exponent_key(e)] = c[0].is_constant() ? to_string(c[0].constant_term()) : c[0].str();
    return j;
}

}  // namespace

Truncation Fixture::truncation(int order_override) const {
    int n = order_override > 0 ? order_override : order;
    if (box) return Truncation::box(std::vector<int>(config.size() - config.ambient_rank, n));
    return Truncation::total_degree(n);
}

std::vector<std::string> fixture_names() {
    return {"quintic", "weierstrass", "elliptic-lambda", "k3-six-lines", "p4xp4", "square-toy",
            "p11222",  "p11112",      "p11114",          "p11226"};
}

Fixture load_fixture(const std::string& name) {
    if (name == "quintic")
        return hypersurface_fixture(name, "Quintic threefold in P4", simplex_with(iv({-1, -1, -1, -1})), 4);
    if (name == "p11222")
        return hypersurface_fixture(name, "Degree 8 hypersurface in P(1,1,2,2,2)", simplex_with(iv({-1, -2, -2, -2})), 3);
    if (name == "p11112")
        return hypersurface_fixture(name, "Degree 6 hypersurface in P(1,1,1,1,2)", simplex_with(iv({-1, -1, -1, -2})), 3);
    if (name == "p11114")
        return hypersurface_fixture(name, "Degree 8 hypersurface in P(1,1,1,1,4)", simplex_with(iv({-1, -1, -1, -4})), 3);
    if (name == "p11226")
        return hypersurface_fixture(name, "Degree 12 hypersurface in P(1,1,2,2,6)", simplex_with(iv({-1, -2, -2, -6})), 3);
    if (name == "weierstrass") {
        Fixture f = hypersurface_fixture(name, "Weierstrass cubic in P(1,2,3)",
                                         LatticePolytope::from_vertices({iv({-1, 0}), iv({0, -1}), iv({3, 2})}), 3);
        f.hodge = HodgeInput{1, 0};
        return f;
    }
    if (name == "elliptic-lambda") {
        Fixture f;
        f.name = name;
        f.description = "Legendre family with exponent shift (-1/2, -1/2, 0, 0)";
        f.config = PointConfiguration::generic({iv({1, 0, 0}), iv({0, 1, 0}), iv({1, 0, 1}), iv({0, 1, -1})}, {0, 1});
        RatVec c{Rat(-1, 2), Rat(-1, 2), 0, 0};
        f.system = GkzSystem::with_beta(f.config, to_rat(f.config.matrix()).apply(c));
        f.operators = {lambda_operator()};
        f.ring_source = RingSource::Curve;
        f.curve_degrees = {Rat(1)};
        f.order = 8;
        return f;
    }
    if (name == "k3-six-lines") {
        Fixture f;
        f.name = name;
        f.description = "Double cover of P2 branched along six lines, reduced GKZ data";
        f.config = PointConfiguration::generic({iv({1, 0, 0, 0, 0}), iv({1, 1, 0, 0, 0}), iv({1, 0, 1, 0, 0}),
                                                iv({1, 0, 0, -1, 1}), iv({1, 0, 0, -1, 0}), iv({1, 1, 0, 0, -1}),
                                                iv({1, 1, 0, 1, -1}), iv({1, 0, 1, 1, 0}), iv({1, 0, 1, 0, 1})},
                                               {0, 1, 2});
        RatVec c(9, Rat(0));
        for (int i = 0; i < 3; ++i) c[i] = Rat(-1, 2);
        f.system = GkzSystem::with_beta(f.config, to_rat(f.config.matrix()).apply(c));
        f.chart_override = {iv({-1, 0, 0, 0, 1, -1, 1, 0, 0}), iv({0, -1, 0, 0, 0, 0, 1, -1, 1}),
                            iv({0, 0, -1, -1, 1, 0, 0, 0, 1}), iv({0, 0, 0, 1, -1, 1, -1, 1, -1})};
        f.operators = k3_operators();
        f.ring_source = RingSource::Surface;
        f.order = 3;
        f.box = true;
        return f;
    }
    if (name == "p4xp4") {
        std::vector<IntVec> vs;
        for (int i = 0; i < 5; ++i) {
            IntVec a(8, Int(0)), b(8, Int(0));
            for (int j = 0; j < 4; ++j) {
                a[j] = i < 4 ? Int(j == i) : Int(-1);
                b[4 + j] = i < 4 ? Int(j == i) : Int(-1);
            }
            vs.push_back(a);
            vs.push_back(b);
        }
        LatticePolytope p = LatticePolytope::from_vertices(vs);
        std::vector<std::vector<IntVec>> groups;
        for (int i = 0; i < 5; ++i) groups.push_back({vs[2 * i], vs[2 * i + 1]});
        Fixture f;
        f.name = name;
        f.description = "Complete intersection of five (1,1) divisors in P4 x P4";
        f.nef = nef_partition_dual(NefPartition::from_vertex_groups(p, groups));
        f.config = build_cicy_config(f.nef->nabla_parts);
        f.system = GkzSystem::standard(f.config);
        f.hodge = HodgeInput{2, 52};
        f.ring_source = RingSource::Toric;
        f.order = 3;
        return f;
    }
    if (name == "square-toy") {
        Fixture f;
        f.name = name;
        f.description = "Unit square, lifted";
        f.config = PointConfiguration::generic({iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1}), iv({1, 1, 1})}, {0});
        f.system = GkzSystem::with_beta(f.config, RatVec{Rat(-1), 0, 0});
        f.order = 3;
        return f;
    }
    throw Error("cli", "UnknownFixture", "no fixture named '" + name + "'");
}

ChartChoice choose_chart(const Fixture& f, const EnumerationOptions& opt) {
    ChartChoice cc;
    cc.fan = secondary_fan(kernel_lattice(f.config), opt);
    for (const auto& cone : cc.fan.cones)
        if (is_maximal(f.config, cone.triangulation)) ++cc.maximal_count;
    if (!f.chart_override.empty()) {
        const auto& kb = cc.fan.gale.kernel_basis;
        const std::size_t s = kb.size();
        RatMat coords(s, s);
        for (std::size_t k = 0; k < s; ++k) {
            auto c = coordinates_in_basis(kb, f.chart_override[k]);
            if (!c) throw Error("cli", "BadOverride", "override vector is not in the kernel lattice");
            for (std::size_t j = 0; j < s; ++j) coords(k, j) = (*c)[j];
        }
        auto inv = inverse(coords);
        if (!inv) throw Error("cli", "BadOverride", "override vectors are dependent");
        std::vector<IntVec> rays;
        for (std::size_t i = 0; i < s; ++i) rays.push_back(primitive(inv->col(i)));
        auto idx = cc.fan.containing(rays);
        if (!idx) throw Error("cli", "BadOverride", "override chart lies in no chamber");
        cc.cone = *idx;
        cc.chart = chart_basis_override(cc.fan, cc.cone, f.chart_override);
        return cc;
    }
    for (std::size_t i = 0; i < cc.fan.cones.size(); ++i) {
        if (!is_maximal(f.config, cc.fan.cones[i].triangulation)) continue;
        try {
            cc.chart = chart_basis(cc.fan, i);
            cc.cone = i;
            return cc;
        } catch (const Error& e) {
            if (e.code() != "NonUnimodularChart") throw;
        }
    }
    throw Error("cli", "NoChart", "no maximal unimodular chamber");
}

FixtureModel build_model(const Fixture& f, const EnumerationOptions& opt) {
    FixtureModel m;
    m.fixture = f;
    m.chart = choose_chart(f, opt);
    m.shift = exponent_shift(f.system);
    switch (f.ring_source) {
        case RingSource::Toric:
            m.ring = hypersurface_ring(f.config, m.chart.chart, *f.hodge);
            m.algebra = m.ring->algebra;
            break;
        case RingSource::Curve:
            m.algebra = NilpotentAlgebra::curve(f.curve_degrees);
            break;
        case RingSource::Surface:
            m.algebra = NilpotentAlgebra::surface(infer_surface_form(f.operators, m.chart.chart.basis.size()));
            break;
        case RingSource::None:
            break;
    }
    return m;
}

Json fixture_report(const FixtureModel& m, int order) {
    const Fixture& f = m.fixture;
    const Truncation trunc = f.truncation(order);
    const ChartBasis& chart = m.chart.chart;
    const std::size_t s = chart.basis.size();
    Json r;
    r["fixture"] = f.name;
    r["description"] = f.description;
    r["truncation"] = trunc.str();

    Json cfg{{"columns", f.config.size()}, {"kind", to_string(f.config.kind)}};
    Json kern = Json::array();
    for (const auto& k : m.chart.fan.gale.kernel_basis) kern.push_back(to_json(k));
    cfg["kernel_rank"] = m.chart.fan.gale.rank_L;
    cfg["kernel"] = kern;
    r["config"] = cfg;
    if (f.hodge) r["hodge"] = Json{{"h11", to_json(f.hodge->h11)}, {"h21", to_json(f.hodge->h21)}};
    if (f.delta_star && f.delta_star->ambient_rank() == 4) r["mirror_hodge"] = hodge_to_json(hodge_numbers_hypersurface(*f.delta_star));
    if (f.nef) r["mirror_hodge"] = Json{{"h11", to_json(f.hodge->h21)}, {"h21", to_json(f.hodge->h11)}};
    r["triangulations"] = Json{{"regular", m.chart.fan.cones.size()}, {"maximal", m.chart.maximal_count}};
    if (f.ring_source == RingSource::None && f.name == "square-toy") return r;

    Json ch;
    Json mons = Json::array();
    for (std::size_t k = 0; k < s; ++k) mons.push_back(chart_monomial(chart.basis[k], chart.signs[k]));
    ch["monomials"] = mons;
    ch["overridden"] = chart.overridden;
    ch["triangulation"] = chart.triangulation.id();
    ch["shift"] = to_json(m.shift);
    r["chart"] = ch;

    LogSeries w0 = frobenius_w0(f.system, chart, trunc);
    Json wj{{"coefficients", w0_json(w0)}};
    auto boxes = chart_operators(f.system, chart, m.shift);
    wj["box_annihilate"] = annihilation_check(boxes, w0).all_zero();
    wj["euler_annihilate"] = annihilation_check(pushforward_euler(f.system, chart, m.shift), w0).all_zero();
    std::size_t checked = 0;
    std::size_t bad = a_space_residuals(f.system, chart, gkz_operators(f.system), trunc, &checked);
    wj["aspace_residuals"] = Json{{"nonzero", bad}, {"checked", checked}};
    if (!f.operators.empty()) {
        Json ops = Json::object();
        for (const auto& res : annihilation_check(f.operators, w0).results) ops[res.name] = res.zero;
        wj["quoted_operators"] = ops;
    }
    r["w0"] = wj;
    if (m.ring) r["ring"] = ring_to_json(*m.ring);
    if (!m.algebra) return r;

    const NilpotentAlgebra& alg = *m.algebra;
    CohomologySeries cs = frobenius_cohomology(f.system, chart, alg, trunc);
    const LogSeries& w = cs.w0 ? *cs.w0 : cs.ws;
    bool gamma_free = !cs.ws.mentions(sym::GAMMA) && !(cs.w0 && cs.w0->mentions(sym::GAMMA));
    bool nonneg = true;
    for (const auto& e : w.support())
        for (int x : e) nonneg = nonneg && x >= 0;
    r["cohomology"] = Json{{"basis", alg.labels()},
                           {"w0_available", cs.w0.has_value()},
                           {"gamma_free", gamma_free},
                           {"support_nonnegative", nonneg},
                           {"support_checked", cs.support_checked},
                           {"support_undecided", cs.support_singular}};

    if (f.ring_source == RingSource::Surface) {
        RatMat id = RatMat::identity(alg.dim());
        PeriodVector pv = period_vector_in_basis(w, id, alg.labels());
        MonodromyData md = monodromy_data(pv, s);
        bool commute = true;
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = 0; j < s; ++j) commute = commute && md.n[i] * md.n[j] == md.n[j] * md.n[i];
        Json per{{"commute", commute}, {"monodromy", monodromy_to_json(md)}};
        r["periods"] = per;
        return r;
    }

    NilpotentAlgebra::Elem c2 = m.ring ? m.ring->c2 : alg.zero();
    SymplecticBasis basis = SymplecticBasis::build(alg, c2);
    PeriodVector pv = period_vector(w, basis);
    RatMat sigma = standard_sigma(basis.size());
    Json per;
    per["gram_is_minus_sigma"] = basis.gram() == sigma.scaled(-1);
    if (m.ring && m.ring->dim == 3) {
        PeriodVector cp = canonical_periods(f.system, chart, *m.ring, trunc);
        bool agree = true;
        for (std::size_t a = 0; a < pv.components.size(); ++a)
            agree = agree && (pv.components[a] - cp.components[a]).is_zero();
        per["routes_agree"] = agree;
    }
    MonodromyData md = monodromy_data(pv, s, &sigma);
    per["monodromy"] = monodromy_to_json(md);
    Json uni = Json::array();
    for (const auto& t : md.t) uni.push_back(unipotency_index(t));
    per["unipotency_index"] = uni;
    Json mir = Json::array();
    for (const auto& c : verify_mirror_isomorphism(md, basis)) mir.push_back(c.pass && c.exp_agrees);
    per["mirror_identity"] = mir;
    SymplecticBasis control = SymplecticBasis::build(alg, c2, std::nullopt, false);
    Json ctl = Json::array();
    for (const auto& c : verify_mirror_isomorphism(md, control)) ctl.push_back(c.pass);
    per["mirror_identity_todd_one"] = ctl;
    bool commute = true;
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) commute = commute && md.n[i] * md.n[j] == md.n[j] * md.n[i];
    per["commute"] = commute;
    const int center = static_cast<int>(alg.top_degree());
    RatMat nl(basis.size(), basis.size());
    for (std::size_t k = 0; k < s; ++k) nl = nl + md.n[k].scaled(Rat(static_cast<long>(k + 1)));
    WeightFiltration wf = weight_filtration(nl, center);
    per["weight_dims"] = wf.dims;
    per["lcsl"] = wf.lcsl;
    if (s > 1) {
        RatMat nl2(basis.size(), basis.size());
        for (std::size_t k = 0; k < s; ++k) nl2 = nl2 + md.n[k].scaled(Rat(static_cast<long>(2 * k + 3), 2));
        per["lambda_independent"] = same_filtration(wf, weight_filtration(nl2, center));
    }
    try {
        MirrorMap mm = mirror_map(pv, s);
        auto x = invert_mirror_map(mm);
        Json xs = Json::array();
        for (const auto& xk : x) {
            Json t = Json::object();
            for (const auto& [e, c] : xk.terms) t[exponent_key(e)] = to_string(c);
            xs.push_back(t);
        }
        per["mirror_map"] = Json{{"x_of_q", xs}, {"round_trip", mirror_round_trip(mm, x)}};
    } catch (const Error& e) {
        per["mirror_map"] = Json{{"error", e.code()}};
    }
    r["periods"] = per;
    return r;
}

std::vector<GoldenDiff> compare_golden(const Json& golden, const Json& computed, const std::string& prefix) {
    std::vector<GoldenDiff> out;
    if (golden.is_object()) {
        for (auto it = golden.begin(); it != golden.end(); ++it) {
            std::string path = prefix.empty() ? it.key() : prefix + "." + it.key();
            if (!computed.is_object() || !computed.contains(it.key())) {
                out.push_back({path, it.value().dump(), "<missing>"});
                continue;
            }
            auto sub = compare_golden(it.value(), computed.at(it.key()), path);
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (golden.is_array() && computed.is_array() && golden.size() == computed.size()) {
        for (std::size_t i = 0; i < golden.size(); ++i) {
            auto sub = compare_golden(golden[i], computed[i], prefix + "[" + std::to_string(i) + "]");
            out.insert(out.end(), sub.begin(), sub.end());
        }
        return out;
    }
    if (golden != computed) out.push_back({prefix, golden.dump(), computed.dump()});
    return out;
}

}  // namespace toricmirror

namespace toricmirror {

namespace {

Json resolve(const Json& v, const std::filesystem::path& base) {
    if (v.is_string()) return read_json_file(base / v.get<std::string>());
    return v;
}

RingSource parse_ring_source(const std::string& s) {
    if (s == "toric") return RingSource::Toric;
    if (s == "curve") return RingSource::Curve;
    if (s == "surface") return RingSource::Surface;
    if (s == "none") return RingSource::None;
    throw Error("cli", "Malformed", "unknown ring source '" + s + "'");
}

void collect_failures(const Json& j, const std::string& path, std::vector<std::string>& out) {
    static const std::vector<std::string> must_be_true = {
        "box_annihilate", "euler_annihilate", "gamma_free", "support_nonnegative", "gram_is_minus_sigma",
        "routes_agree",   "commute",          "lcsl",       "lambda_independent",  "round_trip"};
    if (!j.is_object()) return;
    for (auto it = j.begin(); it != j.end(); ++it) {
        std::string p = path.empty() ? it.key() : path + "." + it.key();
        const Json& v = it.value();
        bool checked = std::find(must_be_true.begin(), must_be_true.end(), it.key()) != must_be_true.end();
        if (checked && v.is_boolean() && !v.get<bool>()) out.push_back(p);
        if ((it.key() == "mirror_identity" || it.key() == "quoted_operators") && !v.is_null()) {
            if (v.is_array())
                for (std::size_t i = 0; i < v.size(); ++i)
                    if (!v[i].get<bool>()) out.push_back(p + "[" + std::to_string(i) + "]");
            if (v.is_object())
                for (auto o = v.begin(); o != v.end(); ++o)
                    if (!o.value().get<bool>()) out.push_back(p + "." + o.key());
        }
        if (it.key() == "aspace_residuals" && v.value("nonzero", 0) != 0) out.push_back(p);
        if (it.key() == "mirror_map" && v.contains("error")) out.push_back(p);
        collect_failures(v, p, out);
    }
}

}  // namespace

Fixture fixture_from_json(const Json& j, const std::filesystem::path& base) {
    if (!j.is_object()) throw Error("cli", "Malformed", "pipeline document must be an object");
    static const std::vector<std::string> known = {"fixture", "delta_star", "delta", "config", "beta",
                                                   "hodge",   "order",      "box",   "chart_override",
                                                   "ring",    "curve_degrees", "output_dir", "name", "description"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw Error("cli", "Malformed", "unknown pipeline key '" + it.key() + "'");
    int sources = j.contains("fixture") + j.contains("delta_star") + j.contains("delta") + j.contains("config");
    if (sources != 1)
        throw Error("cli", "Malformed", "exactly one of fixture, delta_star, delta, config is required");

    Fixture f;
    if (j.contains("fixture")) {
        f = load_fixture(j.at("fixture").get<std::string>());
    } else if (j.contains("config")) {
        f.config = config_from_json(resolve(j.at("config"), base));
        f.name = "config";
        if (f.config.kind == ConfigKind::Generic && !j.contains("beta"))
            throw Error("cli", "Malformed", "a generic configuration needs an explicit beta");
        f.system = f.config.kind == ConfigKind::Generic ? GkzSystem::with_beta(f.config, ratvec_from_json(j.at("beta")))
                                                        : GkzSystem::standard(f.config);
    } else {
        LatticePolytope p = polytope_from_json(resolve(j.contains("delta") ? j.at("delta") : j.at("delta_star"), base));
        LatticePolytope ds = j.contains("delta") ? polar_dual(p) : p;
        if (!is_reflexive(ds)) throw Error("polytope", "NotReflexive", "the input polytope is not reflexive");
        f = hypersurface_fixture("polytope", "Hypersurface from a reflexive polytope", ds, 3);
    }
    if (j.contains("name")) f.name = j.at("name").get<std::string>();
    if (j.contains("description")) f.description = j.at("description").get<std::string>();
    if (j.contains("beta") && !j.contains("config")) f.system = GkzSystem::with_beta(f.config, ratvec_from_json(j.at("beta")));
    if (j.contains("hodge")) {
        const Json& h = j.at("hodge");
        f.hodge = HodgeInput{int_from_json(h.at("h11")), int_from_json(h.at("h21"))};
    }
    if (j.contains("order")) {
        if (!j.at("order").is_number_integer() || j.at("order").get<int>() < 1)
            throw Error("cli", "Malformed", "order must be a positive integer");
        f.order = j.at("order").get<int>();
    }
    if (j.contains("box")) f.box = j.at("box").get<bool>();
    if (j.contains("chart_override")) {
        f.chart_override.clear();
        for (const auto& v : j.at("chart_override")) f.chart_override.push_back(intvec_from_json(v));
    }
    if (j.contains("curve_degrees")) f.curve_degrees = ratvec_from_json(j.at("curve_degrees"));
    if (j.contains("ring")) f.ring_source = parse_ring_source(j.at("ring").get<std::string>());
    else if (j.contains("config")) f.ring_source = f.config.kind == ConfigKind::Generic ? RingSource::None : RingSource::Toric;
    if (f.ring_source == RingSource::Toric && !f.hodge)
        throw Error("cli", "Malformed", "the toric ring needs hodge numbers");
    if (f.ring_source == RingSource::Curve && f.curve_degrees.empty())
        throw Error("cli", "Malformed", "a curve ring needs curve_degrees");
    return f;
}

std::vector<std::string> report_failures(const Json& report) {
    std::vector<std::string> out;
    collect_failures(report, "", out);
    return out;
}

std::string report_summary(const Json& r) {
    std::ostringstream os;
    os << r.value("fixture", "?") << ": " << r.value("description", "") << "\n";
    if (r.contains("hodge")) os << "  hodge (h11,h21) = (" << r["hodge"]["h11"].get<std::string>() << ","
                                << r["hodge"]["h21"].get<std::string>() << ")\n";
    os << "  kernel rank " << r["config"]["kernel_rank"].get<std::size_t>() << ", " << r["triangulations"]["regular"]
       << " regular triangulations, " << r["triangulations"]["maximal"] << " maximal\n";
    if (r.contains("chart")) {
        os << "  chart:";
        for (const auto& m : r["chart"]["monomials"]) os << " " << m.get<std::string>();
        os << "\n";
    }
    if (r.contains("w0")) {
        os << "  w0:";
        int shown = 0;
        for (auto it = r["w0"]["coefficients"].begin(); it != r["w0"]["coefficients"].end() && shown < 6; ++it, ++shown)
            os << " [" << it.key() << "] " << it.value().get<std::string>();
        os << "\n";
    }
    if (r.contains("periods") && r["periods"].contains("monodromy")) {
        const Json& t = r["periods"]["monodromy"]["T"];
        for (std::size_t k = 0; k < t.size(); ++k) {
            os << "  T" << k + 1 << ":\n";
            for (const auto& row : t[k]) {
                os << "   ";
                for (const auto& x : row) os << " " << x.get<std::string>();
                os << "\n";
            }
        }
    }
    auto fails = report_failures(r);
    os << "  checks: " << (fails.empty() ? "all passed" : std::to_string(fails.size()) + " failed") << "\n";
    for (const auto& f : fails) os << "    failed: " << f << "\n";
    return os.str();
}

}  // namespace toricmirror
