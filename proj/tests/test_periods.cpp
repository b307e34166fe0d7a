#include <random>

#include "support.hpp"
#include "toricmirror/linalg.hpp"

using namespace toricmirror;
using namespace toricmirror::testing;

namespace {

struct Built {
    SymplecticBasis basis;
    LogSeries w;
    PeriodVector pv;
    MonodromyData md;
};

Built build(const std::string& name, int order = 0) {
    const auto& m = model(name);
    const NilpotentAlgebra& alg = *m.algebra;
    CohomologySeries cs = frobenius_cohomology(m.fixture.system, m.chart.chart, alg, m.fixture.truncation(order));
    NilpotentAlgebra::Elem c2 = m.ring ? m.ring->c2 : alg.zero();
    SymplecticBasis b = SymplecticBasis::build(alg, c2);
    LogSeries w = cs.w0 ? *cs.w0 : cs.ws;
    PeriodVector pv = period_vector(w, b);
    RatMat sigma = standard_sigma(b.size());
    MonodromyData md = monodromy_data(pv, alg.generators(), &sigma);
    return {b, w, pv, md};
}

RatMat power(const RatMat& a, int k) {
    RatMat r = RatMat::identity(a.rows());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

/** Single-variable series reversion: the b_n with q(x(q)) = q, solved coefficient by coefficient. */
std::vector<Rat> revert(const std::vector<Rat>& a, int order) {
    std::vector<Rat> b(order + 1, Rat(0));
    b[1] = 1 / a[1];
    auto compose = [&](const std::vector<Rat>& x) {
        std::vector<Rat> out(order + 1, Rat(0)), pw(order + 1, Rat(0));
        pw[0] = 1;
        for (int k = 1; k <= order; ++k) {
            std::vector<Rat> next(order + 1, Rat(0));
            for (int i = 0; i <= order; ++i)
                for (int j = 0; i + j <= order; ++j) next[i + j] += pw[i] * x[j];
            pw = next;
            if (k < static_cast<int>(a.size()))
                for (int i = 0; i <= order; ++i) out[i] += a[k] * pw[i];
        }
        return out;
    };
    for (int n = 2; n <= order; ++n) {
        std::vector<Rat> c = compose(b);
        b[n] = -c[n] / a[1];
    }
    return b;
}

const std::vector<std::string> kPeriodFixtures{"quintic", "weierstrass", "elliptic-lambda", "p4xp4",
                                               "p11222",  "p11112",      "p11114",          "p11226"};

}  // namespace

TEST(Pairing, QuinticValues) {
    const auto& r = *model("quintic").ring;
    SymplecticBasis b = SymplecticBasis::build(r.algebra, r.c2);
    NilpotentAlgebra::Elem todd = todd_class(r.algebra, r.c2);
    const auto& e = b.elements;
    EXPECT_EQ(rr_pairing(e[0], e[3], r.algebra, todd), -1);
    EXPECT_EQ(rr_pairing(e[3], e[0], r.algebra, todd), 1);
    EXPECT_EQ(rr_pairing(e[0], e[0], r.algebra, todd), 0);
    EXPECT_EQ(rr_pairing(e[1], e[2], r.algebra, todd), -1);
    for (long a : {-3, 1, 7}) {
        RatMat am(1, 1, Rat(a, 5));
        SymplecticBasis ba = SymplecticBasis::build(r.algebra, r.c2, am);
        EXPECT_EQ(rr_pairing(ba.elements[1], ba.elements[2], r.algebra, todd), -1);
        EXPECT_EQ(ba.gram(), standard_sigma(4).scaled(-1));
    }
}

TEST(Pairing, SymbolicTableIndependentOfA) {
    for (const auto& name : {"quintic", "p4xp4", "p11222"}) {
        const auto& r = *model(name).ring;
        auto table = symbolic_pairing_table(r.algebra, r.c2);
        const std::size_t n = table.size(), s = r.algebra.generators();
        ASSERT_EQ(n, 2 * s + 2);
        RatMat want = standard_sigma(n).scaled(-1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) EXPECT_EQ(table[i][j], Poly(want(i, j))) << name << " " << i << "," << j;
    }
}

TEST(Pairing, SigmaShapeAndInverse) {
    RatMat s = standard_sigma(4);
    EXPECT_EQ(s(0, 3), 1);
    EXPECT_EQ(s(1, 2), 1);
    EXPECT_EQ(s(2, 1), -1);
    EXPECT_EQ(s(3, 0), -1);
    EXPECT_EQ(s * s, RatMat::identity(4).scaled(-1));
}

TEST(Periods, QuinticStructure) {
    Built b = build("quintic", 4);
    const auto& c = b.pv.components;
    ASSERT_EQ(c.size(), 4u);
    EXPECT_EQ(c[0].coefficient({0}), Poly(1));
    EXPECT_EQ(c[0].log_degree(), 0);
    EXPECT_EQ(c[1].log_degree(), 1);
    EXPECT_LE(c[2].log_degree(), 2);
    EXPECT_LE(c[3].log_degree(), 3);
    for (std::size_t a = 0; a < 3; ++a) EXPECT_FALSE(c[a].mentions(sym::Z3)) << a;
    EXPECT_TRUE(c[3].mentions(sym::Z3));
}

TEST(Periods, QuinticZeta3TermIsMinusChiTimesPi0) {
    Built b = build("quintic", 4);
    const LogSeries& pi0 = b.pv.components[0];
    const LogSeries& pi3 = b.pv.components[3];
    for (const auto& e : pi3.support()) {
        Poly z = pi3.coefficient(e).coefficient_of(sym::Z3, 1);
        EXPECT_EQ(z, pi0.coefficient(e) * Rat(200)) << e[0];
    }
    EXPECT_EQ(pi3.coefficient({0}).coefficient_of(sym::Z3, 1), Poly(200));
}

TEST(Periods, AssemblyRoutesAgree) {
    for (const auto& name : {"quintic", "p4xp4", "p11222"}) {
        const auto& m = model(name);
        Truncation t = name == std::string("quintic") ? Truncation::total_degree(4) : m.fixture.truncation();
        CohomologySeries cs = frobenius_cohomology(m.fixture.system, m.chart.chart, *m.algebra, t);
        PeriodVector direct = period_vector(*cs.w0, SymplecticBasis::build(*m.algebra, m.ring->c2));
        PeriodVector formulas = canonical_periods(m.fixture.system, m.chart.chart, *m.ring, t);
        ASSERT_EQ(direct.components.size(), formulas.components.size());
        for (std::size_t a = 0; a < direct.components.size(); ++a)
            EXPECT_TRUE((direct.components[a] - formulas.components[a]).is_zero()) << name << " " << a;
    }
}

TEST(Periods, AssemblyRoutesAgreeWithAParameters) {
    const auto& m = model("quintic");
    Truncation t = Truncation::total_degree(3);
    RatMat a(1, 1, Rat(11, 2));
    CohomologySeries cs = frobenius_cohomology(m.fixture.system, m.chart.chart, *m.algebra, t);
    PeriodVector direct = period_vector(*cs.w0, SymplecticBasis::build(*m.algebra, m.ring->c2, a));
    PeriodVector formulas = canonical_periods(m.fixture.system, m.chart.chart, *m.ring, t, a);
    for (std::size_t i = 0; i < direct.components.size(); ++i)
        EXPECT_TRUE((direct.components[i] - formulas.components[i]).is_zero()) << i;
}

TEST(Monodromy, QuinticT1) {
    Built b = build("quintic", 4);
    const RatMat& t = b.md.t[0];
    RatMat want = RatMat::from_rows({rv({1, 0, 0, 0}), rv({1, 1, 0, 0}), {Rat(5, 2), 5, 1, 0}, {-5, Rat(-5, 2), -1, 1}});
    EXPECT_EQ(t, want);
    RatMat u = t - RatMat::identity(4);
    EXPECT_FALSE(power(u, 3).is_zero());
    EXPECT_TRUE(power(u, 4).is_zero());
    EXPECT_TRUE(is_symplectic(t, standard_sigma(4)));
    EXPECT_EQ(t.transposed() * standard_sigma(4) * t, standard_sigma(4));
}

TEST(Monodromy, CurvesAreTwoByTwo) {
    for (const auto& name : {"elliptic-lambda", "weierstrass"}) {
        Built b = build(name);
        const RatMat& t = b.md.t[0];
        ASSERT_EQ(t.rows(), 2u);
        RatMat u = t - RatMat::identity(2);
        EXPECT_FALSE(u.is_zero()) << name;
        EXPECT_TRUE((u * u).is_zero()) << name;
    }
}

TEST(Monodromy, LogRoundTrip) {
    Built b = build("quintic", 4);
    RatMat n = unipotent_log(b.md.t[0]);
    EXPECT_EQ(n, b.md.n[0]);
    RatMat e = RatMat::identity(4), term = RatMat::identity(4);
    for (int k = 1; k <= 4; ++k) {
        term = (term * n).scaled(Rat(1, k));
        e = e + term;
    }
    EXPECT_EQ(e, b.md.t[0]);
}

TEST(Monodromy, Errors) {
    RatMat two = RatMat::identity(2).scaled(2);
    EXPECT_EQ(error_code([&] { unipotent_log(two); }), "periods/NotUnipotent");
    EXPECT_EQ(error_code([&] { weight_filtration(RatMat::identity(2), 1); }), "periods/NotNilpotent");
    Built b = build("quintic", 4);
    RatMat id = RatMat::identity(4);
    EXPECT_EQ(error_code([&] { monodromy_data(b.pv, 1, &id); }), "periods/NotSymplectic");
}

TEST(Monodromy, CommutingLogsOnMultiParameterCharts) {
    for (const auto& name : {"p4xp4", "p11222", "p11226"}) {
        Built b = build(name);
        ASSERT_EQ(b.md.n.size(), 2u);
        EXPECT_EQ(b.md.n[0] * b.md.n[1], b.md.n[1] * b.md.n[0]) << name;
        for (const auto& t : b.md.t) EXPECT_TRUE(is_symplectic(t, standard_sigma(t.rows()))) << name;
    }
}

TEST(Monodromy, K3LogsCommute) {
    const auto& m = model("k3-six-lines");
    const NilpotentAlgebra& alg = *m.algebra;
    CohomologySeries cs = frobenius_cohomology(m.fixture.system, m.chart.chart, alg, m.fixture.truncation(),
                                               FrobeniusOptions{0, false});
    PeriodVector pv = period_vector_in_basis(cs.ws, RatMat::identity(alg.dim()), alg.labels());
    MonodromyData md = monodromy_data(pv, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        RatMat u = md.t[i] - RatMat::identity(alg.dim());
        EXPECT_TRUE(power(u, 3).is_zero());
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(md.n[i] * md.n[j], md.n[j] * md.n[i]);
    }
}

TEST(Monodromy, MaximalUnipotencyForPositiveCombinations) {
    for (const auto& name : {"p4xp4", "p11222", "p11226"}) {
        Built b = build(name);
        for (auto [l1, l2] : {std::pair{1, 1}, std::pair{2, 3}, std::pair{5, 1}}) {
            RatMat n = b.md.n[0].scaled(l1) + b.md.n[1].scaled(l2);
            EXPECT_FALSE(power(n, 3).is_zero()) << name;
            EXPECT_TRUE(power(n, 4).is_zero()) << name;
        }
    }
}

TEST(WeightFiltration, QuinticLcslPattern) {
    Built b = build("quintic", 4);
    WeightFiltration wf = weight_filtration(b.md.n[0], 3);
    EXPECT_EQ(wf.dims, (std::vector<std::size_t>{1, 1, 2, 2, 3, 3, 4}));
    EXPECT_TRUE(wf.lcsl);
}

TEST(WeightFiltration, ZeroIsNotLcsl) {
    WeightFiltration wf = weight_filtration(RatMat(4, 4), 3);
    EXPECT_FALSE(wf.lcsl);
    EXPECT_EQ(wf.dims.back(), 4u);
}

TEST(WeightFiltration, IndependentOfPositiveLambda) {
    Built b = build("p4xp4");
    WeightFiltration a = weight_filtration(b.md.n[0] + b.md.n[1].scaled(Rat(1, 3)), 3);
    WeightFiltration c = weight_filtration(b.md.n[0].scaled(7) + b.md.n[1].scaled(Rat(5, 2)), 3);
    EXPECT_TRUE(a.lcsl);
    EXPECT_TRUE(same_filtration(a, c));
    EXPECT_EQ(a.dims, (std::vector<std::size_t>{1, 1, 3, 3, 5, 5, 6}));
}

TEST(MirrorIdentity, HoldsOnCorpusCharts) {
    for (const auto& name : kPeriodFixtures) {
        Built b = build(name);
        for (const auto& c : verify_mirror_isomorphism(b.md, b.basis)) {
            EXPECT_TRUE(c.pass) << name << " k=" << c.k;
            EXPECT_TRUE(c.exp_agrees) << name << " k=" << c.k;
            EXPECT_TRUE(c.residual.is_zero()) << name;
        }
    }
}

TEST(MirrorIdentity, ToddOneControlFails) {
    Built b = build("quintic", 4);
    const auto& r = *model("quintic").ring;
    SymplecticBasis control = SymplecticBasis::build(r.algebra, r.c2, std::nullopt, false);
    auto checks = verify_mirror_isomorphism(b.md, control);
    ASSERT_EQ(checks.size(), 1u);
    EXPECT_FALSE(checks[0].pass);
    EXPECT_FALSE(checks[0].residual.is_zero());
}

TEST(MirrorMap, LeadingTermIsLog) {
    for (const auto& name : kPeriodFixtures) {
        Built b = build(name);
        const std::size_t s = b.md.t.size();
        MirrorMap mm = mirror_map(b.pv, s);
        for (std::size_t k = 0; k < s; ++k) {
            Exponent zero(s, 0);
            EXPECT_EQ(mm.t[k].coefficient(zero).coefficient_of(sym::L(k), 1), Poly(1)) << name;
            for (const auto& e : mm.t[k].support())
                if (e != zero) EXPECT_FALSE(mm.t[k].coefficient(e).depends_on(sym::L(k))) << name;
        }
    }
}

TEST(MirrorMap, QuinticAgainstReversionOracle) {
    Built b = build("quintic", 4);
    MirrorMap mm = mirror_map(b.pv, 1);
    std::vector<Rat> a(5, Rat(0));
    for (int n = 0; n <= 4; ++n) a[n] = mm.q_of_x[0].coefficient({n});
    std::vector<Rat> x = revert(a, 4);
    auto lib = invert_mirror_map(mm);
    for (int n = 1; n <= 4; ++n) EXPECT_EQ(lib[0].coefficient({n}), x[n]) << n;
    EXPECT_EQ(x[1], 1);
    EXPECT_EQ(x[2], -770);
    EXPECT_EQ(x[3], 171525);
    EXPECT_EQ(x[4], -81623000);
}

TEST(MirrorMap, WeierstrassAndLambdaValues) {
    Built w = build("weierstrass", 3);
    auto xw = invert_mirror_map(mirror_map(w.pv, 1));
    EXPECT_EQ(xw[0].coefficient({2}), -312);
    EXPECT_EQ(xw[0].coefficient({3}), 87084);
    Built l = build("elliptic-lambda", 3);
    auto xl = invert_mirror_map(mirror_map(l.pv, 1));
    EXPECT_EQ(xl[0].coefficient({2}), Rat(-1, 2));
    EXPECT_EQ(xl[0].coefficient({3}), Rat(11, 64));
}

TEST(MirrorMap, RoundTripOnCorpus) {
    for (const auto& name : kPeriodFixtures) {
        Built b = build(name, 3);
        MirrorMap mm = mirror_map(b.pv, b.md.t.size());
        EXPECT_TRUE(mirror_round_trip(mm, invert_mirror_map(mm))) << name;
    }
}

TEST(MirrorMap, PowerSeriesIdentities) {
    Truncation t = Truncation::total_degree(5);
    PowerSeries x = PowerSeries::variable(1, t, 0);
    PowerSeries one_minus = PowerSeries::variable(1, t, 0).scaled(-1);
    one_minus.terms[{0}] = 1;
    PowerSeries geo = one_minus.inverse();
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(geo.coefficient({n}), 1);
    PowerSeries e = x.exp();
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(e.coefficient({n}), Rat(1, factorial(n)));
}

TEST(CentralCharge, PointClassAndLinearity) {
    Built b = build("quintic", 3);
    const auto& alg = b.basis.ring;
    LogSeries vol = central_charge(alg.basis(alg.top_class()), b.w, b.basis);
    EXPECT_TRUE((vol - b.pv.components[0]).is_zero());
    EXPECT_TRUE(central_charge(alg.zero(), b.w, b.basis).is_zero());
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-6, 6);
    for (int trial = 0; trial < 4; ++trial) {
        NilpotentAlgebra::Elem e = alg.zero(), f = alg.zero();
        for (std::size_t i = 0; i < alg.dim(); ++i) {
            e[i] = Rat(d(rng), 1 + trial);
            f[i] = Rat(d(rng), 3);
        }
        LogSeries lhs = central_charge(alg.add(e, f), b.w, b.basis);
        LogSeries rhs = central_charge(e, b.w, b.basis) + central_charge(f, b.w, b.basis);
        EXPECT_TRUE((lhs - rhs).is_zero());
    }
}
