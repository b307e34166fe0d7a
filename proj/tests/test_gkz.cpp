#include "support.hpp"

using namespace toricmirror;
using namespace toricmirror::testing;

namespace {

Rat central_binomial_ratio(int n) {
    // Gamma(n + 1/2) / (Gamma(1/2) Gamma(n + 1)) = binom(2n, n) / 4^n.
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), 2 * n, n);
    Int four = 1;
    for (int i = 0; i < n; ++i) four *= 4;
    return ratio(b, four);
}

std::vector<std::string> numeric_labels(std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) l.push_back(std::to_string(i));
    return l;
}

LogSeries w0_of(const std::string& name, int order = 0) {
    const auto& m = model(name);
    return frobenius_w0(m.fixture.system, m.chart.chart, m.fixture.truncation(order));
}

CohomologySeries cohomology_of(const std::string& name, int order = 0) {
    const auto& m = model(name);
    return frobenius_cohomology(m.fixture.system, m.chart.chart, *m.algebra, m.fixture.truncation(order));
}

LogSeries::Coeff as_poly(const NilpotentAlgebra::Elem& e) {
    LogSeries::Coeff c;
    for (const auto& x : e) c.push_back(Poly(x));
    return c;
}

const std::vector<std::string> kRingFixtures{"quintic", "weierstrass", "elliptic-lambda", "k3-six-lines",
                                             "p4xp4",   "p11222",      "p11112",          "p11114",
                                             "p11226"};

}  // namespace

TEST(Operators, QuinticBoxAndEuler) {
    const auto& m = model("quintic");
    GkzOperators ops = gkz_operators(m.fixture.system);
    ASSERT_EQ(ops.boxes.size(), 1u);
    EXPECT_EQ(ops.boxes[0].str(numeric_labels(6)), "d1*d2*d3*d4*d5 - d0^5");
    ASSERT_EQ(ops.euler.size(), 5u);
    EXPECT_EQ(ops.euler[0].row, RatVec(6, Rat(1)));
    EXPECT_EQ(ops.euler[0].beta, -1);
}

TEST(Operators, StandardExponents) {
    EXPECT_EQ(model("quintic").fixture.system.beta, rv({-1, 0, 0, 0, 0}));
    const RatVec& b = model("p4xp4").fixture.system.beta;
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i], i < 5 ? -1 : 0);
    // The listed K3 columns all start with 1, so half-integer weights on the three origin columns give beta_0 = -3/2.
    EXPECT_EQ(model("k3-six-lines").fixture.system.beta, (RatVec{Rat(-3, 2), Rat(-1, 2), Rat(-1, 2), 0, 0}));
    EXPECT_EQ(error_code([] { GkzSystem::with_beta(model("quintic").fixture.config, rv({-1, 0})); }),
              "gkz/BadExponent");
}

TEST(ExponentShift, OriginSupported) {
    EXPECT_EQ(model("quintic").shift, rv({-1, 0, 0, 0, 0, 0}));
    const auto& p = model("p4xp4");
    for (std::size_t i = 0; i < p.shift.size(); ++i) EXPECT_EQ(p.shift[i], i < 5 ? -1 : 0);
}

TEST(ExponentShift, SolvesSystemOnCorpus) {
    for (const auto& name : fixture_names()) {
        const auto& m = model(name);
        EXPECT_EQ(to_rat(m.fixture.config.matrix()).apply(m.shift), m.fixture.system.beta) << name;
    }
    const auto& k3 = model("k3-six-lines");
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(k3.shift[i], Rat(-1, 2));
}

TEST(ExponentShift, BasicSolutionWhenOriginFails) {
    auto cfg = PointConfiguration::generic({iv({1, 0}), iv({1, 0}), iv({0, 1})}, {0});
    RatVec beta{Rat(1), Rat(0)};
    auto c = exponent_shift(GkzSystem::with_beta(cfg, beta));
    EXPECT_EQ(to_rat(cfg.matrix()).apply(c), beta);
}

TEST(W0, QuinticMatchesFactorialFormula) {
    LogSeries w = w0_of("quintic", 4);
    for (int n = 0; n <= 4; ++n) {
        Int f1 = factorial(n);
        Rat want = ratio(factorial(5 * n), f1 * f1 * f1 * f1 * f1);
        EXPECT_EQ(w.coefficient({n}), Poly(want)) << n;
    }
    EXPECT_EQ(w.coefficient({1}), Poly(Rat(120)));
    EXPECT_EQ(w.coefficient({2}), Poly(Rat(113400)));
}

TEST(W0, WeierstrassMatchesFactorialFormula) {
    LogSeries w = w0_of("weierstrass", 3);
    for (int n = 0; n <= 3; ++n) {
        Rat want = ratio(factorial(6 * n), factorial(3 * n) * factorial(2 * n) * factorial(n));
        EXPECT_EQ(w.coefficient({n}), Poly(want)) << n;
    }
    EXPECT_EQ(w.coefficient({3}), Poly(Rat(4084080)));
}

TEST(W0, EllipticLambda) {
    LogSeries w = w0_of("elliptic-lambda", 8);
    for (int n = 0; n <= 8; ++n) {
        Rat r = central_binomial_ratio(n);
        EXPECT_EQ(w.coefficient({n}), Poly(r * r)) << n;
    }
    EXPECT_EQ(w.coefficient({1}), Poly(Rat(1, 4)));
    EXPECT_EQ(w.coefficient({2}), Poly(Rat(9, 64)));
}

TEST(W0, K3Coefficient) {
    LogSeries w = w0_of("k3-six-lines");
    EXPECT_EQ(w.coefficient({0, 0, 0, 0}), Poly(Rat(1)));
    EXPECT_EQ(w.coefficient({1, 1, 1, 1}), Poly(Rat(1, 8)));
}

TEST(W0, P4xP4ClosedForm) {
    // Complete intersection of five (1,1) divisors: c(n1, n2) = ((n1 + n2)!)^5 / (n1!^5 n2!^5).
    LogSeries w = w0_of("p4xp4", 3);
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; a + b <= 3; ++b) {
            Int s = factorial(a + b), fa = factorial(a), fb = factorial(b);
            Int num = s * s * s * s * s, den = fa * fa * fa * fa * fa * fb * fb * fb * fb * fb;
            EXPECT_EQ(w.coefficient({a, b}), Poly(ratio(num, den))) << a << "," << b;
        }
}

TEST(W0, NonMaximalChartRefused) {
    const auto& m = model("p4xp4");
    for (std::size_t i = 0; i < m.chart.fan.cones.size(); ++i) {
        if (i == m.chart.cone) continue;
        ChartBasis ch;
        try {
            ch = chart_basis(m.chart.fan, i);
        } catch (const Error&) {
            continue;
        }
        EXPECT_EQ(error_code([&] { frobenius_w0(m.fixture.system, ch, Truncation::total_degree(3)); }),
                  "gkz/NonMaximalChart");
    }
}

TEST(GammaExpansion, HarmonicCancellation) {
    auto one = gamma_log_expansion(Rat(1), 3);
    auto two = gamma_log_expansion(Rat(2), 1);
    EXPECT_EQ(one[1].gamma, -1);
    EXPECT_EQ(one[1].rational, 0);
    // psi(2) - psi(1) = H_1 = 1 and gamma cancels.
    EXPECT_EQ(two[1].rational - one[1].rational, 1);
    EXPECT_EQ(two[1].gamma - one[1].gamma, 0);
    // psi''(1) / 3! = -2 zeta(3) / 6.
    EXPECT_EQ(one[3].zeta3, Rat(-1, 3));
    EXPECT_EQ(one[2].zeta2, Rat(1, 2));
}

TEST(GammaExpansion, HalfIntegerAndGuards) {
    auto h = gamma_log_expansion(Rat(1, 2), 1);
    EXPECT_EQ(h[1].gamma, -1);
    EXPECT_EQ(h[1].ln2, -2);
    EXPECT_EQ(error_code([] { gamma_log_expansion(Rat(1), 4); }), "gkz/DepthExceeded");
    EXPECT_EQ(error_code([] { gamma_log_expansion(Rat(1, 3), 1); }), "gkz/UnsupportedShift");
}

TEST(Cohomology, DegreeZeroPartIsW0) {
    for (const auto& name : {"quintic", "p4xp4", "weierstrass"}) {
        CohomologySeries cs = cohomology_of(name);
        ASSERT_TRUE(cs.w0);
        LogSeries w = w0_of(name);
        EXPECT_TRUE((cs.w0->component(0) - w).is_zero()) << name;
        EXPECT_TRUE((cs.ws.component(0) - w).is_zero()) << name;
    }
}

TEST(Cohomology, SingleLogComponentStartsWithLog) {
    CohomologySeries cs = cohomology_of("quintic");
    // The normalized series starts 1 + J log x in cohomology.
    EXPECT_EQ(cs.w0->coefficient({0}, 0), Poly(1));
    EXPECT_EQ(cs.w0->coefficient({0}, 1), Poly::var(sym::L(0)));
}

TEST(Cohomology, PairingMismatch) {
    const auto& m = model("quintic");
    NilpotentAlgebra two = NilpotentAlgebra::free_truncated(2, 3);
    EXPECT_EQ(error_code([&] {
                  frobenius_cohomology(m.fixture.system, m.chart.chart, two, Truncation::total_degree(2));
              }),
              "gkz/PairingMismatch");
}

TEST(Cohomology, GammaCancelsAndSupportIsNonnegative) {
    for (const auto& name : kRingFixtures) {
        CohomologySeries cs = cohomology_of(name);
        EXPECT_FALSE(cs.ws.mentions(sym::GAMMA)) << name;
        if (cs.w0) EXPECT_FALSE(cs.w0->mentions(sym::GAMMA)) << name;
        const LogSeries& w = cs.w0 ? *cs.w0 : cs.ws;
        for (const auto& e : w.support())
            for (int x : e) EXPECT_GE(x, 0) << name;
        EXPECT_GT(cs.support_checked + cs.support_singular, 0u) << name;
    }
}

TEST(Cohomology, LogShiftEqualsExpJ) {
    for (const auto& name : {"quintic", "p4xp4", "elliptic-lambda"}) {
        const auto& m = model(name);
        const NilpotentAlgebra& alg = *m.algebra;
        CohomologySeries cs = cohomology_of(name);
        const LogSeries& w = cs.w0 ? *cs.w0 : cs.ws;
        for (std::size_t k = 0; k < alg.generators(); ++k) {
            LogSeries::Coeff e = as_poly(alg.exp(alg.generator(k)));
            LogSeries expected(w.nvars(), w.dim(), w.truncation(), w.offsets());
            for (const auto& [x, c] : w.terms()) expected.add(x, alg.mul(e, c));
            EXPECT_TRUE((w.shift_log(k, 1) - expected).is_zero()) << name << " k=" << k;
        }
    }
}

TEST(Annihilation, LambdaOperatorToOrderEight) {
    const auto& m = model("elliptic-lambda");
    LogSeries w = w0_of("elliptic-lambda", 8);
    EXPECT_TRUE(annihilation_check(m.fixture.operators, w).all_zero());
}

TEST(Annihilation, K3NineOperators) {
    const auto& m = model("k3-six-lines");
    ASSERT_EQ(m.fixture.operators.size(), 9u);
    LogSeries w = w0_of("k3-six-lines");
    AnnihilationReport r = annihilation_check(m.fixture.operators, w);
    ASSERT_EQ(r.results.size(), 9u);
    for (const auto& res : r.results) EXPECT_TRUE(res.zero) << res.name;
}

TEST(Annihilation, QuinticBoxAndEulerToOrderFive) {
    const auto& m = model("quintic");
    Truncation t = Truncation::total_degree(5);
    LogSeries w = frobenius_w0(m.fixture.system, m.chart.chart, t);
    EXPECT_TRUE(annihilation_check(chart_operators(m.fixture.system, m.chart.chart, m.shift), w).all_zero());
    EXPECT_TRUE(annihilation_check(pushforward_euler(m.fixture.system, m.chart.chart, m.shift), w).all_zero());
    std::size_t checked = 0;
    EXPECT_EQ(a_space_residuals(m.fixture.system, m.chart.chart, gkz_operators(m.fixture.system), t, &checked), 0u);
    EXPECT_GT(checked, 0u);
}

TEST(Annihilation, PerturbedSeriesIsDetected) {
    const auto& m = model("quintic");
    LogSeries w = w0_of("quintic", 5);
    w.add({2}, 0, Poly(1));
    AnnihilationReport r = annihilation_check(chart_operators(m.fixture.system, m.chart.chart, m.shift), w);
    EXPECT_FALSE(r.all_zero());
    ASSERT_FALSE(r.results.empty());
    ASSERT_TRUE(r.results[0].first_nonzero);
    EXPECT_LE(*r.results[0].first_nonzero, 3);
}

TEST(Annihilation, CorpusChartOperators) {
    for (const auto& name : kRingFixtures) {
        const auto& m = model(name);
        LogSeries w = w0_of(name);
        EXPECT_TRUE(annihilation_check(chart_operators(m.fixture.system, m.chart.chart, m.shift), w).all_zero())
            << name;
        EXPECT_TRUE(annihilation_check(pushforward_euler(m.fixture.system, m.chart.chart, m.shift), w).all_zero())
            << name;
    }
}

TEST(Uniqueness, OneHolomorphicSolutionAtMaximalCharts) {
    for (const auto& name : {"quintic", "weierstrass", "p4xp4", "p11222"}) {
        const auto& m = model(name);
        auto ops = chart_operators(m.fixture.system, m.chart.chart, m.shift);
        EXPECT_EQ(holomorphic_solution_dimension(ops, m.chart.chart.basis.size(), m.fixture.truncation(4)), 1u)
            << name;
    }
}

TEST(SurfaceForm, K3IntersectionFormFromOperators) {
    const auto& m = model("k3-six-lines");
    auto eta = infer_surface_form(m.fixture.operators, 4);
    ASSERT_EQ(eta.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(eta[i][j], eta[j][i]);
    Rat total = 0;
    for (const auto& row : eta)
        for (const auto& x : row) total += x;
    EXPECT_GT(total, 0);
}
