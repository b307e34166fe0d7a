#include <set>

#include "support.hpp"
#include "toricmirror/linalg.hpp"

using namespace toricmirror;
using namespace toricmirror::testing;

namespace {

PointConfiguration square() {
    return PointConfiguration::generic({iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1}), iv({1, 1, 1})}, {0});
}

PointConfiguration lifted_plane(const std::vector<std::pair<int, int>>& pts) {
    std::vector<IntVec> cols;
    for (auto [x, y] : pts) cols.push_back(iv({1, x, y}));
    return PointConfiguration::generic(cols, {0});
}

/** Outer triangle 0,1,2 with a smaller inner triangle 3,4,5, vertex 3 nearest 0. */
PointConfiguration mother_of_all_examples() {
    return PointConfiguration::generic(
        {iv({4, 0, 0}), iv({0, 4, 0}), iv({0, 0, 4}), iv({2, 1, 1}), iv({1, 2, 1}), iv({1, 1, 2})}, {0});
}

}  // namespace

TEST(Volume, Examples) {
    auto c = lifted_plane({{0, 0}, {1, 0}, {0, 1}, {1, 2}});
    EXPECT_EQ(normalized_volume(c, {0, 1, 2}), 1);
    EXPECT_EQ(normalized_volume(c, {0, 1, 3}), 2);
    PointConfiguration q = build_hypersurface_config(quintic_star());
    EXPECT_EQ(normalized_volume(q, {0, 1, 2, 3, 4}), 1);
    EXPECT_EQ(normalized_volume(c, {0, 1, 1}), 0);
}

TEST(Volume, ConservedAcrossTriangulations) {
    for (const auto& name : {"square-toy", "p4xp4", "k3-six-lines"}) {
        const auto& m = model(name);
        std::set<Int> totals;
        for (const auto& cone : m.chart.fan.cones) totals.insert(total_volume(m.fixture.config, cone.triangulation));
        EXPECT_EQ(totals.size(), 1u) << name;
    }
}

TEST(Regularity, SquareTriangulations) {
    PointConfiguration c = square();
    for (const auto& t : {Triangulation::canonical({{0, 1, 3}, {0, 2, 3}}), Triangulation::canonical({{0, 1, 2}, {1, 2, 3}})}) {
        validate_triangulation(c, t);
        RegularityCertificate r = is_regular(c, t);
        EXPECT_TRUE(r.regular);
        EXPECT_TRUE(check_regularity_certificate(c, t, r));
        EXPECT_EQ(lower_hull_triangulation(c, r.heights), t);
    }
    EXPECT_EQ(lower_hull_triangulation(c, rv({0, 0, 0, 1})), Triangulation::canonical({{0, 1, 2}, {1, 2, 3}}));
}

TEST(Regularity, SmallPlanarConfigurationsAreAllRegular) {
    std::vector<PointConfiguration> cfgs{
        lifted_plane({{0, 0}, {2, 0}, {0, 2}, {1, 1}, {2, 2}}),
        lifted_plane({{0, 0}, {2, 0}, {3, 1}, {1, 3}, {-1, 1}}),
        lifted_plane({{0, 0}, {3, 0}, {0, 3}, {1, 1}}),
        lifted_plane({{0, 0}, {2, 0}, {0, 2}, {1, 0}, {0, 1}}),
    };
    for (const auto& c : cfgs) {
        EnumerationOptions all;
        all.regular_only = false;
        auto every = enumerate_regular_triangulations(c, all);
        auto regular = enumerate_regular_triangulations(c);
        EXPECT_EQ(every.size(), regular.size());
        for (const auto& rt : every) EXPECT_TRUE(is_regular(c, rt.triangulation).regular);
    }
}

TEST(Regularity, ConvexPentagonHasFiveTriangulations) {
    auto c = lifted_plane({{0, 0}, {2, 0}, {3, 1}, {1, 3}, {-1, 1}});
    EXPECT_EQ(enumerate_regular_triangulations(c).size(), 5u);
}

TEST(Regularity, TwistedTriangulationIsNotRegular) {
    PointConfiguration c = mother_of_all_examples();
    Triangulation twisted = Triangulation::canonical(
        {{0, 1, 4}, {0, 3, 4}, {1, 2, 5}, {1, 4, 5}, {0, 2, 3}, {2, 3, 5}, {3, 4, 5}});
    validate_triangulation(c, twisted);
    RegularityCertificate r = is_regular(c, twisted);
    EXPECT_FALSE(r.regular);
    EXPECT_TRUE(check_regularity_certificate(c, twisted, r));
    Rat total = 0;
    for (const auto& y : r.dual) {
        EXPECT_GE(y, 0);
        total += y;
    }
    EXPECT_EQ(total, 1);
    // The unfiltered flip graph reaches it; the regular enumeration does not.
    EnumerationOptions all;
    all.regular_only = false;
    auto every = enumerate_regular_triangulations(c, all);
    auto regular = enumerate_regular_triangulations(c);
    EXPECT_LT(regular.size(), every.size());
    bool found = false;
    for (const auto& t : regular) found |= t.triangulation == twisted;
    EXPECT_FALSE(found);
}

TEST(Regularity, InvalidTriangulationRejected) {
    EXPECT_EQ(error_code([] { validate_triangulation(square(), Triangulation::canonical({{0, 1, 3}})); }),
              "triangulation/InvalidTriangulation");
    EXPECT_EQ(error_code([] {
                  validate_triangulation(square(), Triangulation::canonical({{0, 1, 3}, {0, 2, 3}, {0, 1, 2}}));
              }),
              "triangulation/InvalidTriangulation");
}

TEST(Enumerate, Counts) {
    EXPECT_EQ(enumerate_regular_triangulations(square()).size(), 2u);
    EXPECT_EQ(model("p4xp4").chart.fan.cones.size(), 3u);
    EXPECT_EQ(model("k3-six-lines").chart.fan.cones.size(), 108u);
    EXPECT_EQ(model("quintic").chart.fan.cones.size(), 2u);
}

TEST(Enumerate, CanonicalOrderAndDeterminism) {
    const auto& cfg = model("p4xp4").fixture.config;
    auto a = enumerate_regular_triangulations(cfg);
    auto b = enumerate_regular_triangulations(cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].triangulation, b[i].triangulation);
        if (i > 0) {
            EXPECT_TRUE(a[i - 1].triangulation < a[i].triangulation);
        }
        EXPECT_TRUE(check_regularity_certificate(cfg, a[i].triangulation, a[i].certificate));
    }
}

TEST(Enumerate, ScaleGuard) {
    EnumerationOptions opt;
    opt.max_columns = 3;
    EXPECT_EQ(error_code([&] { enumerate_regular_triangulations(square(), opt); }),
              "triangulation/ScaleGuardExceeded");
}

TEST(Gkz, SquareVectors) {
    PointConfiguration c = square();
    EXPECT_EQ(gkz_vector(c, Triangulation::canonical({{0, 1, 3}, {0, 2, 3}})), iv({2, 1, 1, 2}));
    EXPECT_EQ(gkz_vector(c, Triangulation::canonical({{0, 1, 2}, {1, 2, 3}})), iv({1, 2, 2, 1}));
    auto simplex = lifted_plane({{0, 0}, {1, 0}, {0, 1}});
    EXPECT_EQ(gkz_vector(simplex, Triangulation::canonical({{0, 1, 2}})), iv({1, 1, 1}));
}

TEST(Gkz, VectorSumAndKernelDifferences) {
    for (const auto& name : {"square-toy", "p4xp4", "k3-six-lines"}) {
        const auto& m = model(name);
        const auto& cfg = m.fixture.config;
        IntMat a = cfg.matrix();
        const auto& cones = m.chart.fan.cones;
        std::set<IntVec> distinct;
        for (const auto& cone : cones) {
            IntVec v = gkz_vector(cfg, cone.triangulation);
            Int sum = 0;
            for (const auto& x : v) sum += x;
            EXPECT_EQ(sum, Int(static_cast<unsigned long>(cfg.ambient_rank)) * total_volume(cfg, cone.triangulation));
            IntVec d(v.size());
            for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i] - cones[0].gkz[i];
            for (std::size_t i = 0; i < a.rows(); ++i) EXPECT_EQ(dot(a.row(i), d), 0);
            distinct.insert(v);
        }
        EXPECT_EQ(distinct.size(), cones.size()) << name;
    }
}

TEST(SecondaryPolytope, Dimensions) {
    auto dim_of = [](const std::vector<RatVec>& vs) {
        if (vs.size() < 2) return std::size_t(0);
        RatMat d(vs.size() - 1, vs[0].size());
        for (std::size_t i = 1; i < vs.size(); ++i)
            for (std::size_t j = 0; j < vs[0].size(); ++j) d(i - 1, j) = vs[i][j] - vs[0][j];
        return rank(d);
    };
    auto sq = secondary_fan(kernel_lattice(square()));
    EXPECT_EQ(sq.polytope_vertices().size(), 2u);
    EXPECT_EQ(dim_of(sq.polytope_vertices()), 1u);
    auto p = model("p4xp4").chart.fan.polytope_vertices();
    EXPECT_EQ(p.size(), 3u);
    EXPECT_EQ(dim_of(p), 2u);
    EXPECT_EQ(dim_of(model("quintic").chart.fan.polytope_vertices()), 1u);
    auto simplex = secondary_fan(kernel_lattice(PointConfiguration::generic({iv({1, 0, 0}), iv({1, 1, 0}), iv({1, 0, 1})}, {0})));
    EXPECT_EQ(simplex.polytope_vertices().size(), 1u);
}

TEST(Maximal, Examples) {
    const auto& q = model("quintic");
    std::size_t maximal_q = 0;
    for (const auto& c : q.chart.fan.cones) maximal_q += is_maximal(q.fixture.config, c.triangulation);
    EXPECT_EQ(maximal_q, 1u);
    EXPECT_TRUE(is_maximal(q.fixture.config, q.chart.fan.cones[q.chart.cone].triangulation));
    EXPECT_FALSE(is_maximal(square(), Triangulation::canonical({{0, 1, 2}, {1, 2, 3}})));
    const auto& p = model("p4xp4");
    std::size_t maximal = 0;
    for (const auto& c : p.chart.fan.cones) maximal += is_maximal(p.fixture.config, c.triangulation);
    EXPECT_EQ(maximal, 1u);
}

TEST(Chart, QuinticBasisAndMonomial) {
    const auto& ch = model("quintic").chart.chart;
    ASSERT_EQ(ch.basis.size(), 1u);
    EXPECT_EQ(ch.basis[0], iv({-5, 1, 1, 1, 1, 1}));
    EXPECT_EQ(ch.signs[0], -1);
    EXPECT_EQ(chart_monomial(ch.basis[0], ch.signs[0]), "-a1*a2*a3*a4*a5/a0^5");
}

TEST(Chart, WeierstrassExponents) {
    const auto& ch = model("weierstrass").chart.chart;
    ASSERT_EQ(ch.basis.size(), 1u);
    std::multiset<long> exps;
    for (const auto& x : ch.basis[0]) exps.insert(x.get_si());
    EXPECT_EQ(exps, (std::multiset<long>{-6, 1, 2, 3}));
    EXPECT_EQ(ch.basis[0][0], -6);
    EXPECT_EQ(ch.signs[0], 1);
}

TEST(Chart, SquareBasis) {
    auto fan = secondary_fan(kernel_lattice(square()));
    std::set<IntVec> got;
    for (std::size_t i = 0; i < fan.cones.size(); ++i) got.insert(chart_basis(fan, i).basis[0]);
    EXPECT_EQ(got, (std::set<IntVec>{iv({1, -1, -1, 1}), iv({-1, 1, 1, -1})}));
}

TEST(Chart, DualityAndConeMembership) {
    for (const auto& name : {"quintic", "p4xp4", "p11222", "p11226"}) {
        const auto& m = model(name);
        const auto& ch = m.chart.chart;
        const auto& gale = m.chart.fan.gale;
        const auto& cone = m.chart.fan.cones[m.chart.cone];
        std::vector<RatVec> kappa;
        for (const auto& l : ch.basis) {
            auto k = coordinates_in_basis(gale.kernel_basis, l);
            ASSERT_TRUE(k);
            kappa.push_back(*k);
        }
        for (std::size_t i = 0; i < kappa.size(); ++i) {
            for (std::size_t j = 0; j < kappa.size(); ++j) EXPECT_EQ(dot(ch.dual_basis[i], kappa[j]), i == j ? 1 : 0);
            for (const auto& ray : cone.rays) EXPECT_GE(dot(to_rat(ray), kappa[i]), 0);
        }
    }
}

TEST(Chart, OverrideMustBeLatticeBasis) {
    auto fan = secondary_fan(kernel_lattice(square()));
    EXPECT_EQ(error_code([&] { chart_basis_override(fan, 0, {iv({2, -2, -2, 2})}); }),
              "triangulation/InvalidOverride");
}

TEST(Flip, SquareNeighbour) {
    PointConfiguration c = square();
    auto n = flip_neighbours(c, Triangulation::canonical({{0, 1, 3}, {0, 2, 3}}));
    ASSERT_EQ(n.size(), 1u);
    EXPECT_EQ(n[0], Triangulation::canonical({{0, 1, 2}, {1, 2, 3}}));
}
