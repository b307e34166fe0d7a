#include <set>

#include "support.hpp"
#include "toricmirror/cone.hpp"

using namespace toricmirror;
using namespace toricmirror::testing;

namespace {

/** Lattice points by scanning the bounding box against the vertex-derived facet inequalities. */
std::size_t box_scan_count(const LatticePolytope& p) {
    const std::size_t n = p.ambient_rank();
    std::vector<long> lo(n, 0), hi(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = hi[i] = p.vertices()[0][i].get_si();
        for (const auto& v : p.vertices()) {
            lo[i] = std::min(lo[i], v[i].get_si());
            hi[i] = std::max(hi[i], v[i].get_si());
        }
    }
    std::vector<Halfspace> hs = hull_facets(p.vertices());
    std::size_t count = 0;
    IntVec x(n);
    std::vector<long> cur = lo;
    for (;;) {
        for (std::size_t i = 0; i < n; ++i) x[i] = cur[i];
        bool in = true;
        for (const auto& h : hs)
            if (h.eval(x) < 0) {
                in = false;
                break;
            }
        if (in) ++count;
        std::size_t k = 0;
        while (k < n && cur[k] == hi[k]) cur[k++] = lo[k];
        if (k == n) break;
        ++cur[k];
    }
    return count;
}

Int binomial(long n, long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::vector<LatticePolytope> corpus_delta_stars() {
    return {quintic_star(), p4_simplex(iv({-1, -2, -2, -2})), p4_simplex(iv({-1, -1, -1, -2})),
            p4_simplex(iv({-1, -1, -1, -4})), p4_simplex(iv({-1, -2, -2, -6}))};
}

}  // namespace

TEST(LatticePoints, SegmentAndTriangle) {
    EXPECT_EQ(LatticePolytope::from_vertices({iv({0}), iv({1})}).lattice_points().size(), 2u);
    auto tri = LatticePolytope::from_vertices({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    EXPECT_EQ(tri.lattice_points().size(), 4u);
    EXPECT_EQ(box_scan_count(tri), 4u);
}

TEST(LatticePoints, QuinticDeltaMatchesMonomialCount) {
    LatticePolytope delta = polar_dual(quintic_star());
    // Lattice points of Delta correspond to degree-5 monomials in 5 variables.
    EXPECT_EQ(Int(static_cast<unsigned long>(delta.lattice_points().size())), binomial(9, 4));
    EXPECT_EQ(delta.lattice_points().size(), 126u);
}

TEST(LatticePoints, SortedAndEqualToBoxScanOnCorpus) {
    for (const auto& ds : corpus_delta_stars()) {
        for (const auto& p : {ds, polar_dual(ds)}) {
            const auto& pts = p.lattice_points();
            EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
            EXPECT_EQ(pts.size(), box_scan_count(p));
        }
    }
}

TEST(PolarDual, TriangleDual) {
    auto tri = LatticePolytope::from_vertices({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    auto dual = polar_dual(tri);
    std::set<IntVec> got(dual.vertices().begin(), dual.vertices().end());
    std::set<IntVec> want{iv({2, -1}), iv({-1, 2}), iv({-1, -1})};
    EXPECT_EQ(got, want);
}

TEST(PolarDual, InvolutionOnCorpus) {
    for (const auto& ds : corpus_delta_stars()) EXPECT_EQ(polar_dual(polar_dual(ds)), ds);
}

TEST(PolarDual, OriginNotInterior) {
    auto p = LatticePolytope::from_vertices({iv({0, 0}), iv({1, 0}), iv({0, 1})});
    EXPECT_EQ(error_code([&] { polar_dual(p); }), "polytope/OriginNotInterior");
}

TEST(PolarDual, FractionalDualCarriesVertices) {
    auto p = LatticePolytope::from_vertices({iv({2, 0}), iv({0, 2}), iv({-2, -2})});
    try {
        polar_dual(p);
        FAIL() << "expected a fractional dual";
    } catch (const NonLatticeDualError& e) {
        EXPECT_EQ(e.code(), "NonLatticeDual");
        ASSERT_FALSE(e.vertices().empty());
        bool fractional = false;
        for (const auto& v : e.vertices()) fractional |= !is_integral(v);
        EXPECT_TRUE(fractional);
    }
}

TEST(Reflexive, Examples) {
    EXPECT_TRUE(is_reflexive(quintic_star()));
    EXPECT_FALSE(is_reflexive(LatticePolytope::from_vertices({iv({2, 0}), iv({0, 2}), iv({-2, -2})})));
    EXPECT_FALSE(is_reflexive(LatticePolytope::from_vertices({iv({1, 0}), iv({0, 1}), iv({1, 1})})));
}

TEST(Reflexive, OriginIsUniqueInteriorPoint) {
    for (const auto& ds : corpus_delta_stars()) {
        for (const auto& p : {ds, polar_dual(ds)}) {
            std::size_t interior = 0;
            for (const auto& x : p.lattice_points()) interior += p.strictly_interior(x);
            EXPECT_EQ(interior, 1u);
            EXPECT_TRUE(p.strictly_interior(IntVec(p.ambient_rank(), Int(0))));
        }
    }
}

TEST(Faces, TriangleEdgesHaveNoInteriorPoints) {
    auto tri = LatticePolytope::from_vertices({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    EXPECT_EQ(tri.faces_of_dim(0).size(), 3u);
    auto edges = tri.faces_of_dim(1);
    EXPECT_EQ(edges.size(), 3u);
    for (auto e : edges) EXPECT_EQ(tri.faces()[e].interior_points, 0u);
}

TEST(Faces, QuinticFacetInteriorPoints) {
    LatticePolytope delta = polar_dual(quintic_star());
    // Interior points of a facet: degree-5 monomials with one exponent 0 and the other four >= 1,
    // i.e. compositions of 5 into 4 positive parts.
    const Int oracle = binomial(4, 3);
    auto facets = delta.faces_of_dim(3);
    ASSERT_EQ(facets.size(), 5u);
    for (auto f : facets) EXPECT_EQ(Int(static_cast<unsigned long>(delta.faces()[f].interior_points)), oracle);
}

TEST(Faces, CubeVerticesPairWithOctahedronFacets) {
    std::vector<IntVec> pts;
    for (int a : {-1, 1})
        for (int b : {-1, 1})
            for (int c : {-1, 1}) pts.push_back(iv({a, b, c}));
    auto cube = LatticePolytope::from_vertices(pts);
    auto faces = paired_face_lattice(cube);
    auto octa = polar_dual(cube);
    std::set<std::size_t> duals;
    for (const auto& f : faces) {
        if (f.dim != 0) continue;
        ASSERT_TRUE(f.dual_face);
        EXPECT_EQ(octa.faces()[*f.dual_face].dim, 2);
        duals.insert(*f.dual_face);
    }
    EXPECT_EQ(duals.size(), 8u);
}

TEST(Faces, PairingReversesDimensionOnCorpus) {
    for (const auto& ds : corpus_delta_stars()) {
        const int n = static_cast<int>(ds.ambient_rank());
        LatticePolytope dual = polar_dual(ds);
        for (const auto& f : paired_face_lattice(ds)) {
            if (f.dim == n) continue;
            ASSERT_TRUE(f.dual_face);
            EXPECT_EQ(f.dim + dual.faces()[*f.dual_face].dim, n - 1);
            EXPECT_LE(f.interior_points, f.lattice_points);
        }
    }
}

TEST(Faces, NonReflexivePairingUnavailable) {
    auto p = LatticePolytope::from_vertices({iv({2, 0}), iv({0, 2}), iv({-2, -2})});
    EXPECT_EQ(error_code([&] { paired_face_lattice(p); }), "polytope/DualUnavailable");
}

TEST(Hodge, QuinticPair) {
    LatticePolytope delta = polar_dual(quintic_star());
    HodgePair h = hodge_numbers_hypersurface(delta);
    EXPECT_EQ(h.h11, 1);
    EXPECT_EQ(h.h21, 101);
    EXPECT_TRUE(h.caveat.empty());
    HodgePair m = hodge_numbers_hypersurface(quintic_star());
    EXPECT_EQ(m.h11, 101);
    EXPECT_EQ(m.h21, 1);
}

TEST(Hodge, QuinticH11TermByTerm) {
    // h11 = l(Delta*) - 5 - sum over facets of l' + sum over codim-2 faces of l' l'.
    LatticePolytope ds = quintic_star();
    auto faces = paired_face_lattice(ds);
    auto dual = polar_dual(ds);
    long facet_sum = 0, pair_sum = 0;
    for (const auto& f : faces) {
        if (f.dim == 3) facet_sum += static_cast<long>(f.interior_points);
        if (f.dim == 2) pair_sum += static_cast<long>(f.interior_points * dual.faces()[*f.dual_face].interior_points);
    }
    EXPECT_EQ(ds.lattice_points().size(), 6u);
    EXPECT_EQ(facet_sum, 0);
    EXPECT_EQ(pair_sum, 0);
    EXPECT_EQ(static_cast<long>(ds.lattice_points().size()) - 5 - facet_sum + pair_sum, 1);
}

TEST(Hodge, MirrorDualityOnCorpus) {
    for (const auto& ds : corpus_delta_stars()) {
        HodgePair a = hodge_numbers_hypersurface(polar_dual(ds));
        HodgePair b = hodge_numbers_hypersurface(ds);
        EXPECT_EQ(a.h11, b.h21);
        EXPECT_EQ(a.h21, b.h11);
    }
}

TEST(Hodge, KnownWeightedProjectiveValues) {
    auto h = [](const IntVec& last) { return hodge_numbers_hypersurface(polar_dual(p4_simplex(last))); };
    HodgePair a = h(iv({-1, -2, -2, -2}));
    EXPECT_EQ(a.h11, 2);
    EXPECT_EQ(a.h21, 86);
    HodgePair b = h(iv({-1, -1, -1, -4}));
    EXPECT_EQ(b.h11, 1);
    EXPECT_EQ(b.h21, 149);
    HodgePair d = h(iv({-1, -2, -2, -6}));
    EXPECT_EQ(d.h11, 2);
    EXPECT_EQ(d.h21, 128);
    HodgePair c = h(iv({-1, -1, -1, -2}));
    EXPECT_EQ(c.h11, 1);
    EXPECT_EQ(c.h21, 103);
}

TEST(Hodge, RankGuards) {
    auto tri = LatticePolytope::from_vertices({iv({1, 0}), iv({0, 1}), iv({-1, -1})});
    EXPECT_EQ(error_code([&] { hodge_numbers_hypersurface(tri); }), "polytope/WrongRank");
    EXPECT_FALSE(hodge_numbers(tri).caveat.empty());
    auto bad = LatticePolytope::from_vertices({iv({2, 0, 0, 0}), iv({0, 2, 0, 0}), iv({0, 0, 2, 0}), iv({0, 0, 0, 2}),
                                               iv({-2, -2, -2, -2})});
    EXPECT_EQ(error_code([&] { hodge_numbers_hypersurface(bad); }), "polytope/NotReflexive");
}

TEST(Minkowski, SquareFromSegments) {
    auto a = LatticePolytope::from_vertices({iv({0, 0}), iv({1, 0})});
    auto b = LatticePolytope::from_vertices({iv({0, 0}), iv({0, 1})});
    auto s = minkowski_sum(a, b);
    EXPECT_EQ(s.vertices().size(), 4u);
    EXPECT_EQ(s.lattice_points().size(), 4u);
}

TEST(NefPartition, TrivialPartitionCollapses) {
    LatticePolytope ds = quintic_star();
    NefPartition np{polar_dual(ds), {{0, 1, 2, 3, 4}}};
    NefDual d = nef_partition_dual(np);
    ASSERT_EQ(d.nabla_parts.size(), 1u);
    EXPECT_EQ(d.nabla, ds);
    EXPECT_EQ(d.nabla_parts[0], ds);
}

TEST(NefPartition, InvalidGroups) {
    LatticePolytope delta = polar_dual(quintic_star());
    EXPECT_EQ(error_code([&] { nef_partition_dual({delta, {{0, 1, 2}, {2, 3, 4}}}); }), "polytope/InvalidPartition");
    EXPECT_EQ(error_code([&] { nef_partition_dual({delta, {{0, 1}, {2, 3}}}); }), "polytope/InvalidPartition");
}

TEST(NefPartition, P4xP4Parts) {
    const auto& f = model("p4xp4").fixture;
    ASSERT_TRUE(f.nef);
    const auto& parts = f.nef->nabla_parts;
    ASSERT_EQ(parts.size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) {
        IntVec a(8, Int(0)), b(8, Int(0));
        for (std::size_t j = 0; j < 4; ++j) {
            a[j] = i < 4 ? Int(j == i) : Int(-1);
            b[4 + j] = i < 4 ? Int(j == i) : Int(-1);
        }
        std::set<IntVec> want{IntVec(8, Int(0)), a, b};
        std::set<IntVec> got(parts[i].vertices().begin(), parts[i].vertices().end());
        EXPECT_EQ(got, want) << "part " << i;
    }
    // Brute-force Minkowski sum of the part point sets.
    std::set<IntVec> sums{IntVec(8, Int(0))};
    for (const auto& part : parts) {
        std::set<IntVec> next;
        for (const auto& s : sums)
            for (const auto& p : part.lattice_points()) {
                IntVec t = s;
                for (std::size_t j = 0; j < 8; ++j) t[j] += p[j];
                next.insert(t);
            }
        sums = std::move(next);
    }
    EXPECT_EQ(f.nef->nabla.lattice_points().size(), sums.size());
}
