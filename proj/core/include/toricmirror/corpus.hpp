#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toricmirror/gkz.hpp"
#include "toricmirror/io.hpp"
#include "toricmirror/periods.hpp"
#include "toricmirror/polytope.hpp"
#include "toricmirror/toricring.hpp"
#include "toricmirror/triangulation.hpp"

namespace toricmirror {

/** Where the cohomology ring of a fixture comes from. */
enum class RingSource { Toric, Curve, Surface, None };

struct Fixture {
    std::string name;
    std::string description;
    /** Delta* of a hypersurface fixture. */
    std::optional<LatticePolytope> delta_star;
    /** Dual nef partition of a complete-intersection fixture. */
    std::optional<NefDual> nef;
    PointConfiguration config;
    GkzSystem system;
    /** h11, h21 of the Calabi-Yau, used by the toric ring and reported. */
    std::optional<HodgeInput> hodge;
    /** Chart basis to use instead of the chamber generators. */
    std::vector<IntVec> chart_override;
    /** Differential operators quoted with the example, in chart variables. */
    std::vector<ThetaOperator> operators;
    RingSource ring_source = RingSource::None;
    RatVec curve_degrees;
    /** Default truncation: total degree, or a per-variable box when `box` is set. */
    int order = 3;
    bool box = false;
    /** Whether the regular triangulations are expected to be enumerated in reports. */
    bool has_gkz = true;

    Truncation truncation(int order_override = 0) const;
};

/** Names of every fixture in the corpus, in a fixed order. */
std::vector<std::string> fixture_names();

/** Throws Error(cli, UnknownFixture). */
Fixture load_fixture(const std::string& name);

/**
 * Fixture described by a pipeline document.  Recognised keys: "fixture"
 * (corpus name), "delta_star" or "delta" (polytope), "config", "beta",
 * "hodge", "order", "box", "chart_override", "ring" and "curve_degrees".
 * Values that are strings are read as JSON files relative to `base`.  Every
 * input is parsed before anything is computed; errors are Error(cli, ...).
 */
Fixture fixture_from_json(const Json& j, const std::filesystem::path& base = ".");

struct ChartChoice {
    SecondaryFan fan;
    std::size_t cone = 0;
    ChartBasis chart;
    std::size_t maximal_count = 0;
};

/** The overridden chart when one is configured, else the first maximal unimodular chamber. */
ChartChoice choose_chart(const Fixture& f, const EnumerationOptions& opt = {});

struct FixtureModel {
    Fixture fixture;
    ChartChoice chart;
    RatVec shift;
    std::optional<CohomologyRing> ring;
    std::optional<NilpotentAlgebra> algebra;
};

FixtureModel build_model(const Fixture& f, const EnumerationOptions& opt = {});

/** Computed artifacts of a fixture as JSON; order 0 uses the fixture default. */
Json fixture_report(const FixtureModel& m, int order = 0);

/** Paths of the boolean checks in a report that failed. */
std::vector<std::string> report_failures(const Json& report);

/** Short human-readable summary of a report. */
std::string report_summary(const Json& report);

struct GoldenDiff {
    std::string path;
    std::string expected;
    std::string actual;
};

/** Every leaf of `golden` must be present in `computed` with the same value; arrays match element-wise. */
std::vector<GoldenDiff> compare_golden(const Json& golden, const Json& computed, const std::string& prefix = "");

}  // namespace toricmirror
