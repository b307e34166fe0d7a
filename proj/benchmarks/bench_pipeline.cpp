#include <benchmark/benchmark.h>

#include "toricmirror/corpus.hpp"
#include "toricmirror/linalg.hpp"

using namespace toricmirror;

namespace {

const FixtureModel& cached(const std::string& name) {
    static std::map<std::string, FixtureModel> models;
    auto it = models.find(name);
    if (it == models.end()) it = models.emplace(name, build_model(load_fixture(name))).first;
    return it->second;
}

void BM_LatticePoints(benchmark::State& state) {
    LatticePolytope star = *cached("p11226").fixture.delta_star;
    for (auto _ : state) {
        LatticePolytope delta = polar_dual(star);
        benchmark::DoNotOptimize(delta.lattice_points().size());
    }
}
BENCHMARK(BM_LatticePoints)->Unit(benchmark::kMillisecond);

void BM_HodgeNumbers(benchmark::State& state) {
    LatticePolytope delta = polar_dual(*cached("quintic").fixture.delta_star);
    for (auto _ : state) benchmark::DoNotOptimize(hodge_numbers_hypersurface(delta).h21);
}
BENCHMARK(BM_HodgeNumbers)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state) {
    IntMat a = cached("k3-six-lines").fixture.config.matrix();
    for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a).rank);
}
BENCHMARK(BM_SmithNormalForm);

void BM_EnumerateTriangulations(benchmark::State& state, const char* name) {
    const PointConfiguration& cfg = cached(name).fixture.config;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_regular_triangulations(cfg).size());
}
BENCHMARK_CAPTURE(BM_EnumerateTriangulations, p4xp4, "p4xp4")->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_EnumerateTriangulations, k3, "k3-six-lines")->Unit(benchmark::kMillisecond);

void BM_SecondaryFan(benchmark::State& state) {
    const PointConfiguration& cfg = cached("p4xp4").fixture.config;
    auto ts = enumerate_regular_triangulations(cfg);
    GaleDiagram g = kernel_lattice(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(secondary_fan(g, ts).cones.size());
}
BENCHMARK(BM_SecondaryFan)->Unit(benchmark::kMillisecond);

void BM_QuinticW0(benchmark::State& state) {
    const auto& m = cached("quintic");
    Truncation t = Truncation::total_degree(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(frobenius_w0(m.fixture.system, m.chart.chart, t).terms().size());
}
BENCHMARK(BM_QuinticW0)->Arg(4)->Arg(8)->Arg(16);

void BM_QuinticPeriods(benchmark::State& state) {
    const auto& m = cached("quintic");
    Truncation t = Truncation::total_degree(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_periods(m.fixture.system, m.chart.chart, *m.ring, t).components.size());
}
BENCHMARK(BM_QuinticPeriods)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_P4xP4Cohomology(benchmark::State& state) {
    const auto& m = cached("p4xp4");
    for (auto _ : state)
        benchmark::DoNotOptimize(
            frobenius_cohomology(m.fixture.system, m.chart.chart, *m.algebra, m.fixture.truncation()).ws.terms().size());
}
BENCHMARK(BM_P4xP4Cohomology)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
