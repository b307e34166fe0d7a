#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "toricmirror/corpus.hpp"
#include "toricmirror/io.hpp"

using namespace toricmirror;

namespace {

struct Options {
    std::string input;
    std::string fixture;
    std::string output;
    std::string fixtures_dir;
    int order = 0;
};

void emit(const Json& j, const Options& o) {
    if (o.output.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_atomic(o.output, j);
    }
}

LatticePolytope input_polytope(const Options& o) {
    if (!o.fixture.empty()) {
        Fixture f = load_fixture(o.fixture);
        if (!f.delta_star) throw Error("cli", "Malformed", "fixture '" + o.fixture + "' has no polytope");
        return *f.delta_star;
    }
    return polytope_from_json(read_json_file(o.input));
}

PointConfiguration input_config(const Options& o) {
    if (!o.fixture.empty()) return load_fixture(o.fixture).config;
    Json j = read_json_file(o.input);
    if (j.contains("points")) return config_from_json(j);
    return build_hypersurface_config(polytope_from_json(j));
}

Fixture input_fixture(const Options& o) {
    if (!o.fixture.empty()) return load_fixture(o.fixture);
    std::filesystem::path p = o.input;
    Fixture f = fixture_from_json(read_json_file(p), p.parent_path());
    return f;
}

FixtureModel input_model(const Options& o) { return build_model(input_fixture(o)); }

struct PeriodContext {
    FixtureModel model;
    SymplecticBasis basis;
    PeriodVector pv;
    MonodromyData md;
};

PeriodContext period_context(const Options& o) {
    FixtureModel m = input_model(o);
    if (!m.algebra || m.fixture.ring_source == RingSource::Surface)
        throw Error("periods", "RingMismatch", "period vectors need a threefold or curve ring");
    CohomologySeries cs = frobenius_cohomology(m.fixture.system, m.chart.chart, *m.algebra, m.fixture.truncation(o.order));
    const LogSeries& w = cs.w0 ? *cs.w0 : cs.ws;
    SymplecticBasis basis = SymplecticBasis::build(*m.algebra, m.ring ? m.ring->c2 : m.algebra->zero());
    PeriodVector pv = period_vector(w, basis);
    RatMat sigma = standard_sigma(basis.size());
    MonodromyData md = monodromy_data(pv, m.chart.chart.basis.size(), &sigma);
    return {std::move(m), std::move(basis), std::move(pv), std::move(md)};
}

std::filesystem::path fixtures_dir(const Options& o) {
    if (!o.fixtures_dir.empty()) return o.fixtures_dir;
    if (const char* env = std::getenv("TORICMIRROR_FIXTURES")) return env;
    return TORICMIRROR_FIXTURE_DIR;
}

int verify(const std::string& name, const Options& o) {
    std::filesystem::path golden_path = fixtures_dir(o) / name / "golden.json";
    Fixture f = load_fixture(name);
    Json golden = read_json_file(golden_path);
    int order = golden.value("order", 0);
    Json report = fixture_report(build_model(f), order);
    auto diffs = compare_golden(golden.at("values"), report);
    auto fails = report_failures(report);
    if (!o.output.empty()) write_json_atomic(o.output, report);
    if (diffs.empty() && fails.empty()) {
        std::cout << "PASS " << name << '\n';
        return 0;
    }
    std::cout << "FAIL " << name << '\n';
    for (const auto& d : diffs) std::cout << "  " << d.path << ": expected " << d.expected << ", got " << d.actual << '\n';
    for (const auto& p : fails) std::cout << "  check failed: " << p << '\n';
    return 1;
}

int run_pipeline(const Options& o) {
    std::filesystem::path p = o.input;
    Json doc = read_json_file(p);
    Fixture f = fixture_from_json(doc, p.parent_path());
    std::filesystem::path out = doc.contains("output_dir") ? p.parent_path() / doc.at("output_dir").get<std::string>()
                                                             : std::filesystem::path(o.output.empty() ? "." : o.output);
    std::filesystem::create_directories(out);
    Json report = fixture_report(build_model(f), o.order);
    write_json_atomic(out / "report.json", report);
    std::string summary = report_summary(report);
    {
        std::filesystem::path tmp = out / "summary.txt.tmp";
        std::ofstream(tmp) << summary;
        std::filesystem::rename(tmp, out / "summary.txt");
    }
    std::cout << summary;
    return report_failures(report).empty() ? 0 : 1;
}

void add_input(CLI::App* cmd, Options& o, const char* what) {
    auto* in = cmd->add_option("input", o.input, what);
    auto* fx = cmd->add_option("--fixture", o.fixture, "Use a corpus fixture instead of a file");
    in->excludes(fx);
    fx->excludes(in);
    cmd->add_option("-o,--output", o.output, "Write JSON here instead of standard output");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toric mirror symmetry toolkit: polytopes, GKZ series, periods and monodromy"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--order", o.order, "Truncation order (defaults to the fixture's)")->check(CLI::PositiveNumber);
    app.add_option("--fixtures-dir", o.fixtures_dir, "Directory holding <fixture>/golden.json");

    auto* poly = app.add_subcommand("polytope", "Lattice polytope operations")->require_subcommand(1);
    auto* p_dual = poly->add_subcommand("dual", "Polar dual");
    auto* p_refl = poly->add_subcommand("reflexive", "Reflexivity test");
    auto* p_hodge = poly->add_subcommand("hodge", "Hypersurface Hodge numbers of a reflexive polytope");
    auto* p_faces = poly->add_subcommand("faces", "Face lattice with dual-face pairing");
    for (auto* c : {p_dual, p_refl, p_hodge, p_faces}) add_input(c, o, "Polytope JSON {\"vertices\": [...]}");

    auto* conf = app.add_subcommand("config", "Point configurations")->require_subcommand(1);
    auto* c_build = conf->add_subcommand("build", "Hypersurface configuration of Delta*");
    auto* c_kernel = conf->add_subcommand("kernel", "Kernel lattice of a configuration");
    add_input(c_build, o, "Polytope JSON");
    add_input(c_kernel, o, "Configuration or polytope JSON");

    auto* tri = app.add_subcommand("triangulate", "Triangulations and the secondary fan")->require_subcommand(1);
    auto* t_enum = tri->add_subcommand("enumerate", "Regular triangulations with certificates");
    auto* t_gkz = tri->add_subcommand("gkz", "GKZ vectors and secondary polytope vertices");
    auto* t_chart = tri->add_subcommand("chart", "Chart basis of the chosen maximal chamber");
    for (auto* c : {t_enum, t_gkz}) add_input(c, o, "Configuration or polytope JSON");
    add_input(t_chart, o, "Pipeline JSON");

    auto* gkz = app.add_subcommand("gkz", "GKZ systems and series")->require_subcommand(1);
    auto* g_series = gkz->add_subcommand("series", "Holomorphic solution w0 on the chart");
    auto* g_check = gkz->add_subcommand("check", "Operator annihilation checks");
    for (auto* c : {g_series, g_check}) add_input(c, o, "Pipeline JSON");

    auto* ring = app.add_subcommand("ring", "Cohomology rings")->require_subcommand(1);
    auto* r_build = ring->add_subcommand("build", "Stanley-Reisner ring, intersection numbers, Chern data");
    add_input(r_build, o, "Pipeline JSON");

    auto* per = app.add_subcommand("periods", "Period vectors and monodromy")->require_subcommand(1);
    auto* pe_build = per->add_subcommand("build", "Symplectic period vector");
    auto* pe_mono = per->add_subcommand("monodromy", "LCSL monodromy matrices and weight filtration");
    auto* pe_mm = per->add_subcommand("mirror-map", "Mirror map and its inverse");
    auto* pe_vm = per->add_subcommand("verify-mirror", "log T_k against the -J_k cup action");
    for (auto* c : {pe_build, pe_mono, pe_mm, pe_vm}) add_input(c, o, "Pipeline JSON");

    std::string verify_name;
    auto* ver = app.add_subcommand("verify", "Compare a fixture against its golden file");
    ver->add_option("fixture", verify_name, "Fixture name")->required();
    ver->add_option("-o,--output", o.output, "Also write the computed report here");

    auto* run = app.add_subcommand("run", "Run the whole pipeline from a pipeline JSON");
    run->add_option("pipeline", o.input, "Pipeline JSON")->required();
    run->add_option("-o,--output", o.output, "Output directory when the document has no output_dir");

    auto* list = app.add_subcommand("fixtures", "List the corpus fixtures");

    CLI11_PARSE(app, argc, argv);

    try {
        for (auto* c : {p_dual, p_refl, p_hodge, p_faces, c_build, c_kernel, t_enum, t_gkz, t_chart, g_series, g_check,
                        r_build, pe_build, pe_mono, pe_mm, pe_vm})
            if (c->parsed() && o.input.empty() && o.fixture.empty())
                throw CLI::RequiredError("input or --fixture");

        if (p_dual->parsed()) {
            emit(polytope_to_json(polar_dual(input_polytope(o))), o);
        } else if (p_refl->parsed()) {
            emit(Json{{"reflexive", is_reflexive(input_polytope(o))}}, o);
        } else if (p_hodge->parsed()) {
            LatticePolytope p = input_polytope(o);
            emit(Json{{"hodge", hodge_to_json(hodge_numbers(p))}, {"polar_dual", hodge_to_json(hodge_numbers(polar_dual(p)))}},
                 o);
        } else if (p_faces->parsed()) {
            Json faces = Json::array();
            for (const auto& f : paired_face_lattice(input_polytope(o))) {
                Json fj{{"dim", f.dim},
                        {"vertices", f.vertex_indices},
                        {"lattice_points", f.lattice_points},
                        {"interior_points", f.interior_points}};
                if (f.dual_face) fj["dual_face"] = *f.dual_face;
                faces.push_back(fj);
            }
            emit(Json{{"faces", faces}}, o);
        } else if (c_build->parsed()) {
            emit(config_to_json(build_hypersurface_config(input_polytope(o))), o);
        } else if (c_kernel->parsed()) {
            GaleDiagram g = kernel_lattice(input_config(o));
            Json k = Json::array();
            for (const auto& v : g.kernel_basis) k.push_back(to_json(v));
            emit(Json{{"rank", g.rank_L}, {"basis", k}, {"lattice_index", to_json(g.config.lattice_index())}}, o);
        } else if (t_enum->parsed() || t_gkz->parsed()) {
            PointConfiguration cfg = input_config(o);
            auto ts = enumerate_regular_triangulations(cfg);
            Json out = Json::array();
            for (const auto& t : ts) {
                Json tj = triangulation_to_json(t.triangulation);
                tj["maximal"] = is_maximal(cfg, t.triangulation);
                if (t_enum->parsed()) tj["heights"] = to_json(t.certificate.heights);
                if (t_gkz->parsed()) tj["gkz"] = to_json(gkz_vector(cfg, t.triangulation));
                out.push_back(tj);
            }
            Json j{{"count", ts.size()}, {"triangulations", out}};
            if (t_gkz->parsed()) {
                Json verts = Json::array();
                for (const auto& v : secondary_fan(kernel_lattice(cfg), ts).polytope_vertices()) verts.push_back(to_json(v));
                j["secondary_polytope"] = verts;
            }
            emit(j, o);
        } else if (t_chart->parsed()) {
            FixtureModel m = input_model(o);
            const ChartBasis& c = m.chart.chart;
            Json basis = Json::array(), mons = Json::array();
            for (std::size_t k = 0; k < c.basis.size(); ++k) {
                basis.push_back(to_json(c.basis[k]));
                mons.push_back(chart_monomial(c.basis[k], c.signs[k]));
            }
            emit(Json{{"triangulation", triangulation_to_json(c.triangulation)},
                      {"basis", basis},
                      {"monomials", mons},
                      {"overridden", c.overridden}},
                 o);
        } else if (g_series->parsed()) {
            FixtureModel m = input_model(o);
            emit(series_to_json(frobenius_w0(m.fixture.system, m.chart.chart, m.fixture.truncation(o.order))), o);
        } else if (g_check->parsed()) {
            Json r = fixture_report(input_model(o), o.order);
            emit(Json{{"w0", r.at("w0")}, {"cohomology", r.value("cohomology", Json())}}, o);
        } else if (r_build->parsed()) {
            FixtureModel m = input_model(o);
            if (!m.ring) throw Error("toricring", "UnsupportedDimension", "the fixture has no toric cohomology ring");
            Json j = ring_to_json(*m.ring);
            auto kc = kahler_cone_certificate(*m.ring);
            j["kahler_cone"] = Json{{"generators_nef", kc.generator_nef}, {"sum_ample", kc.sum_ample}};
            emit(j, o);
        } else if (pe_build->parsed()) {
            PeriodContext pc = period_context(o);
            emit(period_vector_to_json(pc.pv), o);
        } else if (pe_mono->parsed()) {
            PeriodContext pc = period_context(o);
            Json j = monodromy_to_json(pc.md);
            RatMat nl(pc.basis.size(), pc.basis.size());
            for (const auto& n : pc.md.n) nl = nl + n;
            WeightFiltration wf = weight_filtration(nl, static_cast<int>(pc.basis.ring.top_degree()));
            j["weight_dims"] = wf.dims;
            j["lcsl"] = wf.lcsl;
            emit(j, o);
        } else if (pe_mm->parsed()) {
            PeriodContext pc = period_context(o);
            MirrorMap mm = mirror_map(pc.pv, pc.md.t.size());
            auto x = invert_mirror_map(mm);
            Json xs = Json::array(), hs = Json::array();
            for (std::size_t k = 0; k < x.size(); ++k) {
                Json xt = Json::object(), ht = Json::object();
                for (const auto& [e, c] : x[k].terms) xt[exponent_key(e)] = to_string(c);
                for (const auto& [e, c] : mm.h[k].terms) ht[exponent_key(e)] = to_string(c);
                xs.push_back(xt);
                hs.push_back(ht);
            }
            emit(Json{{"h", hs}, {"x_of_q", xs}, {"round_trip", mirror_round_trip(mm, x)}}, o);
        } else if (pe_vm->parsed()) {
            PeriodContext pc = period_context(o);
            Json out = Json::array();
            for (const auto& c : verify_mirror_isomorphism(pc.md, pc.basis)) {
                Json cj{{"k", c.k + 1}, {"pass", c.pass}, {"exp_agrees", c.exp_agrees}};
                if (!c.pass) cj["residual"] = to_json(c.residual);
                out.push_back(cj);
            }
            emit(Json{{"checks", out}}, o);
            for (const auto& c : out)
                if (!c["pass"].get<bool>()) return 1;
        } else if (ver->parsed()) {
            return verify(verify_name, o);
        } else if (run->parsed()) {
            return run_pipeline(o);
        } else if (list->parsed()) {
            for (const auto& n : fixture_names()) std::cout << n << '\n';
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
