#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace toricmirror;
using namespace toricmirror::testing;

namespace fs = std::filesystem;

namespace {

struct CliRun {
    int exit_code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    std::string cmd = std::string(TORICMIRROR_CLI) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) throw std::runtime_error("popen failed");
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
    int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / ("toricmirror-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }

}  // namespace

TEST(Io, NumbersAreStrings) {
    EXPECT_EQ(to_json(Int("123456789012345678901234567890")).get<std::string>(), "123456789012345678901234567890");
    EXPECT_EQ(to_json(Rat(-3, 4)).get<std::string>(), "-3/4");
    EXPECT_EQ(rat_from_json(Json("6/4")), Rat(3, 2));
    EXPECT_EQ(rat_from_json(Json(7)), 7);
    EXPECT_EQ(error_code([] { rat_from_json(Json(1.5)); }), "cli/BadNumber");
    EXPECT_EQ(error_code([] { int_from_json(Json("1/2")); }), "cli/BadNumber");
}

TEST(Io, PolytopeAndConfigRoundTrip) {
    LatticePolytope p = quintic_star();
    EXPECT_EQ(polytope_from_json(polytope_to_json(p)), p);
    PointConfiguration c = build_hypersurface_config(p);
    PointConfiguration back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.points, c.points);
    EXPECT_EQ(back.origin_columns, c.origin_columns);
    EXPECT_EQ(back.labels, c.labels);
}

TEST(Io, MalformedDocuments) {
    EXPECT_EQ(error_code([] { polytope_from_json(Json{{"points", Json::array()}}); }), "cli/Malformed");
    EXPECT_EQ(error_code([] { polytope_from_json(Json::parse(R"({"vertices": [["1", "0"], ["0"]]})")); }),
              "cli/Malformed");
    fs::path d = scratch("malformed");
    write_text(d / "broken.json", "{\"vertices\": [");
    EXPECT_EQ(error_code([&] { read_json_file(d / "broken.json"); }), "cli/Malformed");
    EXPECT_EQ(error_code([&] { read_json_file(d / "absent.json"); }), "cli/MissingFile");
    fs::remove_all(d);
}

TEST(Io, AtomicWriteLeavesNoTemporary) {
    fs::path d = scratch("atomic");
    write_json_atomic(d / "a.json", Json{{"x", "1"}});
    EXPECT_TRUE(fs::exists(d / "a.json"));
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(d)) {
        (void)e;
        ++files;
    }
    EXPECT_EQ(files, 1u);
    EXPECT_EQ(read_json_file(d / "a.json").at("x"), "1");
    fs::remove_all(d);
}

TEST(Corpus, UnknownFixture) {
    EXPECT_EQ(error_code([] { load_fixture("octic"); }), "cli/UnknownFixture");
}

TEST(Corpus, PipelineDocumentValidation) {
    EXPECT_EQ(error_code([] { fixture_from_json(Json{{"fixture", "quintic"}, {"colour", "red"}}); }), "cli/Malformed");
    EXPECT_EQ(error_code([] { fixture_from_json(Json::object()); }), "cli/Malformed");
    Fixture f = fixture_from_json(Json{{"fixture", "weierstrass"}, {"order", 2}});
    EXPECT_EQ(f.name, "weierstrass");
    EXPECT_EQ(f.order, 2);
}

TEST(Corpus, ReportsAreDeterministic) {
    for (const auto& name : {"quintic", "weierstrass", "elliptic-lambda", "square-toy"}) {
        std::string a = fixture_report(build_model(load_fixture(name)), 3).dump(2);
        std::string b = fixture_report(build_model(load_fixture(name)), 3).dump(2);
        EXPECT_EQ(a, b) << name;
    }
}

TEST(Corpus, GoldenFilesMatch) {
    for (const auto& name : fixture_names()) {
        Json golden = read_json_file(fs::path(TORICMIRROR_FIXTURE_DIR) / name / "golden.json");
        EXPECT_EQ(golden.at("fixture"), name);
        EXPECT_TRUE(golden.contains("provenance"));
        Json report = fixture_report(model(name), golden.value("order", 0));
        auto diffs = compare_golden(golden.at("values"), report);
        for (const auto& d : diffs) ADD_FAILURE() << name << " " << d.path << ": " << d.expected << " vs " << d.actual;
        EXPECT_TRUE(report_failures(report).empty()) << name;
    }
}

TEST(Corpus, TamperedGoldenIsReported) {
    Json golden = read_json_file(fs::path(TORICMIRROR_FIXTURE_DIR) / "quintic" / "golden.json");
    Json report = fixture_report(model("quintic"), golden.value("order", 0));
    Json values = golden.at("values");
    values["w0"]["coefficients"]["2"] = "113401";
    auto diffs = compare_golden(values, report);
    ASSERT_EQ(diffs.size(), 1u);
    EXPECT_EQ(diffs[0].path, "w0.coefficients.2");
    EXPECT_EQ(diffs[0].actual, "\"113400\"");
}

TEST(Cli, ListsFixtures) {
    CliRun r = run_cli("fixtures");
    EXPECT_EQ(r.exit_code, 0);
    for (const auto& name : fixture_names()) EXPECT_NE(r.out.find(name), std::string::npos);
}

TEST(Cli, VerifyPassesAndFailsOnTamper) {
    CliRun ok = run_cli("verify weierstrass");
    EXPECT_EQ(ok.exit_code, 0) << ok.out;
    EXPECT_NE(ok.out.find("PASS weierstrass"), std::string::npos);

    fs::path d = scratch("tamper");
    fs::create_directories(d / "weierstrass");
    Json golden = read_json_file(fs::path(TORICMIRROR_FIXTURE_DIR) / "weierstrass" / "golden.json");
    golden["values"]["w0"]["coefficients"]["1"] = "61";
    write_json_atomic(d / "weierstrass" / "golden.json", golden);
    CliRun bad = run_cli("--fixtures-dir " + d.string() + " verify weierstrass");
    EXPECT_EQ(bad.exit_code, 1);
    EXPECT_NE(bad.out.find("FAIL weierstrass"), std::string::npos);
    EXPECT_NE(bad.out.find("w0.coefficients.1"), std::string::npos);
    fs::remove_all(d);

    CliRun unknown = run_cli("verify octic");
    EXPECT_EQ(unknown.exit_code, 2);
    EXPECT_NE(unknown.out.find("UnknownFixture"), std::string::npos);
}

TEST(Cli, PipelineWritesReportAndSummary) {
    fs::path d = scratch("pipeline");
    write_text(d / "delta.json",
               R"({"vertices": [["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"],["-1","-1","-1","-1"]]})");
    write_text(d / "run.json", R"({"delta_star": "delta.json", "order": 2, "output_dir": "out"})");
    CliRun r = run_cli("run " + (d / "run.json").string());
    EXPECT_EQ(r.exit_code, 0) << r.out;
    EXPECT_NE(r.out.find("(1,101)"), std::string::npos);
    ASSERT_TRUE(fs::exists(d / "out" / "report.json"));
    ASSERT_TRUE(fs::exists(d / "out" / "summary.txt"));
    Json report = read_json_file(d / "out" / "report.json");
    EXPECT_EQ(report.at("w0").at("coefficients").at("1"), "120");

    std::string first = slurp(d / "out" / "report.json");
    EXPECT_EQ(run_cli("run " + (d / "run.json").string()).exit_code, 0);
    EXPECT_EQ(slurp(d / "out" / "report.json"), first);
    fs::remove_all(d);
}

TEST(Cli, MalformedPipelineFailsBeforeComputing) {
    fs::path d = scratch("badpipe");
    write_text(d / "run.json", R"({"delta_star": {"vertices": [["1","0"],["0","x"]]}, "output_dir": "out"})");
    CliRun r = run_cli("run " + (d / "run.json").string());
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.out.find("cli/BadNumber"), std::string::npos);
    EXPECT_FALSE(fs::exists(d / "out"));
    write_text(d / "missing.json", R"({"delta_star": "nowhere.json", "output_dir": "out"})");
    EXPECT_EQ(run_cli("run " + (d / "missing.json").string()).exit_code, 2);
    EXPECT_FALSE(fs::exists(d / "out"));
    fs::remove_all(d);
}

TEST(Cli, ModuleErrorsCarryModuleAndCode) {
    fs::path d = scratch("moderr");
    write_text(d / "p.json", R"({"vertices": [["2","0"],["0","2"],["-2","-2"]]})");
    CliRun r = run_cli("config build " + (d / "p.json").string());
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.out.find("config/NotReflexive"), std::string::npos);
    fs::remove_all(d);
}

TEST(Cli, SubcommandsProduceJson) {
    CliRun h = run_cli("polytope hodge --fixture quintic");
    ASSERT_EQ(h.exit_code, 0) << h.out;
    Json j = Json::parse(h.out);
    EXPECT_NE(h.out.find("\"101\""), std::string::npos);
    EXPECT_TRUE(j.contains("polar_dual"));
    CliRun t = run_cli("triangulate enumerate --fixture square-toy");
    ASSERT_EQ(t.exit_code, 0) << t.out;
    CliRun m = run_cli("--order 3 periods mirror-map --fixture quintic");
    ASSERT_EQ(m.exit_code, 0) << m.out;
    EXPECT_NE(m.out.find("-770"), std::string::npos);
}
