#include "toricmirror/io.hpp"

#include <fstream>

namespace toricmirror {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error("cli", "Malformed", what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
    return j.at(key);
}

}  // namespace

Json to_json(const Int& x) { return to_string(x); }
Json to_json(const Rat& x) { return to_string(x); }

Json to_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json to_json(const IntMat& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        a.push_back(row);
    }
    return a;
}

Json to_json(const RatMat& m) {
    Json a = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        a.push_back(row);
    }
    return a;
}

Rat rat_from_json(const Json& j) {
    if (j.is_number_integer()) return Rat(Int(j.dump()));
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::exception&) {
            throw Error("cli", "BadNumber", "not a rational: " + j.dump());
        }
    }
    throw Error("cli", "BadNumber", "expected an integer or rational string, got " + j.dump());
}

Int int_from_json(const Json& j) {
    Rat r = rat_from_json(j);
    if (!is_integral(r)) throw Error("cli", "BadNumber", "expected an integer, got " + j.dump());
    return r.get_num();
}

IntVec intvec_from_json(const Json& j) {
    if (!j.is_array()) malformed("expected an array, got " + j.dump());
    IntVec v;
    for (const auto& x : j) v.push_back(int_from_json(x));
    return v;
}

RatVec ratvec_from_json(const Json& j) {
    if (!j.is_array()) malformed("expected an array, got " + j.dump());
    RatVec v;
    for (const auto& x : j) v.push_back(rat_from_json(x));
    return v;
}

RatMat ratmat_from_json(const Json& j) {
    if (!j.is_array()) malformed("expected a matrix");
    std::vector<RatVec> rows;
    for (const auto& r : j) rows.push_back(ratvec_from_json(r));
    const std::size_t cols = rows.empty() ? 0 : rows[0].size();
    RatMat m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) malformed("ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = rows[i][c];
    }
    return m;
}

std::string exponent_key(const Exponent& e) {
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + std::to_string(e[i]);
    return s;
}

Json polytope_to_json(const LatticePolytope& p) {
    Json v = Json::array();
    for (const auto& x : p.vertices()) v.push_back(to_json(x));
    return Json{{"ambient_rank", p.ambient_rank()}, {"dim", p.dim()}, {"vertices", v}};
}

LatticePolytope polytope_from_json(const Json& j) {
    const Json& vs = field(j, "vertices");
    if (!vs.is_array() || vs.empty()) malformed("'vertices' must be a non-empty array");
    std::vector<IntVec> pts;
    for (const auto& v : vs) pts.push_back(intvec_from_json(v));
    for (const auto& p : pts)
        if (p.size() != pts[0].size()) malformed("vertices have different lengths");
    return LatticePolytope::hull(pts);
}

Json config_to_json(const PointConfiguration& cfg) {
    Json pts = Json::array();
    for (const auto& p : cfg.points) pts.push_back(to_json(p));
    return Json{{"kind", to_string(cfg.kind)},
                {"ambient_rank", cfg.ambient_rank},
                {"r", cfg.r},
                {"origin_columns", cfg.origin_columns},
                {"labels", cfg.labels},
                {"points", pts}};
}

PointConfiguration config_from_json(const Json& j) {
    const Json& ps = field(j, "points");
    if (!ps.is_array() || ps.empty()) malformed("'points' must be a non-empty array");
    std::vector<IntVec> pts;
    for (const auto& p : ps) pts.push_back(intvec_from_json(p));
    std::vector<std::size_t> origin;
    if (j.contains("origin_columns"))
        for (const auto& o : j.at("origin_columns")) {
            if (!o.is_number_unsigned()) malformed("origin column indices must be nonnegative integers");
            origin.push_back(o.get<std::size_t>());
        }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return PointConfiguration::generic(std::move(pts), std::move(origin), std::move(labels));
}

Json triangulation_to_json(const Triangulation& t) { return Json{{"id", t.id()}, {"simplices", t.simplices}}; }

Json hodge_to_json(const HodgePair& h) {
    Json j{{"h11", to_json(h.h11)}, {"h21", to_json(h.h21)}};
    if (!h.caveat.empty()) j["caveat"] = h.caveat;
    return j;
}

Json ring_to_json(const CohomologyRing& ring) {
    Json j{{"dim", ring.dim}, {"basis", ring.algebra.labels()}, {"chi", to_json(ring.chi)}};
    const std::size_t s = ring.j_divisors.size();
    if (ring.dim == 3) {
        Json k = Json::object();
        for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = a; b < s; ++b)
                for (std::size_t c = b; c < s; ++c)
                    k[std::to_string(a + 1) + std::to_string(b + 1) + std::to_string(c + 1)] = to_json(ring.k[a][b][c]);
        j["intersection"] = k;
        j["c2J"] = to_json(ring.c2j);
    } else if (ring.dim == 2) {
        Json e = Json::array();
        for (const auto& row : ring.eta) e.push_back(to_json(row));
        j["intersection"] = e;
    } else {
        j["degrees"] = to_json(ring.degrees);
    }
    Json sr = Json::array();
    for (const auto& m : ring.sr_ideal) sr.push_back(m);
    j["stanley_reisner"] = sr;
    j["cones"] = ring.fan.cones.size();
    j["smooth"] = ring.fan.all_smooth();
    return j;
}

Json series_to_json(const LogSeries& s, const std::vector<std::string>& labels) {
    Json terms = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json coeff = Json::array();
        for (const auto& p : c) coeff.push_back(p.str());
        terms.push_back(Json{{"exponent", e}, {"coefficient", coeff}});
    }
    Json j{{"nvars", s.nvars()}, {"dim", s.dim()}, {"truncation", s.truncation().str()}};
    if (!labels.empty()) j["basis"] = labels;
    if (!s.offsets().empty()) j["offsets"] = to_json(s.offsets());
    j["terms"] = terms;
    return j;
}

Json period_vector_to_json(const PeriodVector& pv) {
    Json comps = Json::object();
    for (std::size_t a = 0; a < pv.components.size(); ++a) comps[pv.labels[a]] = series_to_json(pv.components[a]);
    return Json{{"route", pv.route}, {"sigma", "[[0,J],[-J,0]], J antidiagonal"}, {"components", comps}};
}

Json monodromy_to_json(const MonodromyData& md) {
    Json t = Json::array(), n = Json::array();
    for (const auto& m : md.t) t.push_back(to_json(m));
    for (const auto& m : md.n) n.push_back(to_json(m));
    return Json{{"T", t}, {"N", n}};
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cli", "MissingFile", "cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        malformed(path.string() + ": " + e.what());
    }
}

void write_json_atomic(const std::filesystem::path& path, const Json& j) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw Error("cli", "WriteFailed", "cannot open " + tmp.string());
        out << j.dump(2) << '\n';
        if (!out.flush()) throw Error("cli", "WriteFailed", "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cli", "WriteFailed", "rename to " + path.string() + ": " + ec.message());
    }
}

}  // namespace toricmirror
