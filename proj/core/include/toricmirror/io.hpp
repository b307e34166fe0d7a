#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "toricmirror/arith.hpp"
#include "toricmirror/config.hpp"
#include "toricmirror/periods.hpp"
#include "toricmirror/polytope.hpp"
#include "toricmirror/series.hpp"
#include "toricmirror/toricring.hpp"
#include "toricmirror/triangulation.hpp"

namespace toricmirror {

using Json = nlohmann::ordered_json;

/** Numbers are persisted as decimal or p/q strings, never as floats. */
Json to_json(const Int& x);
Json to_json(const Rat& x);
Json to_json(const IntVec& v);
Json to_json(const RatVec& v);
Json to_json(const IntMat& m);
Json to_json(const RatMat& m);

/** Accepts an integer literal or a decimal/rational string; throws Error(cli, BadNumber). */
Rat rat_from_json(const Json& j);
Int int_from_json(const Json& j);
IntVec intvec_from_json(const Json& j);
RatVec ratvec_from_json(const Json& j);
RatMat ratmat_from_json(const Json& j);

/** "n1,n2,..." */
std::string exponent_key(const Exponent& e);

Json polytope_to_json(const LatticePolytope& p);
/** {"vertices": [[...], ...]}; throws Error(cli, Malformed). */
LatticePolytope polytope_from_json(const Json& j);

Json config_to_json(const PointConfiguration& cfg);
/** {"points": [[...]], "origin_columns": [...], "labels": [...]}. */
PointConfiguration config_from_json(const Json& j);

Json triangulation_to_json(const Triangulation& t);
Json hodge_to_json(const HodgePair& h);
Json ring_to_json(const CohomologyRing& ring);

/** Each term as {"exponent": [...], "coefficient": [poly strings per basis element]}. */
Json series_to_json(const LogSeries& s, const std::vector<std::string>& labels = {});
Json period_vector_to_json(const PeriodVector& pv);
Json monodromy_to_json(const MonodromyData& md);

/** Parse a JSON file; throws Error(cli, Malformed) with the parser message. */
Json read_json_file(const std::filesystem::path& path);

/** Write through a temporary file in the same directory and rename. */
void write_json_atomic(const std::filesystem::path& path, const Json& j);

}  // namespace toricmirror
