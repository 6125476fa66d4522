#pragma once

// JSON serialization. Every rational is written as a "p/q" string.

#include <json.hpp>

#include <string>
#include <vector>

#include "tropwave/lift2.hpp"
#include "tropwave/refine.hpp"
#include "tropwave/stats.hpp"

namespace tropwave {

using Json = nlohmann::json;

Json to_json(const Rat& r);
Json to_json(const Point& p);
Json to_json(LatticeVec v);
Json to_json(const QPolygon& dom);
Json to_json(const TropicalSeries& f);
Json to_json(const WaveEvent& e);
Json to_json(const DynamicsResult& r);
Json to_json(const TropicalCurve& c);
Json to_json(const PerestroikaReport& r);
Json to_json(const ExperimentStats& s);
Json to_json(const ExperimentConfig& c);
Json to_json(const BlowupStep& s);
Json to_json(const NiceResult& r);
Json to_json(const NiceRestriction& r);
Json to_json(const CoarsenPlan& p);
Json to_json(const CoarsenResult& r);
Json to_json(const LaurentPoly2& f);
Json to_json(const LiftCheck& c);
Json to_json(const LiftFuzzReport& r);

/// All readers throw Error(ParseError) on malformed input.
Rat rat_from_json(const Json& j);
Point point_from_json(const Json& j);
LatticeVec vec_from_json(const Json& j);
QPolygon polygon_from_json(const Json& j);
/// Accepts {"domain":..., "support":[...]}. The domain may be omitted when `dom` is given.
TropicalSeries series_from_json(const Json& j);
TropicalSeries series_from_json(const Json& j, const QPolygon& dom);
/// {"points":[[x,y],...]} or a bare array.
std::vector<Point> points_from_json(const Json& j);
/// {"terms":[{"v":[i,j],"a":"num/den"},...]} with GF(2) rational functions as text.
LaurentPoly2 laurent_from_json(const Json& j);
WaveEvent event_from_json(const Json& j);
/// Reads a JSON-lines event log; blank lines are skipped.
std::vector<WaveEvent> events_from_lines(const std::string& text);

Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);
/// Deterministic dump: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

/// One WaveEvent per line.
std::string event_log_lines(const std::vector<WaveEvent>& events);

}  // namespace tropwave
