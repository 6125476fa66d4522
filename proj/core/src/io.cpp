#include "tropwave/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "tropwave/errors.hpp"

namespace tropwave {

namespace {

Json polygon_points(const Polygon& poly) {
  Json arr = Json::array();
  for (const auto& p : poly) arr.push_back(to_json(p));
  return arr;
}

Json rats(const std::vector<Rat>& v) {
  Json arr = Json::array();
  for (const auto& r : v) arr.push_back(to_json(r));
  return arr;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

Json to_json(const Rat& r) { return to_string(r); }

Json to_json(const Point& p) { return Json::array({to_string(p.x), to_string(p.y)}); }

Json to_json(LatticeVec v) { return Json::array({v.i, v.j}); }

Json to_json(const QPolygon& dom) {
  Json hs = Json::array();
  for (const auto& h : dom.halfplanes()) hs.push_back({{"n", to_json(h.n)}, {"a", to_json(h.a)}});
  return {{"halfplanes", hs}};
}

Json to_json(const TropicalSeries& f) {
  Json sup = Json::array();
  for (const auto& [v, a] : f.support()) sup.push_back({{"v", to_json(v)}, {"a", to_json(a)}});
  return {{"domain", to_json(f.domain())}, {"support", sup}};
}

Json to_json(const WaveEvent& e) {
  return {{"step", e.step},
          {"p", to_json(e.p)},
          {"v", to_json(e.v)},
          {"c", to_json(e.c)},
          {"avalanche_area", to_json(e.avalanche_area)},
          {"swept_area", to_json(e.swept_area)}};
}

Json to_json(const DynamicsResult& r) {
  Json ev = Json::array();
  for (const auto& e : r.events) ev.push_back(to_json(e));
  Json j = {{"final", to_json(r.final)},
            {"events", ev},
            {"stopped_reason", to_string(r.reason)},
            {"steps", r.steps},
            {"sweeps", r.sweeps}};
  if (r.last_sweep_rho) j["last_sweep_rho"] = to_json(*r.last_sweep_rho);
  return j;
}

Json to_json(const TropicalCurve& c) {
  Json vs = Json::array();
  for (const auto& v : c.vertices) vs.push_back({{"p", to_json(v.p)}, {"interior", v.interior}});
  Json es = Json::array();
  for (const auto& e : c.edges) {
    Json je = {{"a", e.a}, {"weight", e.weight}, {"u", to_json(e.u)}, {"v", to_json(e.v)}};
    if (e.ray)
      je["ray"] = to_json(*e.ray);
    else
      je["b"] = e.b;
    es.push_back(je);
  }
  Json fs = Json::array();
  for (const auto& f : c.faces)
    fs.push_back({{"v", to_json(f.v)}, {"a", to_json(f.a)}, {"region", polygon_points(f.poly)}});
  return {{"vertices", vs}, {"edges", es}, {"faces", fs}};
}

Json to_json(const PerestroikaReport& r) {
  Json sides = Json::array();
  for (const auto& s : r.sides) {
    Json js = {{"shrinking", s.shrinking}};
    if (s.monomial) js["monomial"] = to_json(*s.monomial);
    if (s.domain_side) js["domain_side"] = *s.domain_side;
    if (s.lambda) js["lambda"] = to_json(*s.lambda);
    sides.push_back(js);
  }
  Json events = Json::array();
  for (const auto& e : r.events) {
    Json je = {{"t", to_json(e.t)}, {"kind", to_string(e.kind)}};
    if (e.side) je["side"] = to_json(*e.side);
    if (e.lambda) je["lambda"] = to_json(*e.lambda);
    events.push_back(je);
  }
  Json samples = Json::array();
  for (const auto& [t, ok] : r.samples) samples.push_back({{"t", to_json(t)}, {"smooth_or_nodal", ok}});
  return {{"v", to_json(r.v)},
          {"c", to_json(r.c)},
          {"sides", sides},
          {"events", events},
          {"samples", samples},
          {"critical_times", rats(r.critical_times)},
          {"type_changes", rats(r.type_changes)}};
}

Json to_json(const ExperimentConfig& c) {
  return {{"n", c.n},
          {"trials", c.trials},
          {"seed", c.seed},
          {"denom_bound", c.denom_bound},
          {"max_steps", c.max_steps},
          {"bins", c.bins}};
}

Json to_json(const ExperimentStats& s) {
  Json ccdf = Json::array();
  for (const auto& [x, p] : s.ccdf) ccdf.push_back(Json::array({to_json(x), to_json(p)}));
  Json hist = Json::array();
  for (const auto& b : s.histogram) hist.push_back({{"lo", b.lo}, {"hi", b.hi}, {"count", b.count}});
  Json steps = Json::array();
  for (auto n : s.steps) steps.push_back(n);
  return {{"ccdf", ccdf},
          {"hill", {{"alpha", std::isfinite(s.hill.alpha) ? Json(s.hill.alpha) : Json()}, {"k_tail", s.hill.k_tail}}},
          {"histogram_decimal", hist},
          {"areas", rats(s.areas)},
          {"steps", steps},
          {"unconverged", s.unconverged},
          {"seed", s.config.seed},
          {"config", to_json(s.config)}};
}

Json to_json(const BlowupStep& s) {
  return {{"corner", s.corner},
          {"apex", to_json(s.apex)},
          {"direction", to_json(s.direction)},
          {"multiplier", s.multiplier},
          {"depth", to_json(s.depth)},
          {"removed", polygon_points(s.removed)}};
}

Json to_json(const NiceResult& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  Json deg = Json::array();
  for (long d : quasi_degree(r.series)) deg.push_back(d);
  return {{"domain", to_json(r.domain)}, {"series", to_json(r.series)}, {"steps", steps}, {"quasi_degree", deg}};
}

Json to_json(const NiceRestriction& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps) steps.push_back(to_json(s));
  return {{"domain", to_json(r.domain)},
          {"full", to_json(r.full)},
          {"restricted", to_json(r.restricted)},
          {"steps", steps},
          {"nice", r.nice},
          {"difference_ok", r.difference_ok},
          {"removed_ok", r.removed_ok},
          {"max_difference", to_json(r.max_difference)},
          {"certified", r.certified()}};
}

Json to_json(const CoarsenPlan& p) {
  Json steps = Json::array();
  for (const auto& s : p.steps)
    steps.push_back({{"p", to_json(s.p)},
                     {"v", to_json(s.v)},
                     {"increment", to_json(s.increment)},
                     {"decremented", to_json(s.decremented)}});
  return {{"M", to_json(p.M)}, {"h", to_json(p.h)}, {"steps", steps}};
}

Json to_json(const CoarsenResult& r) {
  return {{"plan", to_json(r.plan)},
          {"final", to_json(r.final)},
          {"reference", to_json(r.reference)},
          {"intermediate_count", r.intermediate.size()},
          {"curves_checked", r.curves_checked},
          {"families_checked", r.families_checked}};
}

Json to_json(const LaurentPoly2& f) {
  Json terms = Json::array();
  for (const auto& [v, a] : f.terms()) terms.push_back({{"v", to_json(v)}, {"a", to_string(a)}});
  return {{"terms", terms}};
}

Json to_json(const LiftCheck& c) {
  auto monos = [](const MonomialMap& m) {
    Json arr = Json::array();
    for (const auto& [v, a] : m) arr.push_back({{"v", to_json(v)}, {"a", to_json(a)}});
    return arr;
  };
  Json j = {{"status", to_string(c.status)}, {"wave_side", monos(c.wave_side)}, {"lift_side", monos(c.lift_side)}};
  if (c.differing) j["differing"] = to_json(*c.differing);
  return j;
}

Json to_json(const LiftFuzzReport& r) {
  Json j = {{"trials", r.trials},
            {"holds", r.holds},
            {"mismatches", r.mismatches},
            {"redrawn", r.redrawn},
            {"idempotent", r.idempotent},
            {"vanishes_at_p", r.vanishes_at_p}};
  if (r.counterexample) j["counterexample"] = *r.counterexample;
  return j;
}

Rat rat_from_json(const Json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  bad("expected a \"p/q\" string, got " + j.dump());
}

Point point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected a point [x, y], got " + j.dump());
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

LatticeVec vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    bad("expected an integer pair [i, j], got " + j.dump());
  return {j[0].get<long>(), j[1].get<long>()};
}

QPolygon polygon_from_json(const Json& j) {
  const Json& hs = field(j, "halfplanes");
  if (!hs.is_array()) bad("'halfplanes' must be an array");
  std::vector<HalfPlane> out;
  for (const auto& h : hs) out.push_back({vec_from_json(field(h, "n")), rat_from_json(field(h, "a"))});
  return QPolygon(std::move(out));
}

TropicalSeries series_from_json(const Json& j, const QPolygon& dom) {
  const Json& sup = field(j, "support");
  if (!sup.is_array()) bad("'support' must be an array");
  MonomialMap monos;
  for (const auto& t : sup) {
    LatticeVec v = vec_from_json(field(t, "v"));
    Rat a = rat_from_json(field(t, "a"));
    auto it = monos.find(v);
    if (it == monos.end() || a < it->second) monos[v] = a;
  }
  return TropicalSeries::from_min(dom, monos);
}

TropicalSeries series_from_json(const Json& j) { return series_from_json(j, polygon_from_json(field(j, "domain"))); }

std::vector<Point> points_from_json(const Json& j) {
  const Json& arr = j.is_object() ? field(j, "points") : j;
  if (!arr.is_array()) bad("expected an array of points");
  std::vector<Point> out;
  for (const auto& p : arr) out.push_back(point_from_json(p));
  return out;
}

LaurentPoly2 laurent_from_json(const Json& j) {
  const Json& terms = field(j, "terms");
  if (!terms.is_array()) bad("'terms' must be an array");
  LaurentPoly2 f;
  for (const auto& t : terms) {
    const Json& a = field(t, "a");
    if (!a.is_string()) bad("coefficient must be a string");
    f.set(vec_from_json(field(t, "v")), parse_gf2ratfun(a.get<std::string>()));
  }
  return f;
}

WaveEvent event_from_json(const Json& j) {
  WaveEvent e;
  e.p = point_from_json(field(j, "p"));
  e.v = vec_from_json(field(j, "v"));
  e.c = rat_from_json(field(j, "c"));
  if (j.contains("avalanche_area")) e.avalanche_area = rat_from_json(j.at("avalanche_area"));
  if (j.contains("swept_area")) e.swept_area = rat_from_json(j.at("swept_area"));
  if (j.contains("step") && j.at("step").is_number_unsigned()) e.step = j.at("step").get<std::size_t>();
  return e;
}

std::vector<WaveEvent> events_from_lines(const std::string& text) {
  std::vector<WaveEvent> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(event_from_json(parse_json(line)));
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string event_log_lines(const std::vector<WaveEvent>& events) {
  std::string out;
  for (const auto& e : events) out += to_json(e).dump() + "\n";
  return out;
}

}  // namespace tropwave
