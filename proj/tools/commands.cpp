#include "commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "bundle.hpp"
#include "tropwave/io.hpp"
#include "tropwave/svg.hpp"

namespace tropwave::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return ParseFailure;
    case ErrorCode::CertificationFailed:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::UnclassifiableSide: return CertificateFailure;
    default: return DomainViolation;
  }
}

namespace {

// Options that may also come from the --config file. Flags given on the
// command line win.
class Bindings {
 public:
  template <class T>
  CLI::Option* add(CLI::App* app, const std::string& key, T& var, const std::string& help) {
    CLI::Option* opt = app->add_option("--" + dashed(key), var, help);
    items_.push_back({key, opt, [&var](const Json& j) { assign(var, j); }, [&var] { return Json(var); }});
    return opt;
  }

  void merge(const Json& cfg) {
    if (!cfg.is_object()) throw Error(ErrorCode::ParseError, "config must be a JSON object");
    for (auto& b : items_) {
      if (b.opt->count() > 0 || !cfg.contains(b.key)) continue;
      try {
        b.set(cfg.at(b.key));
      } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::ParseError, "bad config value for '" + b.key + "'");
      }
    }
  }

  Json echo() const {
    Json j = Json::object();
    for (const auto& b : items_) j[b.key] = b.get();
    return j;
  }

 private:
  struct Item {
    std::string key;
    CLI::Option* opt;
    std::function<void(const Json&)> set;
    std::function<Json()> get;
  };
  std::vector<Item> items_;

  static std::string dashed(std::string s) {
    for (auto& ch : s)
      if (ch == '_') ch = '-';
    return s;
  }
  template <class T>
  static void assign(T& var, const Json& j) {
    if constexpr (std::is_same_v<T, std::string>)
      var = j.is_string() ? j.get<std::string>() : j.dump();
    else
      var = j.get<T>();
  }
};

struct Common {
  std::string config;
  std::string out = "out";
  std::uint64_t seed = 1;
  std::string tol;
  std::size_t max_steps = 100000;
  long denom_bound = 64;
};

Point parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "point must be 'x,y'");
  return {parse_rat(s.substr(0, comma)), parse_rat(s.substr(comma + 1))};
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, "bad integer list '" + s + "'");
    }
  }
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

QPolygon unit_square() { return QPolygon::box(Rat(0), Rat(0), Rat(1), Rat(1)); }

// Series from a file; a domain file supplies the domain when the series has none.
TropicalSeries load_series(const std::string& series_path, const std::string& domain_path) {
  if (series_path.empty()) {
    if (domain_path.empty()) throw Error(ErrorCode::ParseError, "need --series or --domain");
    return TropicalSeries::zero(polygon_from_json(read_json_file(domain_path)));
  }
  Json s = read_json_file(series_path);
  if (s.is_object() && s.contains("domain")) return series_from_json(s);
  if (domain_path.empty()) throw Error(ErrorCode::ParseError, "series file has no domain; pass --domain");
  return series_from_json(s, polygon_from_json(read_json_file(domain_path)));
}

std::optional<Rat> parse_tol(const std::string& s) {
  if (s.empty()) return std::nullopt;
  Rat t = parse_rat(s);
  if (t <= 0) throw Error(ErrorCode::ParseError, "tolerance must be positive");
  return t;
}

Rat parse_eps(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "--eps is required");
  Rat e = parse_rat(s);
  if (e <= 0) throw Error(ErrorCode::ParseError, "eps must be positive");
  return e;
}

Schedule parse_schedule(const std::string& kind, const std::string& order, std::uint64_t seed) {
  Schedule s;
  s.seed = seed;
  if (kind == "round-robin") {
    s.kind = ScheduleKind::RoundRobin;
  } else if (kind == "random") {
    s.kind = ScheduleKind::SeededRandom;
  } else if (kind == "explicit") {
    s.kind = ScheduleKind::Explicit;
    for (long i : parse_longs(order)) {
      if (i < 0) throw Error(ErrorCode::ParseError, "negative index in --order");
      s.order.push_back(static_cast<std::size_t>(i));
    }
  } else {
    throw Error(ErrorCode::ParseError, "unknown schedule '" + kind + "'");
  }
  return s;
}

Json curve_report(const TropicalSeries& f) {
  TropicalCurve c = extract_curve(f);
  Json j = to_json(c);
  Json kinds = Json::array();
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    if (!c.vertices[i].interior) continue;
    VertexClass vc = classify_vertex(c, i);
    kinds.push_back({{"vertex", i}, {"kind", to_string(vc.kind)}, {"description", vc.description}});
  }
  j["classification"] = kinds;
  j["balanced"] = check_balancing(c);
  j["smooth_or_nodal"] = smooth_or_nodal(c);
  if (auto a = symplectic_area(c)) j["symplectic_area"] = to_json(*a);
  j["boundary_area"] = to_json(boundary_area(f));
  return j;
}

Json degree_json(const TropicalSeries& f) {
  Json d = Json::array();
  for (long x : quasi_degree(f)) d.push_back(x);
  return d;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"Exact tropical series waves, dynamics and certificates"};
  app.require_subcommand(1);

  Common common;
  std::string domain, series, points, point, schedule = "round-robin", order, eps, degrees, events, poly, p1, p2;
  std::size_t trials = 100, n = 20, bins = 20, terms = 5;
  unsigned threads = 1;
  long range = 3;

  std::vector<std::pair<CLI::App*, std::unique_ptr<Bindings>>> subs;
  auto sub = [&](const std::string& name, const std::string& help) {
    CLI::App* s = app.add_subcommand(name, help);
    auto b = std::make_unique<Bindings>();
    s->add_option("--config", common.config, "JSON config; flags override its entries");
    b->add(s, "out", common.out, "Output directory");
    subs.emplace_back(s, std::move(b));
    return std::pair<CLI::App*, Bindings*>{s, subs.back().second.get()};
  };

  auto [wave_cmd, wave_b] = sub("wave", "Apply one wave G_p and render before/after");
  wave_b->add(wave_cmd, "domain", domain, "Domain JSON");
  wave_b->add(wave_cmd, "series", series, "Series JSON (zero series on --domain if omitted)");
  wave_b->add(wave_cmd, "point", point, "Point 'x,y' with p/q coordinates");

  auto [dyn_cmd, dyn_b] = sub("dynamics", "Run the wave dynamic G_P until it stops");
  dyn_b->add(dyn_cmd, "domain", domain, "Domain JSON");
  dyn_b->add(dyn_cmd, "series", series, "Starting series JSON (zero series if omitted)");
  dyn_b->add(dyn_cmd, "points", points, "Points JSON");
  dyn_b->add(dyn_cmd, "schedule", schedule, "round-robin, random or explicit");
  dyn_b->add(dyn_cmd, "order", order, "Explicit visiting order, e.g. 1,0,2");
  dyn_b->add(dyn_cmd, "seed", common.seed, "Seed for the random schedule");
  dyn_b->add(dyn_cmd, "tol", common.tol, "Stop when a sweep moves less than this in rho");
  dyn_b->add(dyn_cmd, "max_steps", common.max_steps, "Wave budget");

  auto [stats_cmd, stats_b] = sub("stats", "Avalanche-area statistics over random point sets");
  stats_b->add(stats_cmd, "domain", domain, "Domain JSON (unit square if omitted)");
  stats_b->add(stats_cmd, "n", n, "Points per trial");
  stats_b->add(stats_cmd, "trials", trials, "Number of trials");
  stats_b->add(stats_cmd, "seed", common.seed, "Base seed");
  stats_b->add(stats_cmd, "denom_bound", common.denom_bound, "Grid denominator bound");
  stats_b->add(stats_cmd, "max_steps", common.max_steps, "Wave budget per trial");
  stats_b->add(stats_cmd, "bins", bins, "Log histogram bins");
  stats_b->add(stats_cmd, "threads", threads, "Worker threads");

  auto [lift_cmd, lift_b] = sub("lift-check", "Check the characteristic-two lift on one instance or by fuzzing");
  lift_b->add(lift_cmd, "poly", poly, "Polynomial JSON; fuzz when omitted");
  lift_b->add(lift_cmd, "p1", p1, "First coordinate of p, e.g. t/(1+t)");
  lift_b->add(lift_cmd, "p2", p2, "Second coordinate of p");
  lift_b->add(lift_cmd, "trials", trials, "Fuzz trials");
  lift_b->add(lift_cmd, "seed", common.seed, "Fuzz seed");
  lift_b->add(lift_cmd, "terms", terms, "Terms per random polynomial");
  lift_b->add(lift_cmd, "range", range, "Exponent range of random polynomials");

  auto [nice_cmd, nice_b] = sub("make-nice", "Blow up corners until the series is nice");
  nice_b->add(nice_cmd, "domain", domain, "Domain JSON");
  nice_b->add(nice_cmd, "series", series, "Series JSON");
  nice_b->add(nice_cmd, "points", points, "Points JSON: certify G_P 0 against its nice restriction");
  nice_b->add(nice_cmd, "eps", eps, "Ball radius");

  auto [verge_cmd, verge_b] = sub("verge", "Smooth nice series hugging the boundary");
  verge_b->add(verge_cmd, "domain", domain, "Domain JSON");
  verge_b->add(verge_cmd, "degrees", degrees, "Quasi-degree per side, e.g. 2,1,2,1");
  verge_b->add(verge_cmd, "eps", eps, "Distance to the boundary");

  auto [coarsen_cmd, coarsen_b] = sub("coarsen", "Certify a decremented replay of a dynamic");
  coarsen_b->add(coarsen_cmd, "domain", domain, "Domain JSON");
  coarsen_b->add(coarsen_cmd, "series", series, "Starting series g");
  coarsen_b->add(coarsen_cmd, "events", events, "Event log (JSON lines) to replay");
  coarsen_b->add(coarsen_cmd, "points", points, "Points JSON: replay the dynamic G_P g instead");
  coarsen_b->add(coarsen_cmd, "eps", eps, "Closeness bound");
  coarsen_b->add(coarsen_cmd, "seed", common.seed, "Unused; echoed for reproducibility");
  coarsen_b->add(coarsen_cmd, "max_steps", common.max_steps, "Wave budget for --points");

  auto [curve_cmd, curve_b] = sub("curve", "Extract, classify and render a tropical curve");
  curve_b->add(curve_cmd, "domain", domain, "Domain JSON");
  curve_b->add(curve_cmd, "series", series, "Series JSON");
  curve_b->add(curve_cmd, "points", points, "Points JSON to mark");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? Ok : ParseFailure;
  }

  CLI::App* active = nullptr;
  Bindings* bind = nullptr;
  for (auto& [s, b] : subs)
    if (s->parsed()) active = s, bind = b.get();

  try {
    if (!common.config.empty()) bind->merge(read_json_file(common.config));
    if (common.max_steps < 1) throw Error(ErrorCode::ParseError, "max-steps must be at least 1");
    const std::string name = active->get_name();
    OutputBundle out(common.out);
    int rc = Ok;

    if (name == "wave") {
      if (point.empty()) throw Error(ErrorCode::ParseError, "--point is required");
      TropicalSeries f = load_series(series, domain);
      Point p = parse_point(point);
      auto [g, ev] = tropwave::wave(f, p);
      out.write_json("event.json", to_json(ev));
      out.write_json("after.json", to_json(g));
      out.write("before.svg", render_svg(f, {p}));
      out.write("after.svg", render_svg(g, {p}));
      std::cout << "c = " << to_string(ev.c) << "\n";
    } else if (name == "dynamics") {
      if (points.empty()) throw Error(ErrorCode::ParseError, "--points is required");
      TropicalSeries f = load_series(series, domain);
      std::vector<Point> pts = points_from_json(read_json_file(points));
      StopRule stop{parse_tol(common.tol), common.max_steps};
      DynamicsResult r = run_dynamics(f, pts, parse_schedule(schedule, order, common.seed), stop);
      Json summary = to_json(r);
      summary.erase("events");
      out.write("events.jsonl", event_log_lines(r.events));
      out.write_json("result.json", summary);
      out.write("final.svg", render_svg(r.final, pts));
      std::cout << "stopped_reason = " << to_string(r.reason) << " after " << r.steps << " waves\n";
      if (r.reason == StopReason::StepLimit) rc = NoConvergence;
    } else if (name == "stats") {
      QPolygon dom = domain.empty() ? unit_square() : polygon_from_json(read_json_file(domain));
      ExperimentConfig cfg{n, trials, common.seed, common.denom_bound, common.max_steps, bins, threads};
      ExperimentStats s = avalanche_experiment(dom, cfg);
      out.write_json("stats.json", to_json(s));
      std::cout << s.areas.size() << " avalanches, hill alpha = " << s.hill.alpha << "\n";
      if (s.unconverged > 0) rc = NoConvergence;
    } else if (name == "lift-check") {
      if (!poly.empty()) {
        if (p1.empty() || p2.empty()) throw Error(ErrorCode::ParseError, "--p1 and --p2 are required with --poly");
        LaurentPoly2 f = laurent_from_json(read_json_file(poly));
        GF2RatFun a = parse_gf2ratfun(p1), b = parse_gf2ratfun(p2);
        LiftCheck c = verify_lift_theorem(f, a, b);
        Json j = to_json(c);
        j["wave"] = to_json(s_wave(f, a, b));
        out.write_json("lift.json", j);
        std::cout << to_string(c.status) << "\n";
        if (c.status == LiftStatus::Mismatch) rc = CertificateFailure;
      } else {
        LiftFuzzReport r = lift_fuzz({trials, common.seed, terms, range});
        out.write_json("lift.json", to_json(r));
        std::cout << r.holds << "/" << r.trials << " hold\n";
        if (r.holds != r.trials || r.idempotent != r.trials || r.vanishes_at_p != r.trials) rc = CertificateFailure;
      }
    } else if (name == "make-nice") {
      Rat e = parse_eps(eps);
      if (!points.empty()) {
        if (domain.empty()) throw Error(ErrorCode::ParseError, "--domain is required with --points");
        QPolygon dom = polygon_from_json(read_json_file(domain));
        std::vector<Point> pts = points_from_json(read_json_file(points));
        NiceRestriction r = nice_restrict(dom, pts, e);
        out.write_json("nice.json", to_json(r));
        out.write("nice.svg", render_svg(r.restricted, pts));
        std::cout << (r.certified() ? "certified" : "NOT certified") << "\n";
        if (!r.certified()) rc = CertificateFailure;
      } else {
        NiceResult r = make_nice(load_series(series, domain), e);
        out.write_json("nice.json", to_json(r));
        out.write("nice.svg", render_svg(r.series));
        std::cout << r.steps.size() << " blow-ups\n";
      }
    } else if (name == "verge") {
      if (domain.empty()) throw Error(ErrorCode::ParseError, "--domain is required");
      QPolygon dom = polygon_from_json(read_json_file(domain));
      std::vector<long> d = parse_longs(degrees);
      TropicalSeries g = verge_polynomial(dom, d, parse_eps(eps));
      Json j = {{"series", to_json(g)}, {"quasi_degree", degree_json(g)}, {"curve", curve_report(g)}};
      j["all_smooth"] = all_smooth(extract_curve(g));
      out.write_json("verge.json", j);
      out.write("verge.svg", render_svg(g));
      std::cout << "verge polynomial with " << g.support().size() << " monomials\n";
    } else if (name == "coarsen") {
      Rat e = parse_eps(eps);
      TropicalSeries g = load_series(series, domain);
      std::vector<WaveEvent> evs;
      if (!events.empty()) {
        evs = events_from_lines(read_text(events));
      } else if (!points.empty()) {
        DynamicsResult r = run_dynamics(g, points_from_json(read_json_file(points)), {}, {std::nullopt, common.max_steps});
        if (r.reason == StopReason::StepLimit) throw Error(ErrorCode::PreconditionViolated, "dynamic did not stop");
        evs = r.events;
      }
      Json cert;
      try {
        CoarsenResult r = coarsen_dynamics(g, evs, e);
        Json families = Json::array();
        std::size_t collapsed = 0;
        for (std::size_t k = 0; k < r.plan.steps.size(); ++k) {
          const CoarsenStep& s = r.plan.steps[k];
          PerestroikaReport rep = scan_family(r.intermediate[k], s.v, s.decremented, 0, false);
          for (const auto& ev : rep.events)
            if (ev.kind == PerestroikaKind::FaceCollapsedToPoint || ev.kind == PerestroikaKind::FaceCollapsedToInterval)
              ++collapsed;
          Json jr = to_json(rep);
          jr["step"] = k;
          families.push_back(jr);
        }
        cert = to_json(r);
        cert["families"] = families;
        cert["face_collapsed_events"] = collapsed;
        cert["certified"] = collapsed == 0;
        if (collapsed != 0) rc = CertificateFailure;
      } catch (const Error& err) {
        if (exit_code_for(err.code()) != CertificateFailure) throw;
        cert = {{"certified", false}, {"error", err.what()}};
        rc = CertificateFailure;
      }
      out.write_json("coarsen.json", cert);
      std::cout << (rc == Ok ? "certified" : "NOT certified") << "\n";
    } else if (name == "curve") {
      TropicalSeries f = load_series(series, domain);
      std::vector<Point> pts = points.empty() ? std::vector<Point>{} : points_from_json(read_json_file(points));
      out.write_json("curve.json", curve_report(f));
      out.write("curve.svg", render_svg(f, pts));
    }
    out.finish(name, bind->echo());
    return rc;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return DomainViolation;
  }
}

}  // namespace tropwave::cli
