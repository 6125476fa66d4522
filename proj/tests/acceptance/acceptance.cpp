// Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tropwave/curve.hpp"
#include "tropwave/errors.hpp"
#include "tropwave/io.hpp"
#include "tropwave/lift2.hpp"
#include "tropwave/refine.hpp"
#include "tropwave/stats.hpp"

using namespace tropwave;
using namespace tropwave::testing;

namespace {

// Pinned budgets and tolerances.
constexpr double kWorkedWaveSeconds = 1.0;
constexpr double kSingleWaveSeconds = 30.0;
constexpr double kConvergenceSeconds = 120.0;
constexpr double kPropertySeconds = 600.0;
constexpr double kAreaSeconds = 600.0;
constexpr double kLiftSeconds = 60.0;
constexpr double kRefineSeconds = 300.0;
constexpr double kStatsSeconds = 120.0;
const Rat kRhoGap = rat(2, 1000000000);
constexpr int kPropertyTrials = 200;

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, double budget, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && secs > budget) {
    out.ok = false;
    out.detail = "over budget";
  }
  if (!out.ok) ++failures;
  std::printf("%s %-28s %8.2fs / %.0fs  %s\n", out.ok ? "PASS" : "FAIL", name.c_str(), secs, budget,
              out.detail.c_str());
  std::fflush(stdout);
}

std::string str(const Rat& r) { return to_string(r); }

Outcome worked_wave() {
  Outcome o;
  auto [g, ev] = wave(third_square_series(), {rat(1, 5), rat(1, 2)});
  MonomialMap want{{{2, 0}, Rat(0)}, {{1, 0}, rat(2, 15)}, {{0, 1}, Rat(0)},
                   {{-1, 0}, Rat(1)}, {{0, -1}, Rat(1)},   {{0, 0}, rat(1, 3)}};
  o.require(g.support() == want, "support differs from min(2x, x+2/15, y, 1-x, 1-y, 1/3)");
  o.require(ev.c == rat(2, 15), "increment " + str(ev.c));
  auto d = quasi_degree(g);
  const auto& hs = g.domain().halfplanes();
  for (std::size_t k = 0; k < hs.size(); ++k)
    o.require(d[k] == (hs[k].n == LatticeVec(1, 0) ? 2 : 1), "quasi-degree on side " + std::to_string(k));
  return o;
}

Outcome single_wave_closed_form() {
  Outcome o;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100 && o.ok; ++trial) {
    QPolygon dom = random_polygon(rng);
    Point p = random_points(rng, dom, 1)[0];
    TropicalSeries g = wave(TropicalSeries::zero(dom), p).first;
    Rat lp = oracle_distance(dom, p);
    for (const auto& z : random_points(rng, dom, 50))
      o.require(g.eval(z) == std::min(oracle_distance(dom, z), lp), "mismatch in trial " + std::to_string(trial));
  }
  return o;
}

Outcome convergence() {
  Outcome o;
  std::mt19937_64 rng(77);
  int exact = 0;
  Rat tol = rat(1, 1000000000);
  for (int trial = 0; trial < 20 && o.ok; ++trial) {
    QPolygon dom = random_polygon(rng);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    std::vector<Point> pts = random_points(rng, dom, n);
    TropicalSeries zero = TropicalSeries::zero(dom);
    StopRule stop{tol, 200000};
    DynamicsResult a = run_dynamics(zero, pts, {ScheduleKind::RoundRobin}, stop);
    DynamicsResult b = run_dynamics(zero, pts, {ScheduleKind::SeededRandom, 1000u + trial}, stop);
    std::string tag = "trial " + std::to_string(trial);
    o.require(a.reason != StopReason::StepLimit && b.reason != StopReason::StepLimit, tag + " hit the step limit");
    if (a.reason == StopReason::Stabilized && b.reason == StopReason::Stabilized) {
      ++exact;
      o.require(a.final == b.final, tag + " schedules disagree");
      for (const auto& p : pts) o.require(wave(a.final, p).second.c == 0, tag + " final curve misses a point");
    } else {
      o.require(rho(a.final, b.final) < kRhoGap, tag + " rho gap " + str(rho(a.final, b.final)));
      // Within tolerance of the limit: one more wave at p moves the series by less than the gap.
      for (const auto& p : pts)
        for (const auto* r : {&a, &b}) o.require(wave(r->final, p).second.c < kRhoGap, tag + " point not reached");
    }
  }
  if (o.ok) o.detail = std::to_string(exact) + "/20 stabilized exactly";
  return o;
}

TropicalSeries random_above(std::mt19937_64& rng, const TropicalSeries& f) {
  auto it = f.support().begin();
  std::advance(it, std::uniform_int_distribution<std::size_t>(0, f.support().size() - 1)(rng));
  TropicalSeries g = add_monomial(f, it->first, random_rat(rng, 0, 1, 16));
  return wave(g, random_points(rng, f.domain(), 1)[0]).first;
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 rng(31337);
  for (int t = 0; t < kPropertyTrials && o.ok; ++t) {
    QPolygon dom = random_polygon(rng);
    TropicalSeries f = random_series(rng, dom, 2);
    TropicalSeries above = random_above(rng, f);
    TropicalSeries other = random_series(rng, dom, 2);
    Point p = random_points(rng, dom, 1)[0];
    TropicalSeries gf = wave(f, p).first;
    std::string tag = " (trial " + std::to_string(t) + ")";

    TropicalSeries ga = wave(above, p).first;
    for (const auto& z : random_points(rng, dom, 10)) o.require(gf.eval(z) <= ga.eval(z), "monotonicity" + tag);

    o.require(rho(gf, wave(other, p).first) <= rho(f, other), "non-expansion" + tag);

    auto [twice, ev] = wave(gf, p);
    o.require(twice == gf && ev.c == 0, "idempotence" + tag);

    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 4)(rng);
    std::vector<Point> pts = random_points(rng, dom, n);
    DynamicsResult r = run_dynamics(TropicalSeries::zero(dom), pts, {}, {std::nullopt, 12});
    for (const auto& z : random_points(rng, dom, 10))
      o.require(r.final.eval(z) <= Rat(static_cast<long>(n)) * oracle_distance(dom, z), "upper bound" + tag);

    TropicalSeries h = random_series(rng, dom, 3);
    TropicalCurve c = extract_curve(h);
    o.require(check_balancing(c), "balancing" + tag);
    for (const auto& e : c.edges) {
      LatticeVec d = e.u - e.v;
      o.require(e.weight == std::gcd(std::abs(d.i), std::abs(d.j)), "edge weight" + tag);
      Point mid = rat(1, 2) * (c.vertices[e.a].p + c.vertices[e.b].p);
      o.require(dot(e.u, mid) + h.support().at(e.u) == h.eval(mid), "edge dual monomial" + tag);
    }
  }
  // Perturbation closeness: 200 admissible perturbations.
  int tested = 0;
  for (int attempt = 0; tested < kPropertyTrials && attempt < 10 * kPropertyTrials && o.ok; ++attempt) {
    QPolygon dom = random_polygon(rng);
    TropicalSeries f = random_series(rng, dom, 3);
    Rat eps = random_rat(rng, 0, 1, 64) / 4 + rat(1, 512);
    MonomialMap m = f.support();
    std::uniform_int_distribution<long> step(-8, 8);
    for (auto& [v, a] : m) {
      bool side = false;
      for (const auto& hp : dom.halfplanes()) side |= primitive(v) == hp.n;
      if (!side) a += eps * rat(step(rng), 8);
    }
    std::optional<TropicalSeries> g;
    try {
      g = TropicalSeries::from_min(dom, m);
    } catch (const Error&) {
      continue;
    }
    o.require(rho(f, *g) <= eps, "perturbation exceeds eps");
    o.require(curves_within(f, *g, eps) && curves_within(*g, f, eps),
              "curves not 2eps-close (attempt " + std::to_string(attempt) + ")");
    ++tested;
  }
  o.require(tested == kPropertyTrials, "only " + std::to_string(tested) + " perturbation trials");
  if (o.ok) o.detail = "7 properties x " + std::to_string(kPropertyTrials) + " trials";
  return o;
}

Outcome areas() {
  Outcome o;
  std::mt19937_64 rng(555);
  int instances = 0, comparisons = 0, attempts = 0;
  while (instances < 50 && o.ok && attempts < 500) {
    ++attempts;
    QPolygon dom = random_polygon(rng);
    TropicalSeries f = random_series(rng, dom, 3);
    auto sa = symplectic_area(extract_curve(f));
    o.require(sa && *sa == boundary_area(f), "area identity fails");

    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    std::vector<Point> pts = random_points(rng, dom, n);
    DynamicsResult lim = run_dynamics(TropicalSeries::zero(dom), pts, {}, {std::nullopt, 4000});
    if (lim.reason != StopReason::Stabilized) continue;  // need G_P 0 exactly
    ++instances;
    Rat base = *symplectic_area(extract_curve(lim.final));
    o.require(base == boundary_area(lim.final), "area identity fails on G_P 0");
    for (int k = 0; k < 20 && o.ok; ++k) {
      TropicalSeries h = random_series(rng, dom, 1 + k % 3);
      TropicalSeries g = upper_bound_witness(h, pts);
      if (k % 2 == 1) {
        DynamicsResult r = run_dynamics(h, pts, {}, {std::nullopt, 4000});
        if (r.reason == StopReason::Stabilized) g = r.final;
      }
      for (const auto& p : pts) o.require(wave(g, p).second.c == 0, "sampled g is smooth at a point of P");
      auto ga = symplectic_area(extract_curve(g));
      o.require(ga && *ga == boundary_area(g), "area identity fails on sampled g");
      o.require(base <= *ga, "Area(C(G_P 0)) > Area(C(g)): " + str(base) + " vs " + str(*ga));
      ++comparisons;
    }
  }
  o.require(instances == 50, "only " + std::to_string(instances) + " stabilized instances");
  if (o.ok) o.detail = std::to_string(instances) + " instances, " + std::to_string(comparisons) + " comparisons";
  return o;
}

Outcome lift() {
  Outcome o;
  LiftFuzzReport r = lift_fuzz({1000, 1, 5, 3});
  o.require(r.trials == 1000, "trials");
  o.require(r.holds == 1000 && r.mismatches == 0, "mismatch: " + r.counterexample.value_or(""));
  o.require(r.idempotent == 1000, "idempotence");
  o.require(r.vanishes_at_p == 1000, "(S_p F)(p) != 0");
  if (o.ok) o.detail = "1000 holds, " + std::to_string(r.redrawn) + " non-generic draws replaced";
  return o;
}

Outcome refinement() {
  Outcome o;
  std::mt19937_64 rng(4242);
  std::size_t blowups = 0, replayed = 0;

  // Smooth nice series hugging the boundary.
  for (int i = 0; i < 10 && o.ok; ++i) {
    Rat w = Rat(1 + i % 3), h = Rat(1 + (i / 3) % 2);
    QPolygon dom = i % 4 == 3 ? QPolygon::from_vertices({{Rat(0), Rat(0)}, {w, Rat(0)}, {Rat(0), w}})
                              : QPolygon::box(Rat(0), Rat(0), w, h);
    std::vector<long> d;
    do {
      d.clear();
      for (std::size_t k = 0; k < dom.halfplanes().size(); ++k) d.push_back(std::uniform_int_distribution<long>(1, 2)(rng));
    } while (!is_nice_degree(d));
    Rat eps = rat(1, 10);
    TropicalSeries g = verge_polynomial(dom, d, eps);
    o.require(is_nice(g) && quasi_degree(g) == d, "verge output not nice");
    TropicalCurve c = extract_curve(g);
    o.require(all_smooth(c), "verge curve not smooth");
    for (const auto& v : c.vertices) o.require(dom.boundary_dist2(v.p) <= eps * eps, "verge curve leaves the eps band");
  }

  // Corner blow-ups.
  for (int i = 0; i < 10 && o.ok; ++i) {
    QPolygon dom = random_polygon(rng);
    TropicalSeries f = random_series(rng, dom, 2);
    std::optional<NiceResult> r;
    Rat eps = rat(1, 8);
    for (; !r; eps /= 2) {
      try {
        r = make_nice(f, eps);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EpsilonTooLarge) throw;
      }
    }
    eps *= 2;
    blowups += r->steps.size();
    o.require(is_nice(r->series) && is_unimodular(r->domain), "make_nice output not nice");
    for (const auto& z : random_points(rng, dom, 60)) {
      bool far = true;
      for (const auto& v : dom.vertices()) far &= dist2(z, v) >= eps * eps;
      if (!far) continue;
      o.require(r->domain.contains(z) && r->series.eval(z) == f.eval(z), "make_nice changed f outside the balls");
    }
  }

  // Decremented replays.
  for (int i = 0; i < 10 && o.ok; ++i) {
    Rat w = Rat(1 + i % 3), h = Rat(1);
    Rat c0 = random_rat(rng, 0, 1, 16) * h / 2;
    if (c0 == 0) c0 = rat(1, 16);
    MonomialMap m{{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}, {{-1, 0}, w}, {{0, -1}, h}, {{0, 0}, c0}};
    TropicalSeries g = TropicalSeries::from_min(QPolygon::box(Rat(0), Rat(0), w, h), m);
    std::vector<Point> pts;
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, 3)(rng);
    for (std::size_t k = 0; k < n; ++k) {
      Point p{h / 2 + (w - h) * random_rat(rng, 0, 1, 8), h / 2};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    DynamicsResult r = run_dynamics(g, pts);
    Rat eps = rat(1, 10);
    CoarsenResult cr = coarsen_dynamics(g, r.events, eps);
    replayed += cr.plan.steps.size();
    for (const auto& s : cr.intermediate) o.require(smooth_or_nodal(extract_curve(s)), "intermediate curve not certified");
    o.require(smooth_or_nodal(extract_curve(cr.final)), "final curve not certified");
    o.require(curves_within(cr.final, cr.reference, eps) && curves_within(cr.reference, cr.final, eps),
              "final curve not eps-close");
  }
  o.require(blowups > 0 && replayed > 0, "pipeline exercised no blow-ups or no replayed waves");
  if (o.ok)
    o.detail = "10 verge, 10 make_nice (" + std::to_string(blowups) + " blow-ups), 10 coarsen (" +
               std::to_string(replayed) + " waves)";
  return o;
}

Outcome avalanche() {
  Outcome o;
  ExperimentConfig cfg;
  cfg.n = 8;
  cfg.trials = 40;
  cfg.seed = 9;
  std::string first = dump(to_json(avalanche_experiment(unit_square(), cfg)));
  std::string second = dump(to_json(avalanche_experiment(unit_square(), cfg)));
  cfg.threads = 3;
  ExperimentStats s = avalanche_experiment(unit_square(), cfg);
  std::string threaded = dump(to_json(s));
  cfg.threads = 1;
  o.require(first == second, "repeat run differs");
  o.require(first == threaded, "thread count changes the output");
  o.require(!s.ccdf.empty() && s.ccdf.front().second == 1, "ccdf does not start at 1");
  for (std::size_t i = 1; i < s.ccdf.size(); ++i)
    o.require(s.ccdf[i - 1].first < s.ccdf[i].first && s.ccdf[i].second <= s.ccdf[i - 1].second, "ccdf not monotone");
  o.require(s.hill.k_tail > 0 && !std::isnan(s.hill.alpha), "hill estimate missing");
  Json j = parse_json(first);
  o.require(j.contains("hill") && j["hill"].contains("alpha"), "hill not serialized");
  if (o.ok) {
    std::ostringstream os;
    os << s.areas.size() << " avalanches, alpha = " << s.hill.alpha << " (k = " << s.hill.k_tail << ")";
    o.detail = os.str();
  }
  return o;
}

}  // namespace

int main() {
  criterion("worked-wave-exact", kWorkedWaveSeconds, worked_wave);
  criterion("single-wave-closed-form", kSingleWaveSeconds, single_wave_closed_form);
  criterion("convergence-order", kConvergenceSeconds, convergence);
  criterion("property-suite", kPropertySeconds, properties);
  criterion("area-identities", kAreaSeconds, areas);
  criterion("lift-fuzz", kLiftSeconds, lift);
  criterion("refinement-pipeline", kRefineSeconds, refinement);
  criterion("avalanche-determinism", kStatsSeconds, avalanche);
  std::printf("%s: %d failing criteria\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
