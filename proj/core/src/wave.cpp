#include "tropwave/wave.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>

#include "tropwave/errors.hpp"

namespace tropwave {

namespace {

Rat cell_area(const TropicalSeries& f, LatticeVec v) {
  const Cell* c = f.cell(v);
  return c ? area(c->poly) : Rat(0);
}

}  // namespace

std::pair<TropicalSeries, WaveEvent> wave(const TropicalSeries& f, const Point& p) {
  const QPolygon& dom = f.domain();
  if (!dom.interior(p)) throw Error(ErrorCode::OutsideDomain, "wave point must be interior");
  WaveEvent ev;
  ev.p = p;
  auto act = f.active_at(p);
  ev.v = act.front();
  if (act.size() >= 2) return {f, ev};

  const LatticeVec k = ev.v;
  const Rat fk = dot(k, p) + f.support().at(k);
  // Any candidate value bounds f'(p); monomials with |u| R_p > bound cannot beat it.
  std::optional<Rat> best;
  auto offer = [&](LatticeVec u, const Rat& val) {
    if (u != k && (!best || val < *best)) best = val;
  };
  for (const auto& [u, a] : f.support()) offer(u, dot(u, p) + a);
  for (const auto& h : dom.halfplanes()) {
    if (h.n != k) offer(h.n, dot(h.n, p) + canonical_coefficient(f, h.n));
  }
  Rat r2 = dom.boundary_dist2(p);
  Rat bound2 = *best * *best / r2;
  long r = static_cast<long>(std::floor(sqrt_upper(bound2, 16).get_d())) + 1;
  for (long i = -r; i <= r; ++i) {
    for (long j = -r; j <= r; ++j) {
      if (Rat(i * i + j * j) > bound2) continue;
      LatticeVec u{i, j};
      if (u == k || f.support().count(u)) continue;
      Rat up = dot(u, p);
      if (up - *support_coeff(dom, u) >= *best) continue;
      offer(u, up + canonical_coefficient(f, u));
    }
  }
  ev.c = *best - fk;
  TropicalSeries g = add_monomial(f, k, ev.c);
  ev.avalanche_area = cell_area(f, k);
  ev.swept_area = ev.avalanche_area - cell_area(g, k);
  return {g, ev};
}

TropicalSeries upper_bound_witness(const TropicalSeries& f, const std::vector<Point>& points) {
  if (points.empty()) return f;
  const QPolygon& dom = f.domain();
  TropicalSeries l = distance_function(dom);
  TropicalSeries acc = f;
  for (const auto& p : points) {
    if (!dom.interior(p)) throw Error(ErrorCode::OutsideDomain, "witness point must be interior");
    MonomialMap clamp = l.support();
    clamp[{0, 0}] = l.value(p);
    acc = tropical_product(acc, TropicalSeries::from_min(dom, clamp));
  }
  return acc;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Stabilized: return "Stabilized";
    case StopReason::ToleranceReached: return "ToleranceReached";
    case StopReason::StepLimit: return "StepLimit";
  }
  return "StepLimit";
}

DynamicsResult run_dynamics(const TropicalSeries& f, const std::vector<Point>& points, const Schedule& schedule,
                            const StopRule& stop) {
  DynamicsResult res{f, {}, StopReason::Stabilized, 0, 0, std::nullopt};
  if (points.empty()) return res;
  for (const auto& p : points) {
    if (!f.domain().interior(p)) throw Error(ErrorCode::OutsideDomain, "dynamics points must be interior");
  }
  std::vector<std::size_t> base;
  if (schedule.kind == ScheduleKind::Explicit) {
    base = schedule.order;
    std::set<std::size_t> seen(base.begin(), base.end());
    if (seen.size() != points.size() || *seen.rbegin() >= points.size()) {
      throw Error(ErrorCode::PreconditionViolated, "explicit order must visit every point");
    }
  } else {
    for (std::size_t i = 0; i < points.size(); ++i) base.push_back(i);
  }
  std::mt19937_64 rng(schedule.seed);
  TropicalSeries cur = f;
  for (;;) {
    std::vector<std::size_t> order = base;
    if (schedule.kind == ScheduleKind::SeededRandom) {
      for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
    }
    TropicalSeries start = cur;
    bool quiet = true;
    for (auto idx : order) {
      if (res.steps >= stop.max_steps) {
        res.final = cur;
        res.reason = StopReason::StepLimit;
        return res;
      }
      auto [next, ev] = wave(cur, points[idx]);
      ev.step = res.steps++;
      if (ev.c != 0) quiet = false;
      res.events.push_back(std::move(ev));
      cur = std::move(next);
    }
    ++res.sweeps;
    if (quiet) {
      res.final = cur;
      res.reason = StopReason::Stabilized;
      return res;
    }
    if (stop.tolerance) res.last_sweep_rho = rho(start, cur);
    if (stop.tolerance && *res.last_sweep_rho < *stop.tolerance) {
      res.final = cur;
      res.reason = StopReason::ToleranceReached;
      return res;
    }
  }
}

const char* to_string(PerestroikaKind k) {
  switch (k) {
    case PerestroikaKind::NodalPerestroika: return "NodalPerestroika";
    case PerestroikaKind::FaceCollapsedToPoint: return "FaceCollapsedToPoint";
    case PerestroikaKind::FaceCollapsedToInterval: return "FaceCollapsedToInterval";
    case PerestroikaKind::SideContracted: return "SideContracted";
  }
  return "SideContracted";
}

TropicalSeries family_member(const TropicalSeries& f, LatticeVec v, const Rat& c, const Rat& t) {
  return add_monomial(f, v, c * t);
}

namespace {

// n.z + b + s t >= 0
struct Constraint {
  LatticeVec n;
  Rat b, s;
  std::optional<LatticeVec> mono;
  std::optional<std::size_t> side;
};

struct FaceType {
  Polygon poly;
  Rat area;
  std::vector<std::size_t> sides;  // cyclic, by normal angle
};

FaceType face_at(const Polygon& outline, const std::vector<Constraint>& cs, const Rat& t) {
  FaceType ft;
  ft.poly = outline;
  for (const auto& c : cs) ft.poly = clip(ft.poly, c.n, c.b + c.s * t);
  ft.poly = simplify(ft.poly);
  ft.area = ft.poly.size() >= 3 ? area(ft.poly) : Rat(0);
  if (ft.area == 0) return ft;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    int on = 0;
    for (const auto& z : ft.poly) {
      if (dot(cs[i].n, z) + cs[i].b + cs[i].s * t == 0) ++on;
    }
    if (on >= 2) ft.sides.push_back(i);
  }
  std::sort(ft.sides.begin(), ft.sides.end(),
            [&](std::size_t a, std::size_t b) { return angle_less(cs[a].n, cs[b].n); });
  return ft;
}

std::optional<Rat> lambda_of(LatticeVec d, LatticeVec d1, LatticeVec d2) {
  LatticeVec s = d1 + d2;
  if (det(s, d) != 0) return std::nullopt;
  return rat(s.i * d.i + s.j * d.j, d.norm2());
}

std::pair<std::size_t, std::size_t> neighbours(const std::vector<std::size_t>& cyc, std::size_t pos) {
  std::size_t m = cyc.size();
  return {cyc[(pos + m - 1) % m], cyc[(pos + 1) % m]};
}

Rat mpq_det3(const std::array<LatticeVec, 3>& n, const std::array<Rat, 3>& col) {
  return Rat(n[0].i) * (Rat(n[1].j) * col[2] - col[1] * n[2].j) - Rat(n[0].j) * (Rat(n[1].i) * col[2] - col[1] * n[2].i) +
         col[0] * Rat(n[1].i * n[2].j - n[1].j * n[2].i);
}

}  // namespace

PerestroikaReport wave_family_scan(const TropicalSeries& f, const Point& p, std::size_t samples, bool strict) {
  auto [g1, ev] = wave(f, p);
  if (ev.c == 0) {
    PerestroikaReport rep;
    rep.v = ev.v;
    rep.c = 0;
    return rep;
  }
  return scan_family(f, ev.v, ev.c, samples, strict);
}

PerestroikaReport scan_family(const TropicalSeries& f, LatticeVec k, const Rat& c, std::size_t samples, bool strict) {
  if (c <= 0) throw Error(ErrorCode::PreconditionViolated, "family increment must be positive");
  TropicalSeries g1 = add_monomial(f, k, c);
  PerestroikaReport rep;
  rep.v = k;
  rep.c = c;
  const Rat ak = canonical_coefficient(f, k);
  const QPolygon& dom = f.domain();

  std::vector<Constraint> cs;
  for (std::size_t s = 0; s < dom.num_sides(); ++s) {
    const auto& h = dom.halfplanes()[s];
    cs.push_back({h.n, h.a, 0, std::nullopt, s});
  }
  for (const auto& [u, a] : g1.support()) {
    if (u == k) continue;
    cs.push_back({u - k, a - ak, -c, u, std::nullopt});
  }

  // Three constraint lines are concurrent where a 3x3 determinant linear in t vanishes.
  std::set<Rat> crit;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      for (std::size_t l = j + 1; l < cs.size(); ++l) {
        std::array<LatticeVec, 3> n{cs[i].n, cs[j].n, cs[l].n};
        Rat d0 = mpq_det3(n, {cs[i].b, cs[j].b, cs[l].b});
        Rat d1 = mpq_det3(n, {cs[i].s, cs[j].s, cs[l].s});
        if (d1 == 0) continue;
        Rat t = -d0 / d1;
        if (t > 0 && t <= 1) crit.insert(t);
      }
    }
  }
  crit.insert(Rat(1));
  rep.critical_times.assign(crit.begin(), crit.end());

  const Polygon& outline = dom.outline();
  FaceType initial = face_at(outline, cs, Rat(0));
  TropicalCurve curve0 = extract_curve(f);
  for (std::size_t pos = 0; pos < initial.sides.size(); ++pos) {
    const Constraint& c = cs[initial.sides[pos]];
    auto [a, b] = neighbours(initial.sides, pos);
    FaceSide side{c.mono, c.side, lambda_of(c.n, cs[a].n, cs[b].n), false};
    side.shrinking = side.lambda && *side.lambda < 2;
    if (strict) {
      for (const auto& z : initial.poly) {
        if (dot(c.n, z) + c.b != 0 || !dom.interior(z)) continue;
        auto idx = curve0.find_vertex(z);
        if (!idx || classify_vertex(curve0, *idx).kind != VertexKind::Smooth) {
          throw Error(ErrorCode::UnclassifiableSide, "face side ends at a non-smooth vertex");
        }
      }
    }
    rep.sides.push_back(side);
  }

  std::vector<Rat> ts(crit.begin(), crit.end());
  std::vector<FaceType> before;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    Rat lo = i == 0 ? Rat(0) : ts[i - 1];
    before.push_back(face_at(outline, cs, Rat((lo + ts[i]) / 2)));
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rat& t = ts[i];
    FaceType at = face_at(outline, cs, t);
    if (at.area == 0) {
      std::set<Point, decltype(&lex_less)> distinct(at.poly.begin(), at.poly.end(), &lex_less);
      rep.events.push_back({t, distinct.size() <= 1 ? PerestroikaKind::FaceCollapsedToPoint
                                                    : PerestroikaKind::FaceCollapsedToInterval,
                            std::nullopt, std::nullopt});
      rep.type_changes.push_back(t);
      break;
    }
    if (before[i].sides != at.sides || (i + 1 < ts.size() && before[i + 1].sides != at.sides)) {
      rep.type_changes.push_back(t);
    }
    std::set<std::size_t> now(at.sides.begin(), at.sides.end());
    for (std::size_t pos = 0; pos < before[i].sides.size(); ++pos) {
      std::size_t id = before[i].sides[pos];
      if (now.count(id)) continue;
      auto [a, b] = neighbours(before[i].sides, pos);
      auto lam = lambda_of(cs[id].n, cs[a].n, cs[b].n);
      bool nodal = lam && *lam == 1 && now.count(a) && now.count(b);
      rep.events.push_back({t, nodal ? PerestroikaKind::NodalPerestroika : PerestroikaKind::SideContracted,
                            cs[id].mono, lam});
    }
  }

  for (std::size_t j = 1; j <= samples; ++j) {
    Rat t = rat(static_cast<long>(j), static_cast<long>(samples));
    TropicalSeries ft = family_member(f, k, c, t);
    rep.samples.emplace_back(t, smooth_or_nodal(extract_curve(ft)));
  }
  return rep;
}

}  // namespace tropwave
