#include "tropwave/refine.hpp"

#include <algorithm>
#include <set>

#include "tropwave/errors.hpp"

namespace tropwave {

QPolygon level_set_polygon(const TropicalSeries& f, const Rat& eps) {
  if (eps <= 0) throw Error(ErrorCode::PreconditionViolated, "level must be positive");
  auto hps = f.domain().halfplanes();
  for (const auto& [u, a] : f.support()) {
    if (u.is_zero()) {
      if (a < eps) throw Error(ErrorCode::EmptyLevelSet, "constant term below the level");
      continue;
    }
    hps.push_back({u, Rat(a - eps)});
  }
  try {
    return QPolygon(std::move(hps));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotAdmissible) throw Error(ErrorCode::EmptyLevelSet, "level set has empty interior");
    throw;
  }
}

namespace {

TropicalSeries stabilized(const QPolygon& dom, const std::vector<Point>& points) {
  auto res = run_dynamics(TropicalSeries::zero(dom), points);
  if (res.reason != StopReason::Stabilized) throw Error(ErrorCode::CertificationFailed, "dynamics did not stabilize");
  return res.final;
}

}  // namespace

bool level_shift_check(const QPolygon& dom, const std::vector<Point>& points, const Rat& eps) {
  if (points.empty()) return true;
  TropicalSeries full = stabilized(dom, points);
  for (const auto& p : points) {
    if (full.value(p) < eps) throw Error(ErrorCode::HypothesisViolated, "a point lies below the level");
  }
  QPolygon inner = level_set_polygon(full, eps);
  TropicalSeries shifted = stabilized(inner, points);
  for (const auto& z : refinement_vertices(full.cells(), shifted.cells(), inner.outline())) {
    if (full.value(z) != shifted.value(z) + eps) return false;
  }
  for (const auto& z : full.vertices()) {
    if (!inner.contains(z) && full.value(z) > eps) return false;
  }
  return true;
}

namespace {

// s * a + t * b = gcd(a, b) >= 0
long egcd(long a, long b, long& s, long& t) {
  long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    long q = a / b;
    long r = a - q * b;
    a = b;
    b = r;
    long s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

}  // namespace

std::vector<LatticeVec> regular_fan(LatticeVec a, LatticeVec b) {
  if (!is_primitive(a) || !is_primitive(b) || det(a, b) <= 0) {
    throw Error(ErrorCode::PreconditionViolated, "fan needs primitive vectors with det(a, b) > 0");
  }
  std::vector<LatticeVec> fan{a};
  LatticeVec cur = a;
  while (det(cur, b) > 1) {
    long s, t;
    egcd(cur.i, cur.j, s, t);
    LatticeVec w0{-t, s};  // det(cur, w0) = 1
    long d = det(cur, b);
    long v0 = det(w0, b);
    long v = ((v0 % d) + d) % d;
    LatticeVec w = w0 + cur * ((v - v0) / d);
    fan.push_back(w);
    cur = w;
  }
  fan.push_back(b);
  return fan;
}

namespace {

// Least multiplier m with m (w.r) > min_u (u.r) on every ray r of the corner cone.
long cut_multiplier(LatticeVec a, LatticeVec b, const std::vector<LatticeVec>& local, LatticeVec w) {
  std::vector<LatticeVec> rays{rot90(a), -rot90(b)};
  for (std::size_t i = 0; i < local.size(); ++i) {
    for (std::size_t j = i + 1; j < local.size(); ++j) {
      LatticeVec r = rot90(local[i] - local[j]);
      for (LatticeVec s : {r, -r}) {
        if (s.i * a.i + s.j * a.j >= 0 && s.i * b.i + s.j * b.j >= 0) rays.push_back(s);
      }
    }
  }
  Rat worst = 0;
  for (const auto& r : rays) {
    long den = w.i * r.i + w.j * r.j;
    if (den <= 0) continue;
    long num = 0;
    bool first = true;
    for (const auto& u : local) {
      long val = u.i * r.i + u.j * r.j;
      if (first || val < num) num = val;
      first = false;
    }
    worst = std::max(worst, rat(num, den));
  }
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), worst.get_num_mpz_t(), worst.get_den_mpz_t());
  return fl.get_si() + 1;
}

struct FanEntry {
  LatticeVec w;
  long degree;
};

std::vector<FanEntry> target_fan(LatticeVec a, LatticeVec b, long da, long db, const std::vector<LatticeVec>& local) {
  std::vector<FanEntry> fan;
  auto base = regular_fan(a, b);
  for (std::size_t i = 0; i < base.size(); ++i) {
    long deg = i == 0 ? da : (i + 1 == base.size() ? db : cut_multiplier(a, b, local, base[i]));
    fan.push_back({base[i], deg});
  }
  for (int guard = 0;; ++guard) {
    if (guard > 10000) throw Error(ErrorCode::CertificationFailed, "corner fan does not become nice");
    std::size_t i = 0;
    while (i + 1 < fan.size() && !(fan[i].degree > 1 && fan[i + 1].degree > 1)) ++i;
    if (i + 1 >= fan.size()) break;
    LatticeVec s = fan[i].w + fan[i + 1].w;
    fan.insert(fan.begin() + static_cast<long>(i) + 1, FanEntry{s, cut_multiplier(a, b, local, s)});
  }
  return fan;
}

bool inside_ball(const Point& z, const Point& centre, const Rat& eps2) { return dist2(z, centre) < eps2; }

// Vertices of the closure of {cut < f} inside region all lie in the ball.
bool modification_in_ball(const TropicalSeries& f, LatticeVec mw, const Rat& coef, const Polygon& region,
                          const Point& centre, const Rat& eps2) {
  for (const auto& cell : f.cells()) {
    Polygon piece = intersect(cell.poly, region);
    if (piece.empty()) continue;
    piece = clip(piece, cell.v - mw, cell.a - coef);
    for (const auto& z : piece) {
      if (!inside_ball(z, centre, eps2)) return false;
    }
  }
  return true;
}

struct CornerAttempt {
  QPolygon poly;
  std::vector<BlowupStep> steps;
  MonomialMap cuts;
};

std::optional<CornerAttempt> try_corner(const TropicalSeries& f, const QPolygon& start, std::size_t corner_id,
                                        const Point& origin, const std::vector<FanEntry>& inserts, const Rat& eta0,
                                        const Rat& eps2) {
  CornerAttempt att{start, {}, {}};
  Rat eta = eta0;
  for (const auto& entry : inserts) {
    std::optional<Corner> target;
    for (const auto& c : corners(att.poly)) {
      if (inside_ball(c.apex, origin, eps2) && cone_interior_contains(c, entry.w)) target = c;
    }
    if (!target) return std::nullopt;
    bool placed = false;
    for (int halve = 0; halve < 24 && !placed; ++halve, eta /= 2) {
      QPolygon next = att.poly;
      try {
        next = blow_up(att.poly, *target, entry.w, eta);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::TooLarge) continue;
        throw;
      }
      bool ok = true;
      for (const auto& v : next.vertices()) {
        bool old = std::find(att.poly.vertices().begin(), att.poly.vertices().end(), v) != att.poly.vertices().end();
        if (!old && !inside_ball(v, origin, eps2)) ok = false;
      }
      if (!ok) continue;
      Rat offset = dot(entry.w, target->apex) + eta;
      BlowupStep step{corner_id, target->apex, entry.w, entry.degree, eta,
                      simplify(clip(att.poly.outline(), -entry.w, offset))};
      LatticeVec mw = entry.w * entry.degree;
      Rat coef = -Rat(entry.degree) * offset;
      auto it = att.cuts.find(mw);
      if (it == att.cuts.end() || coef < it->second) att.cuts[mw] = coef;
      att.steps.push_back(std::move(step));
      att.poly = next;
      placed = true;
    }
    if (!placed) return std::nullopt;
  }
  for (const auto& [mw, coef] : att.cuts) {
    if (!modification_in_ball(f, mw, coef, att.poly.outline(), origin, eps2)) return std::nullopt;
  }
  return att;
}

}  // namespace

NiceResult make_nice(const TropicalSeries& f, const Rat& eps) {
  if (eps <= 0) throw Error(ErrorCode::PreconditionViolated, "eps must be positive");
  const QPolygon& dom = f.domain();
  auto deg = quasi_degree(f);
  auto cs = corners(dom);
  const std::size_t m = cs.size();
  Rat eps2 = eps * eps;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (dist2(cs[i].apex, cs[j].apex) < 4 * eps2) throw Error(ErrorCode::EpsilonTooLarge, "corner balls overlap");
    }
  }
  QPolygon cur = dom;
  std::vector<BlowupStep> steps;
  MonomialMap monos = f.support();
  for (std::size_t k = 0; k < m; ++k) {
    LatticeVec a = cs[k].n1, b = cs[k].n2;
    long da = deg[(k + m - 1) % m], db = deg[k];
    if (det(a, b) == 1 && !(da > 1 && db > 1)) continue;
    std::vector<LatticeVec> local;
    for (const auto& [u, c] : f.support()) {
      if (dot(u, cs[k].apex) + c == 0) local.push_back(u);
    }
    auto fan = target_fan(a, b, da, db, local);
    std::vector<FanEntry> inserts(fan.begin() + 1, fan.end() - 1);
    std::stable_sort(inserts.begin(), inserts.end(), [](const FanEntry& x, const FanEntry& y) {
      if (x.w.norm2() != y.w.norm2()) return x.w.norm2() < y.w.norm2();
      return x.w < y.w;
    });
    std::optional<CornerAttempt> done;
    Rat eta = eps;
    for (int s = 0; s < 40 && !done; ++s, eta /= 2) done = try_corner(f, cur, k, cs[k].apex, inserts, eta, eps2);
    if (!done) throw Error(ErrorCode::CertificationFailed, "no admissible blow-up depth at corner " + std::to_string(k));
    cur = done->poly;
    steps.insert(steps.end(), done->steps.begin(), done->steps.end());
    for (const auto& [mw, coef] : done->cuts) {
      auto it = monos.find(mw);
      if (it == monos.end() || coef < it->second) monos[mw] = coef;
    }
  }
  TropicalSeries out = TropicalSeries::from_min(cur, monos);
  if (!is_unimodular(cur)) throw Error(ErrorCode::CertificationFailed, "blown-up domain is not unimodular");
  if (!is_nice(out)) throw Error(ErrorCode::CertificationFailed, "blown-up series is not nice");
  return {cur, out, steps};
}

NiceRestriction nice_restrict(const QPolygon& dom, const std::vector<Point>& points, const Rat& eps) {
  TropicalSeries full = stabilized(dom, points);
  NiceResult nr = make_nice(full, eps);
  for (const auto& p : points) {
    if (!nr.domain.interior(p)) throw Error(ErrorCode::EpsilonTooLarge, "a wave point was cut away");
  }
  TropicalSeries restricted = stabilized(nr.domain, points);
  NiceRestriction res{nr.domain, full, restricted, nr.steps, false, false, false, Rat(0)};
  res.nice = is_nice(restricted);
  const Polygon& region = nr.domain.outline();
  res.max_difference = max_abs_difference(full, restricted, region);
  res.difference_ok = min_difference(full, restricted, region) >= 0 && res.max_difference < eps;
  res.removed_ok = true;
  for (const auto& st : nr.steps) {
    if (st.removed.size() >= 3 && max_over(full, st.removed) > eps) res.removed_ok = false;
  }
  return res;
}

TropicalSeries verge_polynomial(const QPolygon& dom, std::span<const long> d, const Rat& eps) {
  if (!dom.bounded()) throw Error(ErrorCode::Unsupported, "verge needs a bounded domain");
  if (!is_unimodular(dom)) throw Error(ErrorCode::NotUnimodular, "domain is not unimodular");
  if (d.size() != dom.num_sides()) throw Error(ErrorCode::PreconditionViolated, "one degree per side required");
  for (long x : d) {
    if (x < 1) throw Error(ErrorCode::PreconditionViolated, "degrees must be positive");
  }
  if (!is_nice_degree(d)) throw Error(ErrorCode::NotNice, "quasi-degree is not nice");
  if (eps <= 0) throw Error(ErrorCode::PreconditionViolated, "eps must be positive");
  {
    auto hps = dom.halfplanes();
    for (auto& h : hps) h.a -= eps;
    try {
      QPolygon inner(std::move(hps));
    } catch (const Error&) {
      throw Error(ErrorCode::PreconditionViolated, "eps exceeds the inradius");
    }
  }
  Rat delta = eps / 4;
  Rat eps2 = eps * eps;
  std::vector<long> want(d.begin(), d.end());
  for (int iter = 0; iter < 64; ++iter, delta /= 2) {
    MonomialMap monos{{{0, 0}, eps / 2}};
    for (std::size_t k = 0; k < d.size(); ++k) {
      const auto& h = dom.halfplanes()[k];
      long dk = d[k];
      for (long l = 1; l <= dk; ++l) {
        Rat coef = Rat(l) * h.a + delta * rat(dk * (dk + 1) - l * (l + 1), 2 * dk);
        LatticeVec u = h.n * l;
        auto it = monos.find(u);
        if (it == monos.end() || coef < it->second) monos[u] = coef;
      }
    }
    TropicalSeries g = TropicalSeries::from_min(dom, monos);
    if (quasi_degree(g) != want) continue;
    TropicalCurve c = extract_curve(g);
    if (!all_smooth(c)) continue;
    bool hugs = true;
    for (const auto& v : c.vertices) {
      if (dom.boundary_dist2(v.p) > eps2) hugs = false;
    }
    if (hugs) return g;
  }
  throw Error(ErrorCode::CertificationFailed, "no offset gives a smooth curve");
}

namespace {

std::vector<Rat> family_checkpoints(const PerestroikaReport& rep) {
  std::vector<Rat> marks{Rat(0)};
  marks.insert(marks.end(), rep.type_changes.begin(), rep.type_changes.end());
  if (marks.back() != 1) marks.push_back(Rat(1));
  std::vector<Rat> out;
  for (std::size_t i = 1; i < marks.size(); ++i) {
    out.push_back((marks[i - 1] + marks[i]) / 2);
    out.push_back(marks[i]);
  }
  return out;
}

}  // namespace

CoarsenResult coarsen_dynamics(const TropicalSeries& g, const std::vector<WaveEvent>& events, const Rat& eps) {
  if (eps <= 0) throw Error(ErrorCode::PreconditionViolated, "eps must be positive");
  std::vector<CoarsenStep> steps;
  std::vector<TropicalSeries> replay{g};
  TropicalSeries cur = g;
  for (const auto& ev : events) {
    auto [next, e] = wave(cur, ev.p);
    if (e.c == 0) continue;
    steps.push_back({ev.p, e.v, e.c, e.c});
    cur = next;
    replay.push_back(cur);
  }
  TropicalSeries reference = cur;
  if (quasi_degree(g) != quasi_degree(reference)) {
    throw Error(ErrorCode::HypothesisViolated, "the dynamic changes the quasi-degree");
  }
  if (!smooth_or_nodal(extract_curve(g))) throw Error(ErrorCode::CertificationFailed, "initial curve fails at step 0");
  CoarsenResult res{{Rat(1), Rat(1), steps}, g, reference, {g}, 1, 0};
  if (steps.empty()) return res;

  std::optional<Rat> min2;
  for (const auto& s : replay) {
    TropicalCurve c = extract_curve(s);
    for (const auto& ev : events) {
      auto d = dist2_to_curve(c, ev.p);
      if (d && *d > 0 && (!min2 || *d < *min2)) min2 = *d;
    }
  }
  Rat M = min2 ? sqrt_lower(*min2, 24) : Rat(1);
  if (M <= 0) throw Error(ErrorCode::CertificationFailed, "distance bound vanished");
  const Rat m(static_cast<long>(steps.size()));
  std::size_t failed_at = 0;
  Rat h = 1;
  for (int attempt = 0; attempt < 64; ++attempt, h /= 2) {
    Rat dec = M * h;
    if (m * dec >= eps || m * dec >= M) continue;
    bool positive = std::all_of(steps.begin(), steps.end(), [&](const CoarsenStep& s) { return s.increment > dec; });
    if (!positive) continue;
    TropicalSeries f = g;
    std::vector<TropicalSeries> inter{g};
    std::size_t curves = 1, families = 0;
    bool ok = true;
    for (std::size_t k = 0; k < steps.size() && ok; ++k) {
      Rat c = steps[k].increment - dec;
      PerestroikaReport rep = scan_family(f, steps[k].v, c, 0, false);
      ++families;
      for (const auto& e : rep.events) {
        if (e.kind == PerestroikaKind::FaceCollapsedToPoint || e.kind == PerestroikaKind::FaceCollapsedToInterval) {
          ok = false;
        }
      }
      for (const Rat& t : family_checkpoints(rep)) {
        if (!ok) break;
        ++curves;
        if (!smooth_or_nodal(extract_curve(family_member(f, steps[k].v, c, t)))) ok = false;
      }
      if (!ok) {
        failed_at = k + 1;
        break;
      }
      f = add_monomial(f, steps[k].v, c);
      inter.push_back(f);
    }
    if (ok) {
      TropicalCurve a = extract_curve(f), b = extract_curve(reference);
      if (!hausdorff_within(a, b, eps) || !hausdorff_within(b, a, eps)) {
        failed_at = steps.size();
        continue;
      }
      for (auto& s : steps) s.decremented = s.increment - dec;
      res.plan = {M, h, steps};
      res.final = f;
      res.intermediate = std::move(inter);
      res.curves_checked = curves;
      res.families_checked = families;
      return res;
    }
  }
  throw Error(ErrorCode::CertificationFailed, "certification failed at step " + std::to_string(failed_at));
}

}  // namespace tropwave
