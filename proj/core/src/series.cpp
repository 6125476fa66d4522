#include "tropwave/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "tropwave/errors.hpp"

namespace tropwave {

namespace {

using CoefFn = std::function<Rat(LatticeVec)>;
using FloorFn = std::function<Rat(const Point&)>;

long disk_radius(const Rat& bound) {
  return static_cast<long>(std::floor(sqrt_upper(bound, 16).get_d())) + 1;
}

// Grows T until min over T equals min over all exponents with coefficients
// coef(u). A missing monomial u undercuts h = min T somewhere iff it does so
// at a vertex of h's decomposition (u.z + coef(u) - h is convex). Since
// coef(u) >= -c_u, only |u| < h(w) / dist(w, boundary) can undercut at w.
MonomialMap complete(const QPolygon& dom, const CoefFn& coef, MonomialMap t, const std::set<LatticeVec>& excluded,
                     const FloorFn& floor_fn) {
  for (std::size_t s = 0; s < dom.num_sides(); ++s) {
    const auto& h = dom.halfplanes()[s];
    bool found = false;
    for (long j = 1; j <= 256 && !found; ++j) {
      LatticeVec u = h.n * j;
      if (excluded.count(u)) continue;
      Rat want = h.a * j;
      auto it = t.find(u);
      if (it != t.end()) {
        if (it->second == want) found = true;
        continue;
      }
      if (coef(u) == want) {
        t[u] = want;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::PreconditionViolated, "series does not vanish on a side");
  }

  const Polygon& region = dom.outline();
  for (;;) {
    auto cells = compute_cells(region, t);
    auto verts = cell_vertices(cells);
    MonomialMap additions;
    for (const auto& w : verts) {
      Rat hw = eval_min(t, w);
      if (hw <= 0) continue;
      if (floor_fn && floor_fn(w) == hw) continue;
      Rat r2 = dom.boundary_dist2(w);
      if (r2 <= 0) continue;
      Rat bound = hw * hw / r2;
      long r = disk_radius(bound);
      std::optional<LatticeVec> best;
      Rat best_val;
      for (long i = -r; i <= r; ++i) {
        for (long j = -r; j <= r; ++j) {
          if (!(Rat(i * i + j * j) < bound)) continue;
          LatticeVec u{i, j};
          if (t.count(u) || excluded.count(u)) continue;
          Rat uw = dot(u, w);
          if (!(uw - *support_coeff(dom, u) < hw)) continue;
          Rat val = coef(u) + uw;
          if (val < hw && (!best || val < best_val)) {
            best = u;
            best_val = val;
          }
        }
      }
      if (best) additions[*best] = coef(*best);
    }
    if (additions.empty()) break;
    for (auto& [u, a] : additions) t[u] = a;
  }
  return t;
}

}  // namespace

TropicalSeries TropicalSeries::build(const QPolygon& dom, const MonomialMap& monos, bool truncated) {
  if (!dom.bounded()) throw Error(ErrorCode::Unsupported, "series require a bounded domain");
  if (monos.empty()) throw Error(ErrorCode::PreconditionViolated, "empty support");
  Data d{dom, {}, compute_cells(dom.outline(), monos), {}, {}, truncated};
  for (const auto& c : d.cells) d.support[c.v] = c.a;
  d.vertices = cell_vertices(d.cells);
  for (const auto& w : d.vertices) d.vertex_values.push_back(eval_min(d.support, w));
  return TropicalSeries(std::make_shared<const Data>(std::move(d)));
}

TropicalSeries TropicalSeries::from_min(const QPolygon& dom, const MonomialMap& monos) {
  TropicalSeries f = build(dom, monos, false);
  for (std::size_t k = 0; k < dom.num_sides(); ++k) {
    auto [p, q] = dom.side(k);
    Point mid = Rat(1, 2) * (p + q);
    if (f.value(p) != 0 || f.value(mid) != 0) {
      throw Error(ErrorCode::PreconditionViolated, "series must vanish on the boundary and be nonnegative");
    }
  }
  return f;
}

TropicalSeries TropicalSeries::zero(const QPolygon& dom) { return from_min(dom, {{{0, 0}, Rat(0)}}); }

Rat TropicalSeries::eval(const Point& z) const {
  if (!domain().contains(z)) throw Error(ErrorCode::OutsideDomain, "point outside the domain");
  return value(z);
}

std::vector<LatticeVec> TropicalSeries::active_at(const Point& z) const {
  Rat m = value(z);
  std::vector<LatticeVec> out;
  for (const auto& [v, a] : support()) {
    if (dot(v, z) + a == m) out.push_back(v);
  }
  return out;
}

const Cell* TropicalSeries::cell(LatticeVec v) const {
  for (const auto& c : cells()) {
    if (c.v == v) return &c;
  }
  return nullptr;
}

Rat canonical_coefficient(const TropicalSeries& f, LatticeVec v) {
  auto it = f.support().find(v);
  if (it != f.support().end()) return it->second;
  const auto& verts = f.vertices();
  const auto& vals = f.vertex_values();
  Rat best = vals[0] - dot(v, verts[0]);
  for (std::size_t i = 1; i < verts.size(); ++i) {
    Rat c = vals[i] - dot(v, verts[i]);
    if (c > best) best = c;
  }
  return best;
}

TropicalSeries distance_function(const QPolygon& dom) {
  if (!dom.bounded()) throw Error(ErrorCode::Unsupported, "distance function on an unbounded polygon");
  auto coef = [&](LatticeVec u) { return Rat(-*support_coeff(dom, u)); };
  MonomialMap t = complete(dom, coef, {}, {{0, 0}}, nullptr);
  return TropicalSeries::from_min(dom, t);
}

TropicalSeries distance_function(const ConvexDomain& dom) {
  if (!is_admissible(dom)) throw Error(ErrorCode::NotAdmissible, "domain is not admissible");
  if (const auto* poly = std::get_if<QPolygon>(&dom)) return distance_function(*poly);
  const auto& oracle = std::get<OracleDomain>(dom);
  long n = oracle.radius;
  std::vector<HalfPlane> hps;
  MonomialMap monos;
  for (long i = -n; i <= n; ++i) {
    for (long j = -n; j <= n; ++j) {
      if ((i == 0 && j == 0) || i * i + j * j > n * n) continue;
      auto c = oracle.support({i, j});
      if (!c) continue;
      hps.push_back({{i, j}, Rat(-*c)});
      monos[{i, j}] = -*c;
    }
  }
  QPolygon frame(std::move(hps));
  if (!frame.bounded()) throw Error(ErrorCode::Unsupported, "truncated oracle frame is unbounded");
  TropicalSeries f = TropicalSeries::build(frame, monos, true);
  return f;
}

TropicalSeries add_monomial(const TropicalSeries& f, LatticeVec v, const Rat& c) {
  if (c < 0) throw Error(ErrorCode::NegativeIncrement, "increment must be nonnegative");
  if (c == 0) return f;
  Rat raised = canonical_coefficient(f, v) + c;
  auto coef = [&](LatticeVec u) { return u == v ? raised : canonical_coefficient(f, u); };
  MonomialMap t = f.support();
  t[v] = raised;
  auto floor_fn = [&](const Point& z) { return f.value(z); };
  t = complete(f.domain(), coef, std::move(t), {}, floor_fn);
  return TropicalSeries::from_min(f.domain(), t);
}

Rat rho(const TropicalSeries& f, const TropicalSeries& g) {
  if (!(f.domain() == g.domain())) throw Error(ErrorCode::DomainMismatch, "series live on different domains");
  std::set<LatticeVec> keys;
  for (const auto& [v, a] : f.support()) keys.insert(v);
  for (const auto& [v, a] : g.support()) keys.insert(v);
  Rat best = 0;
  for (const auto& v : keys) {
    Rat d = canonical_coefficient(f, v) - canonical_coefficient(g, v);
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

std::vector<long> quasi_degree(const TropicalSeries& f) {
  const auto& dom = f.domain();
  std::vector<long> out;
  for (std::size_t s = 0; s < dom.num_sides(); ++s) {
    const auto& h = dom.halfplanes()[s];
    long found = 0;
    for (const auto& c : f.cells()) {
      if (det(c.v, h.n) != 0) continue;
      long num = c.v.i * h.n.i + c.v.j * h.n.j;
      if (num <= 0) continue;
      long m = num / h.n.norm2();
      if (!(h.n * m == c.v) || c.a != h.a * m) continue;
      int on = 0;
      for (const auto& p : c.poly) {
        if (h.eval(p) == 0) ++on;
      }
      if (on >= 2) {
        found = m;
        break;
      }
    }
    if (found == 0) throw Error(ErrorCode::BoundaryMismatch, "no monomial vanishes along side " + std::to_string(s));
    out.push_back(found);
  }
  return out;
}

bool is_nice_degree(std::span<const long> degrees) {
  std::size_t m = degrees.size();
  for (std::size_t k = 0; k < m; ++k) {
    if (degrees[k] > 1 && (degrees[(k + m - 1) % m] != 1 || degrees[(k + 1) % m] != 1)) return false;
  }
  return true;
}

bool is_nice(const TropicalSeries& f) {
  if (!is_unimodular(f.domain())) return false;
  try {
    auto d = quasi_degree(f);
    return is_nice_degree(d);
  } catch (const Error&) {
    return false;
  }
}

TropicalSeries tropical_product(const TropicalSeries& f, const TropicalSeries& g) {
  if (!(f.domain() == g.domain())) throw Error(ErrorCode::DomainMismatch, "series live on different domains");
  MonomialMap out;
  for (const auto& cf : f.cells()) {
    for (const auto& cg : g.cells()) {
      Polygon piece = intersect(cf.poly, cg.poly);
      if (piece.size() < 3 || area2(piece) <= 0) continue;
      LatticeVec u = cf.v + cg.v;
      Rat a = cf.a + cg.a;
      auto it = out.find(u);
      if (it == out.end() || a < it->second) out[u] = a;
    }
  }
  return TropicalSeries::from_min(f.domain(), out);
}

Rat max_abs_difference(const TropicalSeries& f, const TropicalSeries& g) {
  return max_abs_difference(f, g, f.domain().outline());
}

Rat max_abs_difference(const TropicalSeries& f, const TropicalSeries& g, const Polygon& region) {
  Rat best = 0;
  for (const auto& z : refinement_vertices(f.cells(), g.cells(), region)) {
    Rat d = f.value(z) - g.value(z);
    if (d < 0) d = -d;
    if (d > best) best = d;
  }
  return best;
}

Rat max_over(const TropicalSeries& f, const Polygon& region) {
  std::optional<Rat> best;
  for (const auto& c : f.cells()) {
    for (const auto& z : intersect(c.poly, region)) {
      Rat v = f.value(z);
      if (!best || v > *best) best = v;
    }
  }
  if (!best) throw Error(ErrorCode::PreconditionViolated, "region misses the domain");
  return *best;
}

Rat min_difference(const TropicalSeries& f, const TropicalSeries& g, const Polygon& region) {
  std::optional<Rat> best;
  for (const auto& z : refinement_vertices(f.cells(), g.cells(), region)) {
    Rat d = f.value(z) - g.value(z);
    if (!best || d < *best) best = d;
  }
  if (!best) throw Error(ErrorCode::PreconditionViolated, "region misses the domain");
  return *best;
}

}  // namespace tropwave
