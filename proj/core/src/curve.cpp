#include "tropwave/curve.hpp"

#include <algorithm>
#include <map>

#include "tropwave/errors.hpp"

namespace tropwave {

namespace {

LatticeVec primitive_direction(const Point& d) {
  mpz_class l = lcm(d.x.get_den(), d.y.get_den());
  mpz_class x = d.x.get_num() * (l / d.x.get_den());
  mpz_class y = d.y.get_num() * (l / d.y.get_den());
  mpz_class g = gcd(x, y);
  if (g == 0) throw Error(ErrorCode::PreconditionViolated, "zero direction");
  x /= g;
  y /= g;
  if (!x.fits_slong_p() || !y.fits_slong_p()) throw Error(ErrorCode::Unsupported, "direction too large");
  return {x.get_si(), y.get_si()};
}

struct PointLess {
  bool operator()(const Point& a, const Point& b) const { return lex_less(a, b); }
};

long hull_area2(std::vector<LatticeVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return 0;
  std::vector<LatticeVec> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](LatticeVec o, LatticeVec a, LatticeVec b) { return det(a - o, b - o); };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && turn(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0) --k;
    hull[k++] = pts[i - 1];
  }
  hull.resize(k - 1);
  long s = 0;
  for (std::size_t i = 0; i < hull.size(); ++i) s += det(hull[i], hull[(i + 1) % hull.size()]);
  return s < 0 ? -s : s;
}

bool is_parallelogram(const std::vector<LatticeVec>& d) {
  // Some pairing of the four points into two diagonals with a common midpoint.
  const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
  for (const auto& p : pairs) {
    if (d[p[0]] + d[p[1]] == d[p[2]] + d[p[3]]) return true;
  }
  return false;
}

}  // namespace

std::vector<std::size_t> TropicalCurve::incident(std::size_t vertex) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (edges[e].a == vertex || (!edges[e].ray && edges[e].b == vertex)) out.push_back(e);
  }
  return out;
}

std::optional<std::size_t> TropicalCurve::find_vertex(const Point& p) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].p == p) return i;
  }
  return std::nullopt;
}

TropicalCurve extract_curve(const TropicalSeries& f) {
  TropicalCurve c;
  c.faces = f.cells();
  std::map<Point, std::size_t, PointLess> index;
  auto vertex_id = [&](const Point& p) {
    auto it = index.find(p);
    if (it != index.end()) return it->second;
    std::size_t id = c.vertices.size();
    c.vertices.push_back({p, f.domain().interior(p)});
    index[p] = id;
    return id;
  };
  const auto& cells = f.cells();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      LatticeVec d = cells[j].v - cells[i].v;
      Rat off = cells[j].a - cells[i].a;
      Polygon seg = clip(clip(cells[i].poly, d, off), -d, Rat(-off));
      if (seg.size() < 2) continue;
      auto [lo, hi] = std::minmax_element(seg.begin(), seg.end(), lex_less);
      if (*lo == *hi) continue;
      CurveEdge e;
      e.a = vertex_id(*lo);
      e.b = vertex_id(*hi);
      e.weight = gcd_of(d);
      e.u = cells[i].v;
      e.v = cells[j].v;
      c.edges.push_back(e);
    }
  }
  return c;
}

const char* to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Smooth: return "Smooth";
    case VertexKind::Nodal: return "Nodal";
    case VertexKind::Other: return "Other";
  }
  return "Other";
}

VertexClass classify_vertex(const TropicalCurve& c, std::size_t index) {
  if (index >= c.vertices.size() || !c.vertices[index].interior) {
    throw Error(ErrorCode::NotAVertex, "not an interior vertex");
  }
  auto inc = c.incident(index);
  if (inc.size() < 3) throw Error(ErrorCode::NotAVertex, "valence below three");
  std::vector<LatticeVec> d;
  for (auto e : inc) {
    d.push_back(c.edges[e].u);
    d.push_back(c.edges[e].v);
  }
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  long a2 = hull_area2(d);
  if (d.size() == 3 && a2 == 1) return {VertexKind::Smooth, "unimodular triangle"};
  if (d.size() == 4 && a2 == 2 && is_parallelogram(d)) return {VertexKind::Nodal, "unimodular parallelogram"};
  return {VertexKind::Other,
          "dual cell with " + std::to_string(d.size()) + " points and doubled area " + std::to_string(a2)};
}

VertexClass classify_vertex(const TropicalCurve& c, const Point& p) {
  auto idx = c.find_vertex(p);
  if (!idx) throw Error(ErrorCode::NotAVertex, "point is not a curve vertex");
  return classify_vertex(c, *idx);
}

bool check_balancing(const TropicalCurve& c) {
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (!c.vertices[v].interior) continue;
    long sx = 0, sy = 0;
    for (auto e : c.incident(v)) {
      const auto& edge = c.edges[e];
      LatticeVec dir;
      if (edge.ray) {
        dir = primitive(*edge.ray);
      } else {
        std::size_t other = edge.a == v ? edge.b : edge.a;
        dir = primitive_direction(c.vertices[other].p - c.vertices[v].p);
      }
      sx += edge.weight * dir.i;
      sy += edge.weight * dir.j;
    }
    if (sx != 0 || sy != 0) return false;
  }
  return true;
}

Rat segment_area(const Point& a, const Point& b) {
  if (a == b) return 0;
  Point d = b - a;
  return dot(primitive_direction(d), d);
}

std::optional<Rat> symplectic_area(const TropicalCurve& c) {
  Rat total = 0;
  for (const auto& e : c.edges) {
    if (e.ray) return std::nullopt;
    total += Rat(e.weight) * segment_area(c.vertices[e.a].p, c.vertices[e.b].p);
  }
  return total;
}

Rat boundary_area(const TropicalSeries& f) {
  auto deg = quasi_degree(f);
  Rat total = 0;
  for (std::size_t s = 0; s < deg.size(); ++s) {
    auto [p, q] = f.domain().side(s);
    total += Rat(deg[s]) * segment_area(p, q);
  }
  return total;
}

std::optional<Rat> dist2_to_curve(const TropicalCurve& c, const Point& p) {
  std::optional<Rat> best;
  for (const auto& e : c.edges) {
    if (e.ray) continue;
    Rat d = dist2_to_segment(p, c.vertices[e.a].p, c.vertices[e.b].p);
    if (!best || d < *best) best = d;
  }
  return best;
}

bool hausdorff_within(const TropicalCurve& f, const TropicalCurve& g, const Rat& radius) {
  if (f.edges.empty()) return true;
  if (g.edges.empty()) return false;
  Rat r2 = radius * radius;
  std::vector<std::pair<Point, Point>> segs;
  for (const auto& e : g.edges) {
    if (e.ray) return false;
    segs.emplace_back(g.vertices[e.a].p, g.vertices[e.b].p);
  }
  auto covered_by = [&](const Point& p, std::size_t s) {
    return dist2_to_segment(p, segs[s].first, segs[s].second) <= r2;
  };
  auto near_any = [&](const Point& p) {
    for (std::size_t s = 0; s < segs.size(); ++s) {
      if (covered_by(p, s)) return true;
    }
    return false;
  };
  struct Job {
    Point p, q;
    int depth;
  };
  for (const auto& e : f.edges) {
    if (e.ray) return false;
    std::vector<Job> stack{{f.vertices[e.a].p, f.vertices[e.b].p, 0}};
    while (!stack.empty()) {
      Job job = stack.back();
      stack.pop_back();
      bool done = false;
      // Distance to a convex set is convex along a segment, so both endpoints
      // within range of one segment certify the whole piece.
      for (std::size_t s = 0; s < segs.size() && !done; ++s) {
        done = covered_by(job.p, s) && covered_by(job.q, s);
      }
      if (done) continue;
      if (!near_any(job.p) || !near_any(job.q)) return false;
      if (job.depth >= 40) return false;
      Point mid = Rat(1, 2) * (job.p + job.q);
      stack.push_back({job.p, mid, job.depth + 1});
      stack.push_back({mid, job.q, job.depth + 1});
    }
  }
  return true;
}

bool curves_within(const TropicalSeries& f, const TropicalSeries& g, const Rat& eps) {
  return hausdorff_within(extract_curve(f), extract_curve(g), 2 * eps);
}

namespace {

bool interior_vertices_ok(const TropicalCurve& c, bool allow_nodal) {
  for (const auto& e : c.edges) {
    if (e.weight != 1) return false;
  }
  for (std::size_t v = 0; v < c.vertices.size(); ++v) {
    if (!c.vertices[v].interior) continue;
    auto k = classify_vertex(c, v).kind;
    if (k == VertexKind::Smooth) continue;
    if (allow_nodal && k == VertexKind::Nodal) continue;
    return false;
  }
  return true;
}

}  // namespace

bool smooth_or_nodal(const TropicalCurve& c) { return interior_vertices_ok(c, true); }

bool all_smooth(const TropicalCurve& c) { return interior_vertices_ok(c, false); }

}  // namespace tropwave
