#include "tropwave/cells.hpp"

#include <algorithm>

#include "tropwave/errors.hpp"

namespace tropwave {

Polygon clip_rational(const Polygon& poly, const Point& n, const Rat& a) {
  if (poly.empty()) return {};
  if (poly.size() == 1) return dot(n, poly[0]) + a >= 0 ? poly : Polygon{};
  Polygon out;
  std::vector<Rat> val(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) val[i] = dot(n, poly[i]) + a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    std::size_t j = (i + 1) % poly.size();
    if (val[i] >= 0) out.push_back(poly[i]);
    if ((val[i] > 0 && val[j] < 0) || (val[i] < 0 && val[j] > 0)) {
      Rat t = val[i] / (val[i] - val[j]);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  Polygon dedup;
  for (auto& p : out) {
    if (dedup.empty() || !(dedup.back() == p)) dedup.push_back(std::move(p));
  }
  while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
  return dedup;
}

Polygon intersect(const Polygon& p, const Polygon& q) {
  Polygon out = p;
  if (q.size() < 3) throw Error(ErrorCode::PreconditionViolated, "clipping polygon must have positive area");
  for (std::size_t i = 0; i < q.size() && !out.empty(); ++i) {
    const Point& a = q[i];
    const Point& b = q[(i + 1) % q.size()];
    Point d = b - a;
    Point n{Rat(-d.y), d.x};
    out = clip_rational(out, n, Rat(-dot(n, a)));
  }
  return out;
}

Polygon cell_of(const Polygon& region, const MonomialMap& monos, LatticeVec v) {
  auto self = monos.find(v);
  if (self == monos.end()) return {};
  Polygon poly = region;
  for (const auto& [u, a] : monos) {
    if (u == v) continue;
    poly = clip(poly, u - v, a - self->second);
    if (poly.empty()) break;
  }
  return simplify(poly);
}

std::vector<Cell> compute_cells(const Polygon& region, const MonomialMap& monos) {
  std::vector<Cell> out;
  for (const auto& [v, a] : monos) {
    Polygon poly = cell_of(region, monos, v);
    if (poly.size() >= 3 && area2(poly) > 0) out.push_back({v, a, std::move(poly)});
  }
  return out;
}

std::vector<Point> cell_vertices(const std::vector<Cell>& cells) {
  std::vector<Point> pts;
  for (const auto& c : cells) pts.insert(pts.end(), c.poly.begin(), c.poly.end());
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<Point> refinement_vertices(const std::vector<Cell>& a, const std::vector<Cell>& b, const Polygon& region) {
  std::vector<Point> pts;
  for (const auto& ca : a) {
    Polygon pa = region.size() >= 3 ? intersect(ca.poly, region) : ca.poly;
    if (pa.empty()) continue;
    for (const auto& cb : b) {
      Polygon piece = pa.size() >= 3 ? intersect(cb.poly, pa) : Polygon{};
      pts.insert(pts.end(), piece.begin(), piece.end());
    }
  }
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Rat eval_min(const MonomialMap& monos, const Point& z) {
  if (monos.empty()) throw Error(ErrorCode::PreconditionViolated, "empty monomial map");
  auto it = monos.begin();
  Rat best = dot(it->first, z) + it->second;
  for (++it; it != monos.end(); ++it) {
    Rat val = dot(it->first, z) + it->second;
    if (val < best) best = val;
  }
  return best;
}

}  // namespace tropwave
