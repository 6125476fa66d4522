#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "tropwave/wave.hpp"

namespace tropwave::testing {

inline QPolygon unit_square() { return QPolygon::box(Rat(0), Rat(0), Rat(1), Rat(1)); }

inline TropicalSeries third_square_series() {
  MonomialMap m{{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}, {{-1, 0}, Rat(1)}, {{0, -1}, Rat(1)}, {{0, 0}, rat(1, 3)}};
  return TropicalSeries::from_min(unit_square(), m);
}

/// Lattice distance to the boundary by brute force over primitive directions:
/// min over v of v.z - min over vertices w of v.w. Corner cones of the test
/// polygons have Hilbert bases inside |i|, |j| <= 4, so the box below suffices.
inline Rat oracle_distance(const QPolygon& dom, const Point& z) {
  std::optional<Rat> best;
  for (long i = -8; i <= 8; ++i)
    for (long j = -8; j <= 8; ++j) {
      if (std::gcd(i, j) != 1) continue;
      LatticeVec v{i, j};
      Rat lo = dot(v, dom.vertices().front());
      for (const auto& w : dom.vertices()) lo = std::min<Rat>(lo, dot(v, w));
      Rat d = dot(v, z) - lo;
      if (!best || d < *best) best = d;
    }
  return *best;
}

inline Rat random_rat(std::mt19937_64& rng, long lo, long hi, long den) {
  std::uniform_int_distribution<long> d(lo * den, hi * den);
  return rat(d(rng), den);
}

/// Box with up to three extra cuts through random positions; always admissible.
inline QPolygon random_polygon(std::mt19937_64& rng) {
  Rat w = random_rat(rng, 1, 3, 4), h = random_rat(rng, 1, 3, 4);
  if (w == 0) w = 1;
  if (h == 0) h = 1;
  std::vector<HalfPlane> hs{{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}, {{-1, 0}, w}, {{0, -1}, h}};
  static const LatticeVec normals[] = {{1, 1}, {-1, 1}, {1, -1}, {-1, -1}, {1, 2}, {2, -1}, {-2, -1}, {-1, 2}};
  Point c(Rat(w / 2), Rat(h / 2));
  std::uniform_int_distribution<int> cuts(0, 3), pick(0, 7), off(1, 8);
  int k = cuts(rng);
  for (int i = 0; i < k; ++i) {
    LatticeVec n = normals[pick(rng)];
    Rat r = rat(off(rng), 8) * std::min(w, h) / 2;
    hs.push_back({n, Rat(r - dot(n, c))});
  }
  return QPolygon(hs);
}

/// Interior points on the grid (1/den) Z^2, drawn uniformly from the bounding box.
inline std::vector<Point> random_points(std::mt19937_64& rng, const QPolygon& dom, std::size_t n, long den = 16) {
  Rat x0 = dom.vertices()[0].x, x1 = x0, y0 = dom.vertices()[0].y, y1 = y0;
  for (const auto& v : dom.vertices()) {
    x0 = std::min<Rat>(x0, v.x), x1 = std::max<Rat>(x1, v.x);
    y0 = std::min<Rat>(y0, v.y), y1 = std::max<Rat>(y1, v.y);
  }
  std::vector<Point> out;
  std::uniform_int_distribution<long> u(0, den);
  while (out.size() < n) {
    Point p(Rat(x0 + (x1 - x0) * rat(u(rng), den)), Rat(y0 + (y1 - y0) * rat(u(rng), den)));
    if (dom.interior(p)) out.push_back(p);
  }
  return out;
}

/// f composed with waves at random interior points.
inline TropicalSeries random_series(std::mt19937_64& rng, const QPolygon& dom, std::size_t waves) {
  TropicalSeries f = TropicalSeries::zero(dom);
  for (const auto& p : random_points(rng, dom, waves)) f = wave(f, p).first;
  return f;
}

}  // namespace tropwave::testing
