#pragma once

#include <map>
#include <vector>

#include "tropwave/geometry.hpp"

namespace tropwave {

using MonomialMap = std::map<LatticeVec, Rat>;

/// Region of a monomial in a min-plus function, clipped to the domain.
struct Cell {
  LatticeVec v;
  Rat a;
  Polygon poly;  // counter-clockwise, simplified
};

/// {z : (nx, ny).z + a >= 0} with a rational normal.
Polygon clip_rational(const Polygon& poly, const Point& n, const Rat& a);
/// Intersection of two convex counter-clockwise polygons.
Polygon intersect(const Polygon& p, const Polygon& q);

/// Cell of `v` in min over `monos`, clipped to `region`; may be degenerate or empty.
Polygon cell_of(const Polygon& region, const MonomialMap& monos, LatticeVec v);

/// Cells with positive area of min over `monos` on `region`.
std::vector<Cell> compute_cells(const Polygon& region, const MonomialMap& monos);

/// Distinct vertices of all cells, in lexicographic order.
std::vector<Point> cell_vertices(const std::vector<Cell>& cells);

/// Vertices of the common refinement of two cell decompositions inside `region`.
std::vector<Point> refinement_vertices(const std::vector<Cell>& a, const std::vector<Cell>& b, const Polygon& region);

Rat eval_min(const MonomialMap& monos, const Point& z);

}  // namespace tropwave
