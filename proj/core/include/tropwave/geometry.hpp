#pragma once

#include <functional>
#include <optional>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "tropwave/rational.hpp"

namespace tropwave {

/// {z : n.z + a >= 0}
struct HalfPlane {
  LatticeVec n;
  Rat a;

  Rat eval(const Point& z) const { return dot(n, z) + a; }
  friend bool operator==(const HalfPlane& l, const HalfPlane& r) { return l.n == r.n && l.a == r.a; }
};

/// Convex polygon as a counter-clockwise vertex cycle; may be degenerate.
using Polygon = std::vector<Point>;

/// Keeps the part of `poly` where n.z + a >= 0.
Polygon clip(const Polygon& poly, LatticeVec n, const Rat& a);
/// Twice the signed area.
Rat area2(const Polygon& poly);
Rat area(const Polygon& poly);
/// Removes repeated and collinear vertices of a convex cycle.
Polygon simplify(const Polygon& poly);
bool contains(const Polygon& poly, const Point& z);

/// Strict angular order of nonzero integer vectors, starting at direction (1,0).
bool angle_less(LatticeVec a, LatticeVec b);

class QPolygon {
 public:
  /// Throws Error(NotAdmissible) when the intersection has empty interior.
  explicit QPolygon(std::vector<HalfPlane> halfplanes);
  /// Counter-clockwise rational vertex cycle of a bounded polygon.
  static QPolygon from_vertices(const std::vector<Point>& ccw);
  static QPolygon box(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1);

  /// Non-redundant half-planes with primitive normals, sorted by normal angle.
  const std::vector<HalfPlane>& halfplanes() const { return halfplanes_; }
  bool bounded() const { return bounded_; }
  /// For bounded polygons vertex k is the corner between sides k-1 and k,
  /// and side k runs from vertex k to vertex k+1. For unbounded ones this is
  /// the chain of finite vertices.
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Bounded: the vertex cycle. Unbounded: clipped to a large box.
  const Polygon& outline() const { return outline_; }

  std::size_t num_sides() const { return halfplanes_.size(); }
  std::pair<Point, Point> side(std::size_t k) const;

  bool contains(const Point& z) const;
  bool interior(const Point& z) const;
  /// Exact squared Euclidean distance from an interior point to the boundary.
  Rat boundary_dist2(const Point& z) const;
  bool on_boundary(const Point& z) const;

  friend bool operator==(const QPolygon& l, const QPolygon& r) { return l.halfplanes_ == r.halfplanes_; }

 private:
  std::vector<HalfPlane> halfplanes_;
  std::vector<Point> vertices_;
  Polygon outline_;
  bool bounded_ = false;
};

std::ostream& operator<<(std::ostream& os, const QPolygon& p);

/// Support coefficient oracle: nullopt stands for minus infinity.
struct OracleDomain {
  std::function<std::optional<Rat>(LatticeVec)> support;
  long radius = 8;
};

using ConvexDomain = std::variant<QPolygon, OracleDomain>;

/// inf over the domain of v.z; nullopt when unbounded below.
std::optional<Rat> support_coeff(const QPolygon& dom, LatticeVec v);
std::optional<Rat> support_coeff(const ConvexDomain& dom, LatticeVec v);

bool is_admissible(const ConvexDomain& dom);

/// Every monomial that can take a value <= C somewhere on the compact convex
/// set with the given vertices: (i,j) with (i^2+j^2) R^2 <= C^2, R the distance
/// from K to the boundary.
std::set<LatticeVec> relevant_monomials(const ConvexDomain& dom, std::span<const Point> k_vertices, const Rat& c);

struct Corner {
  Point apex;
  LatticeVec n1;  // inward normal of the incoming side
  LatticeVec n2;  // inward normal of the outgoing side
};

/// Corner at vertex k of a bounded polygon.
Corner corner_at(const QPolygon& poly, std::size_t k);
std::vector<Corner> corners(const QPolygon& poly);

bool is_unimodular(const Corner& corner);
bool is_unimodular(const QPolygon& poly);

/// v = alpha n1 + beta n2 with alpha, beta >= 0.
bool cone_lattice_contains(const Corner& corner, LatticeVec v);
/// Same with alpha, beta > 0.
bool cone_interior_contains(const Corner& corner, LatticeVec v);

/// poly intersected with {v.(z - apex) - eps >= 0}.
QPolygon blow_up(const QPolygon& poly, const Corner& corner, LatticeVec v, const Rat& eps);

}  // namespace tropwave
