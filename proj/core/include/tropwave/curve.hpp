#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tropwave/series.hpp"

namespace tropwave {

struct CurveVertex {
  Point p;
  bool interior = true;
};

struct CurveEdge {
  std::size_t a = 0;  // vertex index
  std::size_t b = 0;  // vertex index, ignored for rays
  long weight = 1;
  LatticeVec u;  // dual monomials, u on one side and v on the other
  LatticeVec v;
  /// Set for unbounded rays starting at vertex a.
  std::optional<LatticeVec> ray;
};

struct TropicalCurve {
  std::vector<CurveVertex> vertices;
  std::vector<CurveEdge> edges;
  std::vector<Cell> faces;

  std::vector<std::size_t> incident(std::size_t vertex) const;
  std::optional<std::size_t> find_vertex(const Point& p) const;
};

TropicalCurve extract_curve(const TropicalSeries& f);

enum class VertexKind { Smooth, Nodal, Other };

struct VertexClass {
  VertexKind kind = VertexKind::Other;
  std::string description;
};

const char* to_string(VertexKind kind);

/// Classifies vertex `index` from the exponents of its dual cell.
/// Throws Error(NotAVertex) for boundary points or points of valence < 3.
VertexClass classify_vertex(const TropicalCurve& c, std::size_t index);
VertexClass classify_vertex(const TropicalCurve& c, const Point& p);

/// Weighted sum of outgoing primitive directions vanishes at every interior vertex.
bool check_balancing(const TropicalCurve& c);

/// Sum over edges of weight * length * |primitive|; nullopt when a ray is present.
std::optional<Rat> symplectic_area(const TropicalCurve& c);
/// Area of a single segment traversed with weight 1.
Rat segment_area(const Point& a, const Point& b);

/// Sum over domain sides of m_f(S) * Area(S).
Rat boundary_area(const TropicalSeries& f);

/// Every point of C(f) lies within `radius` of C(g). Exact for "true";
/// returns false if coverage cannot be certified after bisection.
bool hausdorff_within(const TropicalCurve& f, const TropicalCurve& g, const Rat& radius);
/// One-sided 2*eps closeness of the curves of f and g.
bool curves_within(const TropicalSeries& f, const TropicalSeries& g, const Rat& eps);

/// Exact squared distance from a point to the curve (nullopt for an empty curve).
std::optional<Rat> dist2_to_curve(const TropicalCurve& c, const Point& p);

/// Interior vertices classified as Smooth or Nodal.
bool smooth_or_nodal(const TropicalCurve& c);
bool all_smooth(const TropicalCurve& c);

}  // namespace tropwave
