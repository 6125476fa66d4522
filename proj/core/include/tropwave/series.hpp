#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "tropwave/cells.hpp"
#include "tropwave/geometry.hpp"

namespace tropwave {

/// A tropical series on a bounded rational polygon, stored in small canonical
/// form: only monomials whose region has positive area are kept.
class TropicalSeries {
 public:
  /// Builds min over `monos`, dropping monomials without a 2D region.
  /// Throws Error(PreconditionViolated) unless the result is nonnegative and
  /// vanishes on the boundary.
  static TropicalSeries from_min(const QPolygon& dom, const MonomialMap& monos);
  /// The constant zero series.
  static TropicalSeries zero(const QPolygon& dom);

  const QPolygon& domain() const { return data_->domain; }
  const MonomialMap& support() const { return data_->support; }
  const std::vector<Cell>& cells() const { return data_->cells; }
  /// Vertices of the linearity decomposition, including domain corners.
  const std::vector<Point>& vertices() const { return data_->vertices; }
  /// Values of the series at vertices().
  const std::vector<Rat>& vertex_values() const { return data_->vertex_values; }
  /// Set when built from a truncated oracle enumeration.
  bool truncated() const { return data_->truncated; }

  /// Throws Error(OutsideDomain) for points outside the closed domain.
  Rat eval(const Point& z) const;
  /// min over the support, without the domain check.
  Rat value(const Point& z) const { return eval_min(data_->support, z); }
  /// Support monomials attaining the minimum at z.
  std::vector<LatticeVec> active_at(const Point& z) const;
  const Cell* cell(LatticeVec v) const;

  friend bool operator==(const TropicalSeries& f, const TropicalSeries& g) {
    return f.domain() == g.domain() && f.support() == g.support();
  }

 private:
  struct Data {
    QPolygon domain;
    MonomialMap support;
    std::vector<Cell> cells;
    std::vector<Point> vertices;
    std::vector<Rat> vertex_values;
    bool truncated = false;
  };
  explicit TropicalSeries(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  static TropicalSeries build(const QPolygon& dom, const MonomialMap& monos, bool truncated);
  std::shared_ptr<const Data> data_;

  friend TropicalSeries distance_function(const ConvexDomain& dom);
};

/// sup over the domain of f(z) - v.z.
Rat canonical_coefficient(const TropicalSeries& f, LatticeVec v);

/// The weighted distance function. Oracle domains are truncated at their radius.
TropicalSeries distance_function(const ConvexDomain& dom);
TropicalSeries distance_function(const QPolygon& dom);

/// Raises the canonical coefficient of v by c and returns the small canonical form.
TropicalSeries add_monomial(const TropicalSeries& f, LatticeVec v, const Rat& c);

/// sup of canonical coefficient differences.
Rat rho(const TropicalSeries& f, const TropicalSeries& g);

/// Multiplicity of the primitive inward normal per side (indexed like the domain's half-planes).
std::vector<long> quasi_degree(const TropicalSeries& f);
/// Cyclic check: every entry > 1 has both neighbours equal to 1.
bool is_nice_degree(std::span<const long> degrees);
bool is_nice(const TropicalSeries& f);

/// Tropical product f + g (pointwise sum) on a shared domain.
TropicalSeries tropical_product(const TropicalSeries& f, const TropicalSeries& g);

/// Exact sup over `region` of |f - g|; region defaults to the common domain.
Rat max_abs_difference(const TropicalSeries& f, const TropicalSeries& g);
Rat max_abs_difference(const TropicalSeries& f, const TropicalSeries& g, const Polygon& region);
/// Exact max of f over a convex polygon inside the domain.
Rat max_over(const TropicalSeries& f, const Polygon& region);
/// Exact min over `region` of f - g.
Rat min_difference(const TropicalSeries& f, const TropicalSeries& g, const Polygon& region);

}  // namespace tropwave
