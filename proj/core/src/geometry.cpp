#include "tropwave/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tropwave/errors.hpp"

namespace tropwave {

namespace {

Polygon dedupe(const Polygon& in) {
  Polygon out;
  for (const auto& p : in) {
    if (out.empty() || !(out.back() == p)) out.push_back(p);
  }
  while (out.size() > 1 && out.front() == out.back()) out.pop_back();
  return out;
}

Point line_intersection(const HalfPlane& h1, const HalfPlane& h2) {
  Rat d(det(h1.n, h2.n));
  Rat x = (h2.a * h1.n.j - h1.a * h2.n.j) / d;
  Rat y = (h1.a * h2.n.i - h2.a * h1.n.i) / d;
  return {x, y};
}

Point base_point(const HalfPlane& h) {
  Rat s = -h.a / Rat(h.n.norm2());
  return {s * h.n.i, s * h.n.j};
}

Rat abs_rat(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace

Polygon clip(const Polygon& poly, LatticeVec n, const Rat& a) {
  if (poly.empty()) return {};
  if (poly.size() == 1) {
    return dot(n, poly[0]) + a >= 0 ? poly : Polygon{};
  }
  Polygon out;
  out.reserve(poly.size() + 1);
  std::vector<Rat> val(poly.size());
  for (std::size_t i = 0; i < poly.size(); ++i) val[i] = dot(n, poly[i]) + a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    std::size_t j = (i + 1) % poly.size();
    const Rat& vp = val[i];
    const Rat& vq = val[j];
    if (vp >= 0) out.push_back(poly[i]);
    if ((vp > 0 && vq < 0) || (vp < 0 && vq > 0)) {
      Rat t = vp / (vp - vq);
      out.push_back(poly[i] + t * (poly[j] - poly[i]));
    }
  }
  return dedupe(out);
}

Rat area2(const Polygon& poly) {
  Rat s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point& p = poly[i];
    const Point& q = poly[(i + 1) % poly.size()];
    s += p.x * q.y - p.y * q.x;
  }
  return s;
}

Rat area(const Polygon& poly) { return area2(poly) / 2; }

Polygon simplify(const Polygon& poly) {
  Polygon p = dedupe(poly);
  if (p.size() < 3) return p;
  bool changed = true;
  while (changed && p.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const Point& a = p[(i + p.size() - 1) % p.size()];
      const Point& b = p[i];
      const Point& c = p[(i + 1) % p.size()];
      if (cross(b - a, c - b) == 0) {
        p.erase(p.begin() + static_cast<long>(i));
        changed = true;
        break;
      }
    }
  }
  return p;
}

bool contains(const Polygon& poly, const Point& z) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (cross(poly[(i + 1) % poly.size()] - poly[i], z - poly[i]) < 0) return false;
  }
  return true;
}

bool angle_less(LatticeVec a, LatticeVec b) {
  auto half = [](LatticeVec v) { return (v.j > 0 || (v.j == 0 && v.i > 0)) ? 0 : 1; };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return det(a, b) > 0;
}

QPolygon::QPolygon(std::vector<HalfPlane> hps) {
  if (hps.empty()) throw Error(ErrorCode::NotAdmissible, "no half-planes");
  std::map<LatticeVec, Rat> best;
  for (auto& h : hps) {
    if (h.n.is_zero()) throw Error(ErrorCode::PreconditionViolated, "zero normal");
    long g = gcd_of(h.n);
    LatticeVec n{h.n.i / g, h.n.j / g};
    Rat a = h.a / Rat(g);
    auto it = best.find(n);
    if (it == best.end() || a < it->second) best[n] = a;
  }
  std::vector<HalfPlane> list;
  for (auto& [n, a] : best) list.push_back({n, a});
  std::sort(list.begin(), list.end(), [](const HalfPlane& l, const HalfPlane& r) { return angle_less(l.n, r.n); });

  Rat big = 0;
  auto bump = [&](const Point& p) {
    big = std::max(big, abs_rat(p.x));
    big = std::max(big, abs_rat(p.y));
  };
  for (std::size_t i = 0; i < list.size(); ++i) {
    bump(base_point(list[i]));
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      if (det(list[i].n, list[j].n) != 0) bump(line_intersection(list[i], list[j]));
    }
  }
  Rat b = 1 + 2 * big;
  Polygon poly{{Rat(-b), Rat(-b)}, {b, Rat(-b)}, {b, b}, {Rat(-b), b}};
  for (const auto& h : list) poly = clip(poly, h.n, h.a);
  poly = simplify(poly);
  if (poly.size() < 3 || area2(poly) <= 0) throw Error(ErrorCode::NotAdmissible, "empty interior");

  for (const auto& h : list) {
    int on = 0;
    for (const auto& p : poly) {
      if (h.eval(p) == 0) ++on;
    }
    if (on >= 2) halfplanes_.push_back(h);
  }
  auto on_box = [&](const Point& p) { return abs_rat(p.x) == b || abs_rat(p.y) == b; };
  bounded_ = std::none_of(poly.begin(), poly.end(), on_box);
  outline_ = poly;
  if (bounded_) {
    std::size_t m = halfplanes_.size();
    for (std::size_t k = 0; k < m; ++k) {
      vertices_.push_back(line_intersection(halfplanes_[(k + m - 1) % m], halfplanes_[k]));
    }
    outline_ = vertices_;
  } else {
    for (const auto& p : poly) {
      if (!on_box(p)) vertices_.push_back(p);
    }
  }
}

QPolygon QPolygon::from_vertices(const std::vector<Point>& ccw) {
  std::vector<HalfPlane> hps;
  for (std::size_t k = 0; k < ccw.size(); ++k) {
    const Point& p = ccw[k];
    const Point& q = ccw[(k + 1) % ccw.size()];
    Point d = q - p;
    Rat nx = -d.y, ny = d.x;
    mpz_class l = lcm(nx.get_den(), ny.get_den());
    mpz_class ix = nx.get_num() * (l / nx.get_den());
    mpz_class iy = ny.get_num() * (l / ny.get_den());
    mpz_class g = gcd(ix, iy);
    if (g == 0) throw Error(ErrorCode::PreconditionViolated, "repeated vertex");
    ix /= g;
    iy /= g;
    if (!ix.fits_slong_p() || !iy.fits_slong_p()) throw Error(ErrorCode::Unsupported, "normal too large");
    LatticeVec n{ix.get_si(), iy.get_si()};
    hps.push_back({n, Rat(-dot(n, p))});
  }
  return QPolygon(std::move(hps));
}

QPolygon QPolygon::box(const Rat& x0, const Rat& y0, const Rat& x1, const Rat& y1) {
  return QPolygon({{{1, 0}, Rat(-x0)}, {{0, 1}, Rat(-y0)}, {{-1, 0}, x1}, {{0, -1}, y1}});
}

std::pair<Point, Point> QPolygon::side(std::size_t k) const {
  if (!bounded_) throw Error(ErrorCode::Unsupported, "sides of an unbounded polygon");
  return {vertices_[k], vertices_[(k + 1) % vertices_.size()]};
}

bool QPolygon::contains(const Point& z) const {
  return std::all_of(halfplanes_.begin(), halfplanes_.end(), [&](const HalfPlane& h) { return h.eval(z) >= 0; });
}

bool QPolygon::interior(const Point& z) const {
  return std::all_of(halfplanes_.begin(), halfplanes_.end(), [&](const HalfPlane& h) { return h.eval(z) > 0; });
}

bool QPolygon::on_boundary(const Point& z) const { return contains(z) && !interior(z); }

Rat QPolygon::boundary_dist2(const Point& z) const {
  Rat best = -1;
  for (const auto& h : halfplanes_) {
    Rat e = h.eval(z);
    Rat d = e * e / Rat(h.n.norm2());
    if (best < 0 || d < best) best = d;
  }
  return best;
}

std::ostream& operator<<(std::ostream& os, const QPolygon& p) {
  os << "QPolygon{";
  for (const auto& h : p.halfplanes()) os << " " << h.n << "." << "z+" << to_string(h.a) << ">=0";
  return os << " }";
}

std::optional<Rat> support_coeff(const QPolygon& dom, LatticeVec v) {
  if (v.is_zero()) return Rat(0);
  const auto& hps = dom.halfplanes();
  if (!dom.bounded()) {
    for (const auto& h : hps) {
      for (LatticeVec r : {rot90(h.n), -rot90(h.n), h.n}) {
        bool in_rec = std::all_of(hps.begin(), hps.end(), [&](const HalfPlane& g) {
          return g.n.i * r.i + g.n.j * r.j >= 0;
        });
        if (in_rec && v.i * r.i + v.j * r.j < 0) return std::nullopt;
      }
    }
  }
  std::optional<Rat> best;
  auto consider = [&](const Point& p) {
    Rat val = dot(v, p);
    if (!best || val < *best) best = val;
  };
  if (!dom.vertices().empty()) {
    for (const auto& p : dom.vertices()) consider(p);
  } else {
    for (const auto& h : hps) {
      Point b = base_point(h);
      if (dom.contains(b)) consider(b);
    }
  }
  return best;
}

std::optional<Rat> support_coeff(const ConvexDomain& dom, LatticeVec v) {
  if (const auto* poly = std::get_if<QPolygon>(&dom)) return support_coeff(*poly, v);
  if (v.is_zero()) return Rat(0);
  return std::get<OracleDomain>(dom).support(v);
}

bool is_admissible(const ConvexDomain& dom) {
  if (std::holds_alternative<QPolygon>(dom)) return true;
  const auto& oracle = std::get<OracleDomain>(dom);
  bool some_finite = false;
  long n = oracle.radius;
  for (long i = -n; i <= n; ++i) {
    for (long j = -n; j <= n; ++j) {
      if ((i == 0 && j == 0) || i * i + j * j > n * n) continue;
      auto c = oracle.support({i, j});
      if (!c) continue;
      some_finite = true;
      auto c_neg = oracle.support({-i, -j});
      if (c_neg && *c + *c_neg == 0) return false;
    }
  }
  return some_finite;
}

std::set<LatticeVec> relevant_monomials(const ConvexDomain& dom, std::span<const Point> k_vertices, const Rat& c) {
  if (c <= 0) throw Error(ErrorCode::PreconditionViolated, "C must be positive");
  if (k_vertices.empty()) throw Error(ErrorCode::PreconditionViolated, "empty K");
  std::optional<Rat> r2;
  auto update = [&](const Rat& d2) {
    if (!r2 || d2 < *r2) r2 = d2;
  };
  if (const auto* poly = std::get_if<QPolygon>(&dom)) {
    for (const auto& z : k_vertices) {
      if (!poly->interior(z)) throw Error(ErrorCode::DistanceZero, "K touches the boundary");
      update(poly->boundary_dist2(z));
    }
  } else {
    const auto& oracle = std::get<OracleDomain>(dom);
    long n = oracle.radius;
    for (const auto& z : k_vertices) {
      for (long i = -n; i <= n; ++i) {
        for (long j = -n; j <= n; ++j) {
          if ((i == 0 && j == 0) || i * i + j * j > n * n) continue;
          auto cv = oracle.support({i, j});
          if (!cv) continue;
          Rat e = dot(LatticeVec{i, j}, z) - *cv;
          if (e <= 0) throw Error(ErrorCode::DistanceZero, "K touches the boundary");
          update(e * e / Rat(i * i + j * j));
        }
      }
    }
    if (!r2) return {{0, 0}};
  }
  Rat bound = c * c / *r2;
  long r = static_cast<long>(std::floor(sqrt_upper(bound).get_d())) + 1;
  std::set<LatticeVec> out;
  for (long i = -r; i <= r; ++i) {
    for (long j = -r; j <= r; ++j) {
      if (Rat(i * i + j * j) <= bound) out.insert({i, j});
    }
  }
  return out;
}

Corner corner_at(const QPolygon& poly, std::size_t k) {
  if (!poly.bounded()) throw Error(ErrorCode::Unsupported, "corners of an unbounded polygon");
  std::size_t m = poly.num_sides();
  return {poly.vertices()[k], poly.halfplanes()[(k + m - 1) % m].n, poly.halfplanes()[k].n};
}

std::vector<Corner> corners(const QPolygon& poly) {
  std::vector<Corner> out;
  for (std::size_t k = 0; k < poly.num_sides(); ++k) out.push_back(corner_at(poly, k));
  return out;
}

bool is_unimodular(const Corner& corner) {
  long d = det(corner.n1, corner.n2);
  return d == 1 || d == -1;
}

bool is_unimodular(const QPolygon& poly) {
  auto cs = corners(poly);
  return std::all_of(cs.begin(), cs.end(), [](const Corner& c) { return is_unimodular(c); });
}

namespace {

std::pair<Rat, Rat> cone_coords(const Corner& corner, LatticeVec v) {
  long d = det(corner.n1, corner.n2);
  if (d == 0) throw Error(ErrorCode::PreconditionViolated, "dependent corner normals");
  return {rat(det(v, corner.n2), d), rat(det(corner.n1, v), d)};
}

}  // namespace

bool cone_lattice_contains(const Corner& corner, LatticeVec v) {
  auto [alpha, beta] = cone_coords(corner, v);
  return alpha >= 0 && beta >= 0;
}

bool cone_interior_contains(const Corner& corner, LatticeVec v) {
  auto [alpha, beta] = cone_coords(corner, v);
  return alpha > 0 && beta > 0;
}

QPolygon blow_up(const QPolygon& poly, const Corner& corner, LatticeVec v, const Rat& eps) {
  if (eps <= 0) throw Error(ErrorCode::PreconditionViolated, "blow-up depth must be positive");
  if (v.is_zero() || !cone_lattice_contains(corner, v)) throw Error(ErrorCode::BadDirection, "direction outside the corner cone");
  Rat offset = dot(v, corner.apex) + eps;
  for (const auto& w : poly.vertices()) {
    if (w == corner.apex) continue;
    if (dot(v, w) <= offset) throw Error(ErrorCode::TooLarge, "cut reaches another corner");
  }
  auto hps = poly.halfplanes();
  hps.push_back({v, Rat(-offset)});
  return QPolygon(std::move(hps));
}

}  // namespace tropwave
