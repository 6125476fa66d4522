#pragma once

// Exact rational scalars, rational points and integer lattice vectors.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace tropwave {

using Rat = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws Error(ParseError) on anything else.
Rat parse_rat(std::string_view text);

/// Always "p/q" with q >= 1, e.g. "3/1", "-2/15", "0/1".
std::string to_string(const Rat& r);

double to_double(const Rat& r);

Rat rat(long num, long den = 1);

/// Smallest rational >= sqrt(x) on the dyadic grid 2^-bits (x >= 0).
Rat sqrt_upper(const Rat& x, int bits = 48);
/// Largest rational <= sqrt(x) on the dyadic grid 2^-bits (x >= 0).
Rat sqrt_lower(const Rat& x, int bits = 48);

struct Point {
  Rat x;
  Rat y;

  Point() = default;
  Point(Rat x_, Rat y_) : x(std::move(x_)), y(std::move(y_)) {}

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend Point operator+(const Point& a, const Point& b) { return {Rat(a.x + b.x), Rat(a.y + b.y)}; }
  friend Point operator-(const Point& a, const Point& b) { return {Rat(a.x - b.x), Rat(a.y - b.y)}; }
  friend Point operator*(const Rat& s, const Point& p) { return {Rat(s * p.x), Rat(s * p.y)}; }
};

/// Lexicographic (x, then y); used for canonical ordering of point sets.
bool lex_less(const Point& a, const Point& b);

Rat dot(const Point& a, const Point& b);
Rat cross(const Point& a, const Point& b);
Rat norm2(const Point& a);
Rat dist2(const Point& a, const Point& b);
/// Squared distance from p to the closed segment [a, b].
Rat dist2_to_segment(const Point& p, const Point& a, const Point& b);

std::ostream& operator<<(std::ostream& os, const Point& p);

struct LatticeVec {
  long i = 0;
  long j = 0;

  constexpr LatticeVec() = default;
  constexpr LatticeVec(long i_, long j_) : i(i_), j(j_) {}

  constexpr auto operator<=>(const LatticeVec&) const = default;

  constexpr LatticeVec operator+(LatticeVec o) const { return {i + o.i, j + o.j}; }
  constexpr LatticeVec operator-(LatticeVec o) const { return {i - o.i, j - o.j}; }
  constexpr LatticeVec operator-() const { return {-i, -j}; }
  constexpr LatticeVec operator*(long s) const { return {s * i, s * j}; }

  constexpr bool is_zero() const { return i == 0 && j == 0; }
  constexpr long norm2() const { return i * i + j * j; }
};

long gcd_of(LatticeVec v);
bool is_primitive(LatticeVec v);
/// v / gcd(v); the zero vector is returned unchanged.
LatticeVec primitive(LatticeVec v);
long det(LatticeVec a, LatticeVec b);
/// Rotation by +90 degrees: (i, j) -> (-j, i).
constexpr LatticeVec rot90(LatticeVec v) { return {-v.j, v.i}; }

Rat dot(LatticeVec v, const Point& z);
Point to_point(LatticeVec v);

std::ostream& operator<<(std::ostream& os, LatticeVec v);

struct LatticeVecHash {
  std::size_t operator()(LatticeVec v) const noexcept {
    return std::hash<long>{}(v.i) * 1000003u ^ std::hash<long>{}(v.j);
  }
};

}  // namespace tropwave
