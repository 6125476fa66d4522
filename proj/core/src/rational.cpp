#include "tropwave/rational.hpp"

#include <numeric>
#include <sstream>

#include "tropwave/errors.hpp"

namespace tropwave {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DistanceZero: return "DistanceZero";
    case ErrorCode::BadDirection: return "BadDirection";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::UnboundedMonomial: return "UnboundedMonomial";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorCode::NegativeIncrement: return "NegativeIncrement";
    case ErrorCode::EmptyLevelSet: return "EmptyLevelSet";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorCode::NotNice: return "NotNice";
    case ErrorCode::NotUnimodular: return "NotUnimodular";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::NotAVertex: return "NotAVertex";
    case ErrorCode::UnclassifiableSide: return "UnclassifiableSide";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

namespace {

bool is_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den[0] == '-' || den[0] == '+') {
    throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rat& r) { return r.get_d(); }

Rat rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat sqrt_upper(const Rat& x, int bits) {
  // ceil(sqrt(x * 4^bits)) / 2^bits
  mpz_class scale = mpz_class(1) << (2 * bits);
  mpz_class num = x.get_num() * scale;
  mpz_class q = num / x.get_den();
  if (q * x.get_den() != num) q += 1;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
  if (r * r < q) r += 1;
  Rat out(r, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

Rat sqrt_lower(const Rat& x, int bits) {
  mpz_class scale = mpz_class(1) << (2 * bits);
  mpz_class q = (x.get_num() * scale) / x.get_den();
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
  Rat out(r, mpz_class(1) << bits);
  out.canonicalize();
  return out;
}

bool lex_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Rat dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }
Rat cross(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }
Rat norm2(const Point& a) { return dot(a, a); }
Rat dist2(const Point& a, const Point& b) { return norm2(a - b); }

Rat dist2_to_segment(const Point& p, const Point& a, const Point& b) {
  Point ab = b - a;
  Rat len2 = norm2(ab);
  if (len2 == 0) return dist2(p, a);
  Rat t = dot(p - a, ab) / len2;
  if (t <= 0) return dist2(p, a);
  if (t >= 1) return dist2(p, b);
  Point foot = a + t * ab;
  return dist2(p, foot);
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  return os << "(" << to_string(p.x) << ", " << to_string(p.y) << ")";
}

long gcd_of(LatticeVec v) { return std::gcd(v.i, v.j); }

bool is_primitive(LatticeVec v) { return gcd_of(v) == 1; }

LatticeVec primitive(LatticeVec v) {
  long g = gcd_of(v);
  if (g == 0) return v;
  return {v.i / g, v.j / g};
}

long det(LatticeVec a, LatticeVec b) { return a.i * b.j - a.j * b.i; }

Rat dot(LatticeVec v, const Point& z) { return Rat(v.i) * z.x + Rat(v.j) * z.y; }

Point to_point(LatticeVec v) { return {Rat(v.i), Rat(v.j)}; }

std::ostream& operator<<(std::ostream& os, LatticeVec v) {
  return os << "(" << v.i << "," << v.j << ")";
}

}  // namespace tropwave
