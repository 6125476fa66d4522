#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tropwave/cells.hpp"

namespace tropwave {

/// Laurent polynomial over GF(2) in s = t^(1/2^level). Bit i of the word
/// array is the coefficient of s^(low + i). Kept normalized: lowest bit set,
/// no trailing zero words, and the smallest level that represents it.
class GF2Poly {
 public:
  GF2Poly() = default;
  static GF2Poly one();
  /// t^e for a dyadic rational e. Throws Error(PreconditionViolated) otherwise.
  static GF2Poly monomial(const Rat& e);
  static GF2Poly from_exponents(const std::vector<Rat>& exps);

  bool is_zero() const { return words_.empty(); }
  int level() const { return level_; }
  /// Exponents in increasing order.
  std::vector<Rat> exponents() const;
  /// Lowest exponent. Throws Error(ZeroPolynomial) for zero.
  Rat valuation() const;
  std::size_t term_count() const;

  GF2Poly& operator+=(const GF2Poly& o);
  friend GF2Poly operator+(GF2Poly a, const GF2Poly& b) { return a += b; }
  friend GF2Poly operator*(const GF2Poly& a, const GF2Poly& b);
  /// Frobenius: the square.
  GF2Poly square() const;
  friend bool operator==(const GF2Poly& a, const GF2Poly& b) {
    return a.level_ == b.level_ && a.low_ == b.low_ && a.words_ == b.words_;
  }

  /// Splits off s^low: returns (low exponent, polynomial with nonzero constant term).
  std::pair<Rat, GF2Poly> split_monomial() const;
  /// Polynomial gcd of two polynomials with nonzero constant terms.
  friend GF2Poly poly_gcd(const GF2Poly& a, const GF2Poly& b);
  /// Exact quotient a / b of polynomials (remainder must vanish).
  friend GF2Poly exact_div(const GF2Poly& a, const GF2Poly& b);

 private:
  int level_ = 0;
  long low_ = 0;
  std::vector<std::uint64_t> words_;

  GF2Poly at_level(int k) const;
  void normalize();
  bool bit(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
  std::size_t bit_length() const;
  friend void divmod_bits(std::vector<std::uint64_t>& rem, const std::vector<std::uint64_t>& d,
                          std::vector<std::uint64_t>* quot);
};

/// Element of the field of rational functions in fractional powers of t over GF(2).
/// Canonical: den has constant term 1 and is coprime to num.
class GF2RatFun {
 public:
  GF2RatFun() = default;
  explicit GF2RatFun(GF2Poly num, GF2Poly den = GF2Poly::one());
  static GF2RatFun zero() { return GF2RatFun(); }
  static GF2RatFun one() { return GF2RatFun(GF2Poly::one()); }
  static GF2RatFun monomial(const Rat& e) { return GF2RatFun(GF2Poly::monomial(e)); }

  bool is_zero() const { return num_.is_zero(); }
  const GF2Poly& num() const { return num_; }
  const GF2Poly& den() const { return den_; }

  friend GF2RatFun operator+(const GF2RatFun& a, const GF2RatFun& b);
  friend GF2RatFun operator*(const GF2RatFun& a, const GF2RatFun& b);
  /// Throws Error(ZeroPolynomial) for zero.
  GF2RatFun inverse() const;
  friend GF2RatFun operator/(const GF2RatFun& a, const GF2RatFun& b) { return a * b.inverse(); }
  GF2RatFun square() const;
  GF2RatFun pow(long n) const;
  friend bool operator==(const GF2RatFun& a, const GF2RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

 private:
  GF2Poly num_;
  GF2Poly den_ = GF2Poly::one();
  void reduce();
};

/// Minimal exponent; nullopt stands for +infinity (the zero element).
std::optional<Rat> valuation(const GF2RatFun& a);

std::string to_string(const GF2Poly& p);
std::string to_string(const GF2RatFun& a);
/// Parses "t^(1/2)+1" style sums. Throws Error(ParseError).
GF2Poly parse_gf2poly(std::string_view text);
/// Parses "num/den" or "num". Throws Error(ParseError).
GF2RatFun parse_gf2ratfun(std::string_view text);

/// F(X, Y) = sum of A_ij X^i Y^j with nonzero coefficients.
class LaurentPoly2 {
 public:
  LaurentPoly2() = default;
  void set(LatticeVec v, const GF2RatFun& a);
  const std::map<LatticeVec, GF2RatFun>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  GF2RatFun evaluate(const GF2RatFun& x, const GF2RatFun& y) const;
  friend bool operator==(const LaurentPoly2& a, const LaurentPoly2& b) { return a.terms_ == b.terms_; }

 private:
  std::map<LatticeVec, GF2RatFun> terms_;
};

/// One "A(i,j)=num/den" line per term in lexicographic order of (i,j).
std::string to_text(const LaurentPoly2& f);
LaurentPoly2 parse_laurent(std::string_view text);

/// (i,j) -> val(A_ij). Throws Error(ZeroPolynomial) for F = 0.
MonomialMap trop(const LaurentPoly2& f);

/// A_ij -> A_ij + A_ij^2 p1^i p2^j / F(p); F itself when F(p) = 0.
LaurentPoly2 s_wave(const LaurentPoly2& f, const GF2RatFun& p1, const GF2RatFun& p2);

/// Domain-free single wave on a finite min-plus polynomial: the unique
/// minimizing coefficient at q is raised to the second smallest value.
/// Unchanged when the minimum at q is attained twice.
MonomialMap tropical_wave(const MonomialMap& f, const Point& q);

enum class LiftStatus { Holds, Mismatch, NonGeneric };
const char* to_string(LiftStatus s);

struct LiftCheck {
  LiftStatus status = LiftStatus::Holds;
  MonomialMap wave_side;  // G_{val p} Trop(F)
  MonomialMap lift_side;  // Trop(S_p F)
  std::optional<LatticeVec> differing;
};

/// Compares both sides exactly. Instances where the minimum of Trop(F) at
/// val(p), or the runner-up value, is attained more than once are NonGeneric:
/// leading terms can cancel there and the identity need not hold.
LiftCheck verify_lift_theorem(const LaurentPoly2& f, const GF2RatFun& p1, const GF2RatFun& p2);

struct LiftFuzzReport {
  std::size_t trials = 0;
  std::size_t holds = 0;
  std::size_t mismatches = 0;
  std::size_t redrawn = 0;         // non-generic draws replaced
  std::size_t idempotent = 0;      // S_p S_p F = S_p F
  std::size_t vanishes_at_p = 0;   // (S_p F)(p) = 0
  std::optional<std::string> counterexample;
};

struct LiftFuzzConfig {
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::size_t terms = 5;
  long exponent_range = 3;  // |i|, |j| <= range
};

LiftFuzzReport lift_fuzz(const LiftFuzzConfig& cfg);

/// Random nonzero element with at most `terms` terms in numerator and denominator.
GF2RatFun random_ratfun(std::uint64_t& state, std::size_t terms);

}  // namespace tropwave
