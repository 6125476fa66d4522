#include <gtest/gtest.h>

#include <random>
#include <set>

#include "tropwave/errors.hpp"
#include "tropwave/lift2.hpp"

using namespace tropwave;

namespace {

GF2RatFun t_pow(long num, long den = 1) { return GF2RatFun::monomial(rat(num, den)); }
GF2RatFun one() { return GF2RatFun::one(); }

// Product of GF(2) polynomials as exponent sets: every pair contributes, equal sums cancel.
std::set<Rat> oracle_product(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  std::set<Rat> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Rat s = x + y;
      if (!out.erase(s)) out.insert(s);
    }
  return out;
}

std::vector<Rat> random_exponents(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<long> e(-12, 24);
  std::set<Rat> s;
  while (s.size() < n) s.insert(rat(e(rng), 4));
  return {s.begin(), s.end()};
}

LaurentPoly2 x_plus_y() {
  LaurentPoly2 f;
  f.set({1, 0}, one());
  f.set({0, 1}, one());
  return f;
}

}  // namespace

TEST(GF2, ValuationExamples) {
  EXPECT_EQ(valuation(t_pow(1) + t_pow(2)), Rat(1));
  EXPECT_EQ(valuation(parse_gf2ratfun("t/(1+t)")), Rat(1));
  EXPECT_FALSE(valuation(GF2RatFun::zero()).has_value());
  EXPECT_EQ(valuation(t_pow(3, 4) / (t_pow(1, 2) + t_pow(2))), rat(1, 4));
}

TEST(GF2, ProductMatchesExponentSetOracle) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_exponents(rng, 1 + trial % 6), b = random_exponents(rng, 1 + (trial / 6) % 6);
    GF2Poly pa = GF2Poly::from_exponents(a), pb = GF2Poly::from_exponents(b);
    std::set<Rat> want = oracle_product(a, b);
    auto got = (pa * pb).exponents();
    EXPECT_EQ(std::set<Rat>(got.begin(), got.end()), want);
    auto sum = (pa + pb).exponents();
    std::set<Rat> sym;
    for (const auto& x : a) sym.insert(x);
    for (const auto& x : b)
      if (!sym.erase(x)) sym.insert(x);
    EXPECT_EQ(std::set<Rat>(sum.begin(), sum.end()), sym);
  }
}

TEST(GF2, FieldAxioms) {
  std::uint64_t state = 5;
  for (int trial = 0; trial < 300; ++trial) {
    GF2RatFun a = random_ratfun(state, 4), b = random_ratfun(state, 4), c = random_ratfun(state, 4);
    EXPECT_TRUE((a + a).is_zero());
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * a.inverse(), one());
    EXPECT_EQ((a + b).square(), a.square() + b.square());
    EXPECT_EQ(a.pow(3), a * a * a);
    EXPECT_EQ(a.pow(-2), (a * a).inverse());
    auto va = valuation(a), vb = valuation(b), vs = valuation(a + b);
    if (vs) EXPECT_GE(*vs, std::min(*va, *vb));
    if (*va != *vb) EXPECT_EQ(*vs, std::min(*va, *vb));
    EXPECT_EQ(*valuation(a * b), *va + *vb);
  }
  EXPECT_THROW(GF2RatFun::zero().inverse(), Error);
}

TEST(GF2, CanonicalFormDecidesEquality) {
  GF2RatFun a = parse_gf2ratfun("t/(1+t)");
  GF2RatFun b = (t_pow(1) + t_pow(2)) / (one() + t_pow(2));
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_string(a), to_string(b));
  EXPECT_EQ(parse_gf2ratfun(to_string(b)), b);
  EXPECT_EQ(parse_gf2poly("t^(1/2)+1+t^(1/2)"), GF2Poly::one());
  EXPECT_THROW(parse_gf2poly("t^(1/3)"), Error);
  EXPECT_THROW(parse_gf2ratfun("t/0"), Error);
  EXPECT_THROW(parse_gf2ratfun("(1+t"), Error);
}

TEST(Trop, Examples) {
  EXPECT_EQ(trop(x_plus_y()), (MonomialMap{{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}}));
  LaurentPoly2 f;
  f.set({1, 0}, t_pow(1));
  f.set({0, 1}, one());
  EXPECT_EQ(trop(f), (MonomialMap{{{1, 0}, Rat(1)}, {{0, 1}, Rat(0)}}));
  LaurentPoly2 g;
  g.set({1, 0}, t_pow(1) + t_pow(2));
  EXPECT_EQ(trop(g), (MonomialMap{{{1, 0}, Rat(1)}}));
  EXPECT_THROW(trop(LaurentPoly2{}), Error);
}

TEST(SWave, HandComputedExample) {
  LaurentPoly2 s = s_wave(x_plus_y(), t_pow(1), t_pow(2));
  EXPECT_EQ(s.terms().at({1, 0}), parse_gf2ratfun("t/(1+t)"));
  EXPECT_EQ(s.terms().at({0, 1}), parse_gf2ratfun("1/(1+t)"));
  EXPECT_EQ(trop(s), (MonomialMap{{{1, 0}, Rat(1)}, {{0, 1}, Rat(0)}}));
  EXPECT_TRUE(s.evaluate(t_pow(1), t_pow(2)).is_zero());
  EXPECT_EQ(s_wave(s, t_pow(1), t_pow(2)), s);
}

TEST(SWave, VanishingAtPointIsFixed) {
  LaurentPoly2 f = x_plus_y();
  EXPECT_EQ(s_wave(f, t_pow(1), t_pow(1)), f);
}

TEST(TropicalWave, SingleWaveOnMinPlusPolynomial) {
  MonomialMap f{{{1, 0}, Rat(0)}, {{0, 1}, Rat(0)}};
  EXPECT_EQ(tropical_wave(f, {Rat(1), Rat(2)}), (MonomialMap{{{1, 0}, Rat(1)}, {{0, 1}, Rat(0)}}));
  EXPECT_EQ(tropical_wave(f, {Rat(1), Rat(1)}), f);
}

TEST(LiftIdentity, HandExampleHolds) {
  LiftCheck c = verify_lift_theorem(x_plus_y(), t_pow(1), t_pow(2));
  EXPECT_EQ(c.status, LiftStatus::Holds);
  EXPECT_EQ(c.wave_side, c.lift_side);
  EXPECT_FALSE(c.differing.has_value());
}

TEST(LiftIdentity, TiedMinimumIsNonGeneric) {
  // X + Y + t^5 at p = (t, t + t^2): x and y tie at val(p) = (1, 1) and F(p) loses its leading terms.
  LaurentPoly2 f = x_plus_y();
  f.set({0, 0}, t_pow(5));
  GF2RatFun p1 = t_pow(1), p2 = t_pow(1) + t_pow(2);
  LiftCheck c = verify_lift_theorem(f, p1, p2);
  EXPECT_EQ(c.status, LiftStatus::NonGeneric);
  EXPECT_EQ(c.wave_side, trop(f));
  EXPECT_NE(c.lift_side, trop(f));
}

TEST(LiftIdentity, FuzzHoldsEverywhere) {
  LiftFuzzReport r = lift_fuzz({1000, 1, 5, 3});
  EXPECT_EQ(r.trials, 1000u);
  EXPECT_EQ(r.holds, 1000u);
  EXPECT_EQ(r.mismatches, 0u);
  EXPECT_EQ(r.idempotent, 1000u);
  EXPECT_EQ(r.vanishes_at_p, 1000u);
  EXPECT_FALSE(r.counterexample.has_value());
}

TEST(LaurentText, RoundTrip) {
  std::uint64_t state = 9;
  for (int trial = 0; trial < 50; ++trial) {
    LaurentPoly2 f;
    for (long i = -1; i <= 1; ++i)
      for (long j = -1; j <= 1; ++j)
        if ((state >> (i + 2 + 3 * (j + 1))) & 1U) f.set({i, j}, random_ratfun(state, 3));
    if (f.is_zero()) continue;
    std::string text = to_text(f);
    EXPECT_EQ(parse_laurent(text), f);
    EXPECT_EQ(to_text(parse_laurent(text)), text);
  }
  EXPECT_EQ(to_text(x_plus_y()), "A(0,1)=1/1\nA(1,0)=1/1\n");
  EXPECT_THROW(parse_laurent("A(1,0)=\n"), Error);
}
