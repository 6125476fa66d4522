#include "tropwave/lift2.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include "tropwave/errors.hpp"

namespace tropwave {

namespace {

using Words = std::vector<std::uint64_t>;

constexpr std::uint64_t kOddBits = 0xAAAAAAAAAAAAAAAAULL;

void trim(Words& w) {
  while (!w.empty() && w.back() == 0) w.pop_back();
}

std::size_t bit_len(const Words& w) {
  if (w.empty()) return 0;
  return 64 * (w.size() - 1) + (64 - static_cast<std::size_t>(__builtin_clzll(w.back())));
}

void set_bit(Words& w, std::size_t i) {
  if (w.size() <= i / 64) w.resize(i / 64 + 1, 0);
  w[i / 64] |= std::uint64_t{1} << (i % 64);
}

// dst ^= src << shift
void xor_shifted(Words& dst, const Words& src, std::size_t shift) {
  if (src.empty()) return;
  std::size_t ws = shift / 64, bs = shift % 64;
  std::size_t need = src.size() + ws + 1;
  if (dst.size() < need) dst.resize(need, 0);
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i + ws] ^= src[i] << bs;
    if (bs != 0) dst[i + ws + 1] ^= src[i] >> (64 - bs);
  }
}

template <class F>
void for_each_bit(const Words& w, F&& fn) {
  for (std::size_t k = 0; k < w.size(); ++k) {
    std::uint64_t x = w[k];
    while (x != 0) {
      int b = __builtin_ctzll(x);
      fn(64 * k + static_cast<std::size_t>(b));
      x &= x - 1;
    }
  }
}

long pow2(int k) { return 1L << k; }

}  // namespace

void divmod_bits(Words& rem, const Words& d, Words* quot) {
  std::size_t dl = bit_len(d);
  if (dl == 0) throw Error(ErrorCode::ZeroPolynomial, "division by zero polynomial");
  for (std::size_t rl = bit_len(rem); rl >= dl; rl = bit_len(rem)) {
    std::size_t shift = rl - dl;
    xor_shifted(rem, d, shift);
    trim(rem);
    if (quot) set_bit(*quot, shift);
  }
  trim(rem);
}

GF2Poly GF2Poly::one() {
  GF2Poly p;
  p.words_ = {1};
  return p;
}

GF2Poly GF2Poly::monomial(const Rat& e) {
  mpz_class den = e.get_den();
  int k = 0;
  while (den > 1) {
    if (den % 2 != 0) throw Error(ErrorCode::PreconditionViolated, "exponent is not dyadic");
    den /= 2;
    ++k;
  }
  if (k > 40 || !e.get_num().fits_slong_p()) throw Error(ErrorCode::Unsupported, "exponent too large");
  GF2Poly p;
  p.level_ = k;
  p.low_ = e.get_num().get_si();
  p.words_ = {1};
  p.normalize();
  return p;
}

GF2Poly GF2Poly::from_exponents(const std::vector<Rat>& exps) {
  GF2Poly out;
  for (const auto& e : exps) out += monomial(e);
  return out;
}

std::size_t GF2Poly::bit_length() const { return bit_len(words_); }

void GF2Poly::normalize() {
  trim(words_);
  if (words_.empty()) {
    level_ = 0;
    low_ = 0;
    return;
  }
  std::size_t z = 0;
  while (words_[z / 64] == 0) z += 64;
  z += static_cast<std::size_t>(__builtin_ctzll(words_[z / 64]));
  if (z > 0) {
    Words shifted;
    for_each_bit(words_, [&](std::size_t i) { set_bit(shifted, i - z); });
    words_ = std::move(shifted);
    low_ += static_cast<long>(z);
  }
  while (level_ > 0 && low_ % 2 == 0) {
    bool even = std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return (w & kOddBits) == 0; });
    if (!even) break;
    Words half;
    for_each_bit(words_, [&](std::size_t i) { set_bit(half, i / 2); });
    words_ = std::move(half);
    low_ /= 2;
    --level_;
  }
}

GF2Poly GF2Poly::at_level(int k) const {
  if (k == level_ || is_zero()) {
    GF2Poly p = *this;
    p.level_ = k;
    if (is_zero()) p.level_ = k;
    return p;
  }
  std::size_t f = static_cast<std::size_t>(pow2(k - level_));
  GF2Poly p;
  p.level_ = k;
  p.low_ = low_ * static_cast<long>(f);
  for_each_bit(words_, [&](std::size_t i) { set_bit(p.words_, i * f); });
  return p;
}

std::vector<Rat> GF2Poly::exponents() const {
  std::vector<Rat> out;
  for_each_bit(words_, [&](std::size_t i) { out.push_back(rat(low_ + static_cast<long>(i), pow2(level_))); });
  return out;
}

Rat GF2Poly::valuation() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "valuation of zero");
  return rat(low_, pow2(level_));
}

std::size_t GF2Poly::term_count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

GF2Poly& GF2Poly::operator+=(const GF2Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int k = std::max(level_, o.level_);
  GF2Poly a = at_level(k), b = o.at_level(k);
  long low = std::min(a.low_, b.low_);
  Words w;
  xor_shifted(w, a.words_, static_cast<std::size_t>(a.low_ - low));
  xor_shifted(w, b.words_, static_cast<std::size_t>(b.low_ - low));
  level_ = k;
  low_ = low;
  words_ = std::move(w);
  normalize();
  return *this;
}

GF2Poly operator*(const GF2Poly& a, const GF2Poly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  int k = std::max(a.level_, b.level_);
  GF2Poly x = a.at_level(k), y = b.at_level(k);
  if (x.term_count() > y.term_count()) std::swap(x, y);
  GF2Poly out;
  out.level_ = k;
  out.low_ = x.low_ + y.low_;
  for_each_bit(x.words_, [&](std::size_t i) { xor_shifted(out.words_, y.words_, i); });
  out.normalize();
  return out;
}

GF2Poly GF2Poly::square() const {
  if (is_zero()) return {};
  GF2Poly p = *this;
  if (level_ > 0) {
    --p.level_;
  } else {
    p.low_ = 2 * low_;
    p.words_.clear();
    for_each_bit(words_, [&](std::size_t i) { set_bit(p.words_, 2 * i); });
  }
  p.normalize();
  return p;
}

std::pair<Rat, GF2Poly> GF2Poly::split_monomial() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "split of zero");
  GF2Poly p = *this;
  p.low_ = 0;
  p.normalize();
  return {valuation(), p};
}

GF2Poly poly_gcd(const GF2Poly& a, const GF2Poly& b) {
  if (a.low_ != 0 || b.low_ != 0) throw Error(ErrorCode::PreconditionViolated, "gcd needs nonzero constant terms");
  int k = std::max(a.level_, b.level_);
  Words x = a.at_level(k).words_, y = b.at_level(k).words_;
  while (!y.empty()) {
    divmod_bits(x, y, nullptr);
    std::swap(x, y);
  }
  GF2Poly g;
  g.level_ = k;
  g.words_ = std::move(x);
  g.normalize();
  return g;
}

GF2Poly exact_div(const GF2Poly& a, const GF2Poly& b) {
  if (a.low_ != 0 || b.low_ != 0) throw Error(ErrorCode::PreconditionViolated, "division needs nonzero constant terms");
  int k = std::max(a.level_, b.level_);
  Words rem = a.at_level(k).words_;
  Words quot;
  divmod_bits(rem, b.at_level(k).words_, &quot);
  if (!rem.empty()) throw Error(ErrorCode::PreconditionViolated, "inexact polynomial division");
  GF2Poly q;
  q.level_ = k;
  q.words_ = std::move(quot);
  q.normalize();
  return q;
}

GF2RatFun::GF2RatFun(GF2Poly num, GF2Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero denominator");
  reduce();
}

void GF2RatFun::reduce() {
  if (num_.is_zero()) {
    den_ = GF2Poly::one();
    return;
  }
  auto [en, n] = num_.split_monomial();
  auto [ed, d] = den_.split_monomial();
  GF2Poly g = poly_gcd(n, d);
  if (!(g == GF2Poly::one())) {
    n = exact_div(n, g);
    d = exact_div(d, g);
  }
  num_ = GF2Poly::monomial(en - ed) * n;
  den_ = d;
}

GF2RatFun operator+(const GF2RatFun& a, const GF2RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return GF2RatFun(a.num_ + b.num_, a.den_);
  return GF2RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

GF2RatFun operator*(const GF2RatFun& a, const GF2RatFun& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return GF2RatFun(a.num_ * b.num_, a.den_ * b.den_);
}

GF2RatFun GF2RatFun::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroPolynomial, "inverse of zero");
  return GF2RatFun(den_, num_);
}

GF2RatFun GF2RatFun::square() const {
  GF2RatFun r;
  r.num_ = num_.square();
  r.den_ = den_.square();
  return r;
}

GF2RatFun GF2RatFun::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  GF2RatFun result = one(), base = *this;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base.square();
    n >>= 1;
  }
  return result;
}

std::optional<Rat> valuation(const GF2RatFun& a) {
  if (a.is_zero()) return std::nullopt;
  return a.num().valuation() - a.den().valuation();
}

std::string to_string(const GF2Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& e : p.exponents()) {
    if (!out.empty()) out += "+";
    out += e == 0 ? std::string("1") : "t^(" + to_string(e) + ")";
  }
  return out;
}

std::string to_string(const GF2RatFun& a) { return to_string(a.num()) + "/" + to_string(a.den()); }

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

Rat parse_term(const std::string& term) {
  if (term == "1") return 0;
  if (term == "t") return 1;
  if (term.rfind("t^", 0) != 0) throw Error(ErrorCode::ParseError, "bad term '" + term + "'");
  std::string e = term.substr(2);
  if (e.size() >= 2 && e.front() == '(' && e.back() == ')') e = e.substr(1, e.size() - 2);
  return parse_rat(e);
}

}  // namespace

GF2Poly parse_gf2poly(std::string_view text) {
  std::string s = strip(text);
  while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
    int depth = 0;
    bool whole = true;
    for (std::size_t i = 0; i + 1 < s.size() && whole; ++i) {
      depth += s[i] == '(' ? 1 : s[i] == ')' ? -1 : 0;
      if (depth == 0) whole = false;
    }
    if (!whole) break;
    s = s.substr(1, s.size() - 2);
  }
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty polynomial");
  if (s == "0") return {};
  GF2Poly out;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i < s.size() && s[i] == '(') ++depth;
    if (i < s.size() && s[i] == ')') --depth;
    if (i == s.size() || (s[i] == '+' && depth == 0)) {
      Rat e = parse_term(s.substr(start, i - start));
      try {
        out += GF2Poly::monomial(e);
      } catch (const Error& err) {
        throw Error(ErrorCode::ParseError, err.what());
      }
      start = i + 1;
    }
  }
  return out;
}

GF2RatFun parse_gf2ratfun(std::string_view text) {
  std::string s = strip(text);
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == '/' && depth == 0) {
      GF2Poly den = parse_gf2poly(s.substr(i + 1));
      if (den.is_zero()) throw Error(ErrorCode::ParseError, "zero denominator");
      return GF2RatFun(parse_gf2poly(s.substr(0, i)), den);
    }
  }
  return GF2RatFun(parse_gf2poly(s));
}

void LaurentPoly2::set(LatticeVec v, const GF2RatFun& a) {
  if (a.is_zero()) {
    terms_.erase(v);
  } else {
    terms_[v] = a;
  }
}

GF2RatFun LaurentPoly2::evaluate(const GF2RatFun& x, const GF2RatFun& y) const {
  GF2RatFun sum;
  for (const auto& [v, a] : terms_) sum = sum + a * x.pow(v.i) * y.pow(v.j);
  return sum;
}

std::string to_text(const LaurentPoly2& f) {
  std::ostringstream os;
  for (const auto& [v, a] : f.terms()) os << "A(" << v.i << "," << v.j << ")=" << to_string(a) << "\n";
  return os.str();
}

LaurentPoly2 parse_laurent(std::string_view text) {
  LaurentPoly2 f;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    long i = 0, j = 0;
    int consumed = 0;
    if (std::sscanf(s.c_str(), "A(%ld,%ld)=%n", &i, &j, &consumed) != 2 || consumed == 0) {
      throw Error(ErrorCode::ParseError, "expected A(i,j)=... in '" + line + "'");
    }
    LatticeVec v{i, j};
    if (f.terms().count(v)) throw Error(ErrorCode::ParseError, "duplicate coefficient");
    f.set(v, parse_gf2ratfun(s.substr(static_cast<std::size_t>(consumed))));
  }
  return f;
}

MonomialMap trop(const LaurentPoly2& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "zero polynomial");
  MonomialMap out;
  for (const auto& [v, a] : f.terms()) out[v] = *valuation(a);
  return out;
}

LaurentPoly2 s_wave(const LaurentPoly2& f, const GF2RatFun& p1, const GF2RatFun& p2) {
  if (p1.is_zero() || p2.is_zero()) throw Error(ErrorCode::PreconditionViolated, "point coordinates must be nonzero");
  GF2RatFun fp = f.evaluate(p1, p2);
  if (fp.is_zero()) return f;
  GF2RatFun inv = fp.inverse();
  LaurentPoly2 out;
  for (const auto& [v, a] : f.terms()) out.set(v, a + a.square() * p1.pow(v.i) * p2.pow(v.j) * inv);
  return out;
}

MonomialMap tropical_wave(const MonomialMap& f, const Point& q) {
  if (f.size() < 2) return f;
  std::vector<std::pair<Rat, LatticeVec>> vals;
  for (const auto& [v, a] : f) vals.emplace_back(a + dot(v, q), v);
  std::sort(vals.begin(), vals.end());
  if (vals[0].first == vals[1].first) return f;
  MonomialMap out = f;
  out[vals[0].second] += vals[1].first - vals[0].first;
  return out;
}

const char* to_string(LiftStatus s) {
  switch (s) {
    case LiftStatus::Holds: return "Holds";
    case LiftStatus::Mismatch: return "Mismatch";
    case LiftStatus::NonGeneric: return "NonGeneric";
  }
  return "Mismatch";
}

namespace {

bool generic_at(const MonomialMap& f, const Point& q) {
  if (f.size() < 2) return false;
  std::vector<Rat> vals;
  for (const auto& [v, a] : f) vals.push_back(a + dot(v, q));
  std::sort(vals.begin(), vals.end());
  if (vals[0] == vals[1]) return false;
  return vals.size() == 2 || vals[1] != vals[2];
}

}  // namespace

LiftCheck verify_lift_theorem(const LaurentPoly2& f, const GF2RatFun& p1, const GF2RatFun& p2) {
  if (p1.is_zero() || p2.is_zero()) throw Error(ErrorCode::PreconditionViolated, "point coordinates must be nonzero");
  LiftCheck out;
  MonomialMap tf = trop(f);
  Point q{*valuation(p1), *valuation(p2)};
  out.wave_side = tropical_wave(tf, q);
  LaurentPoly2 lifted = s_wave(f, p1, p2);
  if (!lifted.is_zero()) out.lift_side = trop(lifted);
  std::set<LatticeVec> keys;
  for (const auto& [v, a] : out.wave_side) keys.insert(v);
  for (const auto& [v, a] : out.lift_side) keys.insert(v);
  for (const auto& v : keys) {
    auto x = out.wave_side.find(v), y = out.lift_side.find(v);
    if (x == out.wave_side.end() || y == out.lift_side.end() || x->second != y->second) {
      out.differing = v;
      break;
    }
  }
  if (!generic_at(tf, q)) {
    out.status = LiftStatus::NonGeneric;
  } else {
    out.status = out.differing ? LiftStatus::Mismatch : LiftStatus::Holds;
  }
  return out;
}

namespace {

std::uint64_t next_random(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

long uniform(std::uint64_t& state, long lo, long hi) {
  return lo + static_cast<long>(next_random(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

GF2Poly random_poly(std::uint64_t& state, std::size_t terms, long lo_quarters, long hi_quarters) {
  std::size_t n = static_cast<std::size_t>(uniform(state, 1, static_cast<long>(terms)));
  std::set<long> exps;
  while (exps.size() < n) exps.insert(uniform(state, lo_quarters, hi_quarters));
  GF2Poly p;
  for (long e : exps) p += GF2Poly::monomial(rat(e, 4));
  return p;
}

}  // namespace

GF2RatFun random_ratfun(std::uint64_t& state, std::size_t terms) {
  GF2Poly num = random_poly(state, terms, -8, 16);
  GF2Poly den = next_random(state) % 2 == 0 ? GF2Poly::one() : random_poly(state, terms, 0, 12);
  return GF2RatFun(num, den);
}

LiftFuzzReport lift_fuzz(const LiftFuzzConfig& cfg) {
  LiftFuzzReport rep;
  std::uint64_t state = cfg.seed;
  const long r = cfg.exponent_range;
  if (cfg.terms < 2 || static_cast<long>(cfg.terms) > (2 * r + 1) * (2 * r + 1)) {
    throw Error(ErrorCode::PreconditionViolated, "term count out of range");
  }
  auto draw_point = [&]() {
    if (next_random(state) % 2 == 0) return GF2RatFun::monomial(rat(uniform(state, -8, 8), 4));
    return random_ratfun(state, 2);
  };
  while (rep.trials < cfg.trials) {
    LaurentPoly2 f;
    while (f.terms().size() < cfg.terms) {
      LatticeVec v{uniform(state, -r, r), uniform(state, -r, r)};
      if (!f.terms().count(v)) f.set(v, random_ratfun(state, 2));
    }
    GF2RatFun p1 = draw_point(), p2 = draw_point();
    Point q{*valuation(p1), *valuation(p2)};
    if (!generic_at(trop(f), q)) {
      ++rep.redrawn;
      continue;
    }
    ++rep.trials;
    LiftCheck chk = verify_lift_theorem(f, p1, p2);
    if (chk.status == LiftStatus::Holds) {
      ++rep.holds;
    } else {
      ++rep.mismatches;
      if (!rep.counterexample) {
        rep.counterexample = to_text(f) + "p1=" + to_string(p1) + "\np2=" + to_string(p2) + "\n";
      }
    }
    LaurentPoly2 s = s_wave(f, p1, p2);
    if (s_wave(s, p1, p2) == s) ++rep.idempotent;
    if (s.evaluate(p1, p2).is_zero()) ++rep.vanishes_at_p;
  }
  return rep;
}

}  // namespace tropwave
