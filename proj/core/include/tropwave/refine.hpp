#pragma once

#include <span>
#include <vector>

#include "tropwave/wave.hpp"

namespace tropwave {

/// Omega_eps = {f >= eps}. Throws Error(EmptyLevelSet) when it has empty interior.
QPolygon level_set_polygon(const TropicalSeries& f, const Rat& eps);

/// Checks f_{Omega,P} = f_{Omega_eps,P} + eps on Omega_eps by two independent
/// dynamics runs compared exactly on their common refinement.
/// Throws Error(HypothesisViolated) if f_{Omega,P}(p) < eps for some p.
bool level_shift_check(const QPolygon& dom, const std::vector<Point>& points, const Rat& eps);

struct BlowupStep {
  std::size_t corner = 0;  // index of the original corner
  Point apex;              // corner that was cut
  LatticeVec direction;    // primitive
  long multiplier = 1;
  Rat depth;               // lattice distance of the cut from the apex
  Polygon removed;         // piece cut away
};

struct NiceResult {
  QPolygon domain;
  TropicalSeries series;
  std::vector<BlowupStep> steps;
};

/// Unimodular regular fan from a to b (inclusive), det(a, b) > 0.
std::vector<LatticeVec> regular_fan(LatticeVec a, LatticeVec b);

/// Blows up the corners of f's domain inside eps-balls until the domain is
/// unimodular and the series nice; the result equals f outside the balls.
/// Throws Error(EpsilonTooLarge) if balls overlap, Error(CertificationFailed)
/// if no admissible depth is found.
NiceResult make_nice(const TropicalSeries& f, const Rat& eps);

struct NiceRestriction {
  QPolygon domain;
  TropicalSeries full;        // G_P 0 on the original domain
  TropicalSeries restricted;  // G_P 0 on the blown-up domain
  std::vector<BlowupStep> steps;
  bool nice = false;
  bool difference_ok = false;  // 0 <= full - restricted < eps on the new domain
  bool removed_ok = false;     // full <= eps on every removed piece
  Rat max_difference;
  bool certified() const { return nice && difference_ok && removed_ok; }
};

NiceRestriction nice_restrict(const QPolygon& dom, const std::vector<Point>& points, const Rat& eps);

/// Nice series with quasi-degree d whose curve is smooth and hugs the boundary.
/// Throws NotUnimodular, NotNice, or PreconditionViolated (eps too large).
TropicalSeries verge_polynomial(const QPolygon& dom, std::span<const long> d, const Rat& eps);

struct CoarsenStep {
  Point p;
  LatticeVec v;
  Rat increment;    // e_k
  Rat decremented;  // e_k - M h
};

struct CoarsenPlan {
  Rat M;
  Rat h;
  std::vector<CoarsenStep> steps;
};

struct CoarsenResult {
  CoarsenPlan plan;
  TropicalSeries final;      // decremented replay
  TropicalSeries reference;  // undecremented replay
  std::vector<TropicalSeries> intermediate;
  std::size_t curves_checked = 0;
  std::size_t families_checked = 0;
};

/// Replays the waves of `events` from g with every increment lowered by M h and
/// certifies that all curves met on the way are smooth or nodal.
/// Throws Error(HypothesisViolated) if the quasi-degree changes and
/// Error(CertificationFailed) naming the failing step otherwise.
CoarsenResult coarsen_dynamics(const TropicalSeries& g, const std::vector<WaveEvent>& events, const Rat& eps);

}  // namespace tropwave
