#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tropwave/curve.hpp"
#include "tropwave/series.hpp"

namespace tropwave {

struct WaveEvent {
  Point p;
  LatticeVec v;         // monomial whose coefficient was raised
  Rat c;                // increment, zero iff p already lies on the curve
  Rat avalanche_area;   // area of {G_p f > f}
  Rat swept_area;       // area(face before) - area(face after)
  std::size_t step = 0;
};

/// One wave at an interior point p. Throws Error(OutsideDomain) unless p is interior.
std::pair<TropicalSeries, WaveEvent> wave(const TropicalSeries& f, const Point& p);

/// f plus the sum over P of min(l, l(p)); an explicit series non-smooth at every point of P.
TropicalSeries upper_bound_witness(const TropicalSeries& f, const std::vector<Point>& points);

enum class ScheduleKind { RoundRobin, SeededRandom, Explicit };

struct Schedule {
  ScheduleKind kind = ScheduleKind::RoundRobin;
  std::uint64_t seed = 0;
  /// Indices into the point set, repeated cyclically (Explicit only).
  std::vector<std::size_t> order;
};

struct StopRule {
  /// Stop once a full sweep changes the series by less than this in rho.
  std::optional<Rat> tolerance;
  std::size_t max_steps = 100000;
};

enum class StopReason { Stabilized, ToleranceReached, StepLimit };
const char* to_string(StopReason r);

struct DynamicsResult {
  TropicalSeries final;
  std::vector<WaveEvent> events;
  StopReason reason = StopReason::Stabilized;
  std::size_t steps = 0;
  std::size_t sweeps = 0;
  /// rho between the start and end of the last full sweep; set when a tolerance is given.
  std::optional<Rat> last_sweep_rho;
};

DynamicsResult run_dynamics(const TropicalSeries& f, const std::vector<Point>& points, const Schedule& schedule = {},
                            const StopRule& stop = {});

enum class PerestroikaKind { NodalPerestroika, FaceCollapsedToPoint, FaceCollapsedToInterval, SideContracted };
const char* to_string(PerestroikaKind k);

struct PerestroikaEvent {
  Rat t;
  PerestroikaKind kind;
  /// Monomial whose side vanished, when the event is about a side.
  std::optional<LatticeVec> side;
  std::optional<Rat> lambda;
};

/// A side of the face of p at t = 0. Neighbouring normals satisfy d1 + d2 = lambda * d.
struct FaceSide {
  std::optional<LatticeVec> monomial;      // unset for a domain side
  std::optional<std::size_t> domain_side;
  std::optional<Rat> lambda;
  bool shrinking = false;                  // lambda < 2
};

struct PerestroikaReport {
  LatticeVec v;
  Rat c;
  std::vector<FaceSide> sides;
  std::vector<PerestroikaEvent> events;
  /// (t, curve of the family member is smooth or nodal) for sampled t.
  std::vector<std::pair<Rat, bool>> samples;
  /// All candidate event times in (0, 1].
  std::vector<Rat> critical_times;
  /// Candidate times at which the set of face sides actually changes.
  std::vector<Rat> type_changes;
};

/// Tracks the face of p along f_t = Add^{ct} f for t in [0, 1].
/// With `strict`, throws Error(UnclassifiableSide) if a side of the initial
/// face ends at an interior vertex that is not smooth.
PerestroikaReport wave_family_scan(const TropicalSeries& f, const Point& p, std::size_t samples = 0,
                                   bool strict = true);
/// Same scan for an explicit family Add^{ct}_v f, c > 0.
PerestroikaReport scan_family(const TropicalSeries& f, LatticeVec v, const Rat& c, std::size_t samples = 0,
                              bool strict = true);

/// Member of the family at parameter t: the coefficient of v raised by c * t.
TropicalSeries family_member(const TropicalSeries& f, LatticeVec v, const Rat& c, const Rat& t);

}  // namespace tropwave
