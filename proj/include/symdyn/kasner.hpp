#pragma once

#include "symdyn/onedmap.hpp"
#include "symdyn/subshift.hpp"

namespace symdyn {

/// Fixed points of the Kasner circle map.
inline constexpr double kKasnerT1 = kPi / 3.0;
inline constexpr double kKasnerT2 = 5.0 * kPi / 3.0;
inline constexpr double kKasnerT3 = kPi;

/// pi - theta - 2 atan(sin theta / (2 - cos theta)), the map on [0, pi/3].
double kasner_fundamental(double theta);

/// The Kasner circle map, extended from [0, pi/3] by rotation through 2pi/3
/// and the reflection theta -> -theta. Returns values in [0, 2pi).
double kasner_angle(double theta);

/// Independent evaluation by chord projection: the line through
/// (cos theta, sin theta) and the projection point of the containing arc
/// ((2,0), (-1,-sqrt3), (-1,sqrt3) for arcs 1, 2, 3) meets the unit circle
/// a second time at the image. Throws Error(AtSpecialPoint) at T1, T2, T3.
double kasner_geometric(double theta);

/// -3 / (5 - 4 cos s) with s the offset from the nearest multiple of 2pi/3.
double kasner_derivative(double theta);

/// The map with arcs Lambda_1 = [5pi/3, pi/3], Lambda_2 = [pi, 5pi/3],
/// Lambda_3 = [pi/3, pi] and the 3x3 matrix with zero diagonal.
MapInstance make_kasner();

struct ScrambledPairWitness {
  SymbolSequence x;
  SymbolSequence y;
  int horizon = 0;
  double min_distance = 0.0;
  double max_distance = 0.0;
  int argmin = 0;
  int argmax = 0;
  bool certified = false;
};

/// Two admissible sequences over the Kasner matrix that agree on blocks of
/// length 3*2^k and disagree on blocks in between, projected to the circle.
/// Distances d(Phi^n x, Phi^n y) for n <= horizon come from projecting the
/// shifted sequences, not from forward iteration.
ScrambledPairWitness scrambled_pair_witness(int horizon = 200, double tol = 1e-10);

/// Distances between projections of shift^n(x) and shift^n(y), n = 0..horizon.
struct OrbitDistances {
  std::vector<double> distances;
  bool certified = true;
};
OrbitDistances orbit_distances(const PiecewiseMonotoneMap& t, const Partition& p, const SymbolSequence& x,
                               const SymbolSequence& y, int horizon, double tol);

}  // namespace symdyn
