#include "symdyn/kasner.hpp"

#include <array>
#include <cmath>

#include "symdyn/error.hpp"
#include "symdyn/semiconj.hpp"

namespace symdyn {

namespace {

constexpr double kThird = kTwoPi / 3.0;
// Images within this distance of a fixed point are snapped onto it.
constexpr double kSnap = 4e-15;
constexpr std::array<double, 3> kFixed = {kKasnerT1, kKasnerT2, kKasnerT3};

// Lifted value of the map near a center c, as a function of s = theta - c in [-pi/3, pi/3].
double core(double s) { return s >= 0.0 ? kasner_fundamental(s) : kTwoPi - kasner_fundamental(-s); }

double core_slope(double s) { return -3.0 / (5.0 - 4.0 * std::cos(s)); }

struct Local {
  double center;
  double s;
};

Local localize(double theta) {
  const Domain circle = Domain::circle();
  const double x = circle.normalize(theta);
  const double k = std::round(x / kThird);
  const double c = k * kThird;
  return {c, x - c};
}

}  // namespace

double kasner_fundamental(double theta) {
  return kPi - theta - 2.0 * std::atan(std::sin(theta) / (2.0 - std::cos(theta)));
}

double kasner_angle(double theta) {
  const Domain circle = Domain::circle();
  const double x = circle.normalize(theta);
  for (double t : kFixed)
    if (circle.distance(x, t) <= kSnap) return t;
  const Local l = localize(x);
  const double y = circle.normalize(core(l.s) + l.center);
  for (double t : kFixed)
    if (circle.distance(y, t) <= kSnap) return t;
  return y;
}

double kasner_geometric(double theta) {
  const Domain circle = Domain::circle();
  const double x = circle.normalize(theta);
  for (double t : kFixed)
    if (circle.distance(x, t) <= 1e-12) throw Error(ErrorCode::AtSpecialPoint, "chord degenerates at a fixed point");
  const double sqrt3 = std::sqrt(3.0);
  double px, py;
  if (x > kKasnerT2 || x < kKasnerT1) {
    px = 2.0, py = 0.0;
  } else if (x > kKasnerT3) {
    px = -1.0, py = -sqrt3;
  } else {
    px = -1.0, py = sqrt3;
  }
  const double qx = std::cos(x), qy = std::sin(x);
  const double dx = px - qx, dy = py - qy;
  const double s = -2.0 * (qx * dx + qy * dy) / (dx * dx + dy * dy);
  return circle.normalize(std::atan2(qy + s * dy, qx + s * dx));
}

double kasner_derivative(double theta) { return core_slope(localize(theta).s); }

MapInstance make_kasner() {
  const Domain circle = Domain::circle();
  std::vector<Branch> branches;
  // Centers 2pi, 4pi/3, 2pi/3 carry the arcs Lambda_1, Lambda_2, Lambda_3.
  for (double c : {kTwoPi, 2.0 * kThird, kThird}) {
    branches.emplace_back(
        Arc{c - kPi / 3.0, kThird}, [c](double u) { return core(u - c) + c; },
        [c](double u) { return core_slope(u - c); }, 1.0, 3.0);
  }
  PiecewiseMonotoneMap map(circle, std::move(branches), "kasner", [](double x) { return kasner_angle(x); });
  Partition part(circle, {{kKasnerT2, kThird}, {kKasnerT3, kThird}, {kKasnerT1, kThird}});
  auto a = TransitionMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  return {std::move(map), std::move(part), std::move(a)};
}

OrbitDistances orbit_distances(const PiecewiseMonotoneMap& t, const Partition& p, const SymbolSequence& x,
                               const SymbolSequence& y, int horizon, double tol) {
  OrbitDistances out;
  const Domain& d = t.domain();
  for (int n = 0; n <= horizon; ++n) {
    const auto sx = shift(x, static_cast<std::size_t>(n));
    const auto sy = shift(y, static_cast<std::size_t>(n));
    if (sx == sy) {
      out.distances.push_back(0.0);
      continue;
    }
    const FactorPoint fx = factor_point(t, p, sx, tol);
    const FactorPoint fy = factor_point(t, p, sy, tol);
    out.certified = out.certified && fx.certified && fy.certified;
    out.distances.push_back(d.distance(fx.point, fy.point));
  }
  return out;
}

ScrambledPairWitness scrambled_pair_witness(int horizon, double tol) {
  if (horizon < 1) throw Error(ErrorCode::BadParams, "horizon must be positive");
  // Agreement blocks (1,2,3)^(2^k) alternate with disagreement blocks
  // (1,3,1,3) vs (2,3,2,3); each junction stays admissible in both.
  SymbolWord xs, ys;
  for (int k = 0; static_cast<int>(xs.size()) <= horizon + 8; ++k) {
    for (long r = 0; r < (1L << k); ++r) {
      for (int s : {1, 2, 3}) {
        xs.push_back(s);
        ys.push_back(s);
      }
    }
    for (int s : {1, 3, 1, 3}) xs.push_back(s);
    for (int s : {2, 3, 2, 3}) ys.push_back(s);
  }
  SymbolSequence x(xs, {1, 2, 3});
  SymbolSequence y(ys, {1, 2, 3});

  const MapInstance k = make_kasner();
  if (!is_admissible(k.matrix, x) || !is_admissible(k.matrix, y)) {
    throw Error(ErrorCode::InvalidSequence, "witness sequences are not admissible");
  }
  const OrbitDistances od = orbit_distances(k.map, k.partition, x, y, horizon, tol);

  ScrambledPairWitness w{x, y, horizon, od.distances[0], od.distances[0], 0, 0, od.certified};
  for (int n = 0; n <= horizon; ++n) {
    const double v = od.distances[static_cast<std::size_t>(n)];
    if (v < w.min_distance) w.min_distance = v, w.argmin = n;
    if (v > w.max_distance) w.max_distance = v, w.argmax = n;
  }
  return w;
}

}  // namespace symdyn
