#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "symdyn/coupled.hpp"
#include "symdyn/error.hpp"
#include "symdyn/kasner.hpp"

using namespace symdyn;

namespace {
const Domain kCircle = Domain::circle();

bool near_fixed(double th, double r) {
  return kCircle.distance(th, kKasnerT1) <= r || kCircle.distance(th, kKasnerT2) <= r ||
         kCircle.distance(th, kKasnerT3) <= r;
}
}  // namespace

TEST_SUITE("kasner") {
  TEST_CASE("values") {
    CHECK(kasner_angle(kPi / 6) == doctest::Approx(1.7874274003484415).epsilon(1e-14));
    CHECK(kasner_angle(3 * kPi / 2) == doctest::Approx(5.9762176051348325).epsilon(1e-14));
    CHECK(kasner_angle(0.0) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(kasner_angle(kTwoPi / 3) == doctest::Approx(5 * kPi / 3).epsilon(1e-14));
    CHECK(kasner_fundamental(0.0) == doctest::Approx(kPi));
    CHECK(kasner_fundamental(kPi / 3) == doctest::Approx(kPi / 3));
  }

  TEST_CASE("fixed points are exact") {
    CHECK(kasner_angle(kKasnerT1) == kKasnerT1);
    CHECK(kasner_angle(kKasnerT2) == kKasnerT2);
    CHECK(kasner_angle(kKasnerT3) == kKasnerT3);
    CHECK_THROWS_WITH_AS(kasner_geometric(kKasnerT3), doctest::Contains("AtSpecialPoint"), Error);
  }

  TEST_CASE("derivative") {
    CHECK(kasner_derivative(0.0) == doctest::Approx(-3.0));
    CHECK(kasner_derivative(kKasnerT1) == doctest::Approx(-1.0));
    CHECK(kasner_derivative(kPi / 2) == doctest::Approx(-3.0 / (5.0 - 4.0 * std::cos(kPi / 2 - kTwoPi / 3))));
  }

  TEST_CASE("matrix of the builtin") {
    const auto k = make_kasner();
    CHECK(k.matrix == TransitionMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}));
    CHECK(k.partition.size() == 3);
    CHECK(k.partition.piece(0).start == doctest::Approx(5 * kPi / 3));
  }

  TEST_CASE("property: agrees with the chord construction") {
    gen::Rng rng(71);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    for (int k = 0; k < 5000; ++k) {
      const double th = unif(rng);
      if (near_fixed(th, 1e-9)) continue;
      CHECK(kCircle.distance(kasner_angle(th), kasner_geometric(th)) <= 1e-12);
    }
  }

  TEST_CASE("property: rotation and reflection symmetry") {
    gen::Rng rng(72);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    for (int k = 0; k < 2000; ++k) {
      const double th = unif(rng);
      CHECK(kCircle.distance(kasner_angle(th + kTwoPi / 3), kasner_angle(th) + kTwoPi / 3) <= 1e-12);
      CHECK(kCircle.distance(kasner_angle(-th), -kasner_angle(th)) <= 1e-12);
    }
  }

  TEST_CASE("property: derivative law and bounds") {
    gen::Rng rng(73);
    std::uniform_real_distribution<double> unif(0.0, kTwoPi);
    const double h = 1e-7;
    for (int k = 0; k < 2000; ++k) {
      const double th = unif(rng);
      const double d = kasner_derivative(th);
      CHECK(std::abs(d) >= 1.0);
      CHECK(std::abs(d) <= 3.0);
      if (near_fixed(th, 1e-5)) continue;
      const double fd = kCircle.signed_difference(kasner_angle(th + h), kasner_angle(th - h)) / (2 * h);
      CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d));
    }
  }

  TEST_CASE("property: each arc is carried onto the other two") {
    const auto k = make_kasner();
    for (std::size_t i = 0; i < 3; ++i) {
      const Arc& a = k.partition.piece(i);
      for (int s = 1; s < 200; ++s) {
        const double y = kasner_angle(kCircle.point_at(a, a.length * s / 200));
        const bool at_end = kCircle.distance(y, a.start) <= 1e-12 || kCircle.distance(y, a.end()) <= 1e-12;
        CHECK((at_end || !kCircle.contains(a, y, 0.0)));
      }
    }
  }

  TEST_CASE("scrambled pair") {
    const auto w = scrambled_pair_witness(200);
    CHECK(w.certified);
    CHECK(w.min_distance <= 1e-9);
    CHECK(w.max_distance >= 1.0);
    CHECK(w.argmin <= w.horizon);
    CHECK(is_admissible(make_kasner().matrix, w.x));
    CHECK(is_admissible(make_kasner().matrix, w.y));
  }

  TEST_CASE("orbit distances") {
    const auto k = make_kasner();
    const auto s = SymbolSequence({1, 2}, {3, 1});
    const auto same = orbit_distances(k.map, k.partition, s, s, 10, 1e-10);
    CHECK(same.distances.size() == 11);
    for (double v : same.distances) CHECK(v == 0.0);
    // different first symbols, same tail
    const auto other = SymbolSequence({2, 3, 2}, {3, 1});
    const auto od = orbit_distances(k.map, k.partition, SymbolSequence({1, 3, 2}, {3, 1}), other, 5, 1e-10);
    CHECK(od.distances[0] > 0.1);
    CHECK(od.distances[5] <= 1e-9);
  }
}
