#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "symdyn/digraph.hpp"
#include "symdyn/error.hpp"
#include "symdyn/transition_matrix.hpp"

using namespace symdyn;

namespace {
const TransitionMatrix A0 = TransitionMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
const TransitionMatrix kCycle3 = TransitionMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
const TransitionMatrix kGolden = TransitionMatrix::from_rows({{1, 1}, {1, 0}});
const TransitionMatrix kIdentity = TransitionMatrix::from_rows({{1, 0}, {0, 1}});

ErrorCode code_of(const std::vector<std::vector<int>>& rows) {
  try {
    TransitionMatrix::from_rows(rows);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a validation error");
  return ErrorCode::Io;
}
}  // namespace

TEST_SUITE("trans_matrix") {
  TEST_CASE("validation") {
    CHECK(A0.size() == 3);
    CHECK(kIdentity.size() == 2);
    CHECK(code_of({{0, 0}, {1, 1}}) == ErrorCode::ZeroRow);
    CHECK(code_of({{1, 0}, {1, 0}}) == ErrorCode::ZeroColumn);
    CHECK(code_of({{1, 2}, {1, 1}}) == ErrorCode::NonBinaryEntry);
    CHECK(code_of({{1}}) == ErrorCode::DimensionTooSmall);
    CHECK(code_of({{1, 1}, {1}}) == ErrorCode::NotSquare);
  }

  TEST_CASE("spectral radius examples") {
    CHECK(spectral_radius(A0).lambda == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(spectral_radius(kCycle3).lambda - 1.0) <= 1e-12);
    CHECK(std::abs(spectral_radius(kGolden).lambda - 1.6180339887498949) <= 1e-10);
    CHECK(std::abs(spectral_radius(kIdentity).lambda - 1.0) <= 1e-12);
  }

  TEST_CASE("eigenvector only for irreducible matrices") {
    const auto r = spectral_radius(A0);
    REQUIRE(r.eigvec);
    for (double v : *r.eigvec) CHECK(v == doctest::Approx(1.0));
    CHECK_FALSE(spectral_radius(kIdentity).eigvec);
    const auto g = spectral_radius(kGolden);
    REQUIRE(g.eigvec);
    // max-norm residual of A v - lambda v
    const auto& v = *g.eigvec;
    const double r0 = std::abs(v[0] + v[1] - g.lambda * v[0]);
    const double r1 = std::abs(v[0] - g.lambda * v[1]);
    CHECK(std::max(r0, r1) <= g.residual + 1e-15);
  }

  TEST_CASE("reducible matrix takes the largest component root") {
    // {1,2} golden block feeding into a 1-cycle on {3}
    const auto a = TransitionMatrix::from_rows({{1, 1, 1}, {1, 0, 0}, {0, 0, 1}});
    CHECK(std::abs(spectral_radius(a).lambda - 1.6180339887498949) <= 1e-10);
    CHECK_FALSE(is_irreducible(a));
  }

  TEST_CASE("irreducibility and primitivity") {
    CHECK(is_irreducible(A0));
    CHECK_FALSE(is_irreducible(kIdentity));
    CHECK(is_irreducible(TransitionMatrix::from_rows({{0, 1}, {1, 0}})));
    const auto pa = is_primitive(A0);
    CHECK(pa.primitive);
    CHECK(pa.exponent == 2);
    CHECK_FALSE(is_primitive(kCycle3).primitive);
    CHECK_FALSE(is_primitive(kCycle3).exponent);
    CHECK(is_primitive(kGolden).exponent == 2);
  }

  TEST_CASE("norm growth approaches log lambda") {
    const double ll = std::log(spectral_radius(A0).lambda);
    CHECK(std::abs(log_norm_growth(A0, 40) - ll) < std::abs(log_norm_growth(A0, 20) - ll));
    CHECK(std::isfinite(log_norm_growth(kGolden, 2000)));
  }

  TEST_CASE("property: monotone in the entries, bounded below by one") {
    gen::Rng rng(11);
    for (int k = 0; k < 300; ++k) {
      const int p = gen::uniform_int(rng, 2, 8);
      const auto [a, b] = gen::ordered_pair(rng, p);
      REQUIRE(a.entrywise_le(b));
      const double la = spectral_radius(a).lambda;
      const double lb = spectral_radius(b).lambda;
      CHECK(la <= lb + 2e-12);
      CHECK(la >= 1.0 - 1e-12);
    }
  }

  TEST_CASE("property: primitive implies irreducible") {
    gen::Rng rng(12);
    for (int k = 0; k < 300; ++k) {
      const auto a = gen::random_matrix(rng, gen::uniform_int(rng, 2, 7), 0.35);
      if (is_primitive(a).primitive) CHECK(is_irreducible(a));
    }
  }

  TEST_CASE("property: primitive exponent is the first positive power") {
    gen::Rng rng(13);
    for (int k = 0; k < 100; ++k) {
      const auto a = gen::random_matrix(rng, gen::uniform_int(rng, 2, 6), 0.4);
      const auto pr = is_primitive(a);
      if (!pr.primitive) continue;
      const auto pos = [&](int n) {
        for (const auto& x : matrix_power(a, n))
          if (x == 0) return false;
        return true;
      };
      CHECK(pos(*pr.exponent));
      if (*pr.exponent > 1) CHECK_FALSE(pos(*pr.exponent - 1));
    }
  }

  TEST_CASE("property: power norm growth matches lambda") {
    gen::Rng rng(14);
    for (int k = 0; k < 50; ++k) {
      const auto a = gen::irreducible_branching(rng, gen::uniform_int(rng, 2, 6), 0.3);
      if (!is_primitive(a).primitive) continue;
      const double ll = std::log(spectral_radius(a).lambda);
      CHECK(std::abs(log_norm_growth(a, 400) - ll) < 0.02);
    }
  }
}
