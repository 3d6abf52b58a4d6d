#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "symdyn/coupled.hpp"
#include "symdyn/error.hpp"
#include "symdyn/semiconj.hpp"

using namespace symdyn;

namespace {
const TransitionMatrix A0 = TransitionMatrix::from_rows({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
const TransitionMatrix kFull2 = TransitionMatrix::from_rows({{1, 1}, {1, 1}});
const TransitionMatrix kGolden = TransitionMatrix::from_rows({{1, 1}, {1, 0}});

// [0,0.2] and [0.8,1] are each carried onto [0,1].
MapInstance two_laps() {
  auto t = make_piecewise_linear(Domain::interval(), {0.0, 0.2, 0.5, 0.8, 1.0}, {0.0, 1.0, 0.5, 1.0, 0.0});
  Partition p(Domain::interval(), {{0.0, 0.2}, {0.8, 0.2}});
  return {std::move(t), std::move(p), kFull2};
}

bool has_rule(const EntropyVerdict& v, const char* rule) {
  return std::find(v.justifications.begin(), v.justifications.end(), std::string(rule)) != v.justifications.end();
}
}  // namespace

TEST_SUITE("coupled") {
  TEST_CASE("matrix inference") {
    const auto k = make_builtin("kasner");
    CHECK(infer_matrix(k.map, k.partition) == A0);
    const auto d = make_builtin("doubling");
    CHECK(infer_matrix(d.map, d.partition) == kFull2);
    const auto g = make_builtin("linear_markov", {kGolden});
    CHECK(infer_matrix(g.map, g.partition) == kGolden);
    const auto low = make_piecewise_linear(Domain::interval(), {0.0, 0.5, 1.0}, {0.0, 0.4, 0.0});
    const Partition halves(Domain::interval(), {{0.0, 0.5}, {0.5, 0.5}});
    CHECK_THROWS_WITH_AS(infer_matrix(low, halves), doctest::Contains("NotATransitionMatrix"), Error);
  }

  TEST_CASE("kasner verification") {
    const auto k = make_builtin("kasner");
    const auto r = verify(k.map, k.partition, A0);
    CHECK(r.circle);
    CHECK(r.covering);
    CHECK(r.equality);
    CHECK_FALSE(r.strict);
    CHECK(r.partition_covering);
    CHECK(r.boundary_invariant);
    CHECK_FALSE(r.expansion_factor);
    CHECK(r.min_abs_slope == doctest::Approx(1.0));
  }

  TEST_CASE("doubling verification") {
    const auto d = make_builtin("doubling");
    const auto r = verify(d.map, d.partition, kFull2);
    CHECK(r.covering);
    CHECK(r.equality);
    CHECK(r.partition_covering);
    CHECK(r.boundary_invariant);
    REQUIRE(r.expansion_factor);
    CHECK(*r.expansion_factor == doctest::Approx(2.0));
    CHECK_FALSE(r.strict);  // the halves share 0 and pi
  }

  TEST_CASE("strict pair of laps") {
    const auto inst = two_laps();
    const auto r = verify(inst.map, inst.partition, kFull2);
    CHECK(r.strict);
    CHECK(r.min_gap == doctest::Approx(0.6));
    CHECK(r.covering);
    CHECK_FALSE(r.partition_covering);
    const auto v = entropy_verdict(kFull2, r);
    REQUIRE(v.lower);
    CHECK(*v.lower == doctest::Approx(std::log(2.0)));
    CHECK(has_rule(v, rules::kStrictFullShift));
    CHECK(v.li_yorke);
    CHECK_FALSE(v.exact);
  }

  TEST_CASE("dimension mismatch") {
    const auto k = make_builtin("kasner");
    CHECK_THROWS_AS(verify(k.map, k.partition, kFull2), Error);
  }

  TEST_CASE("kasner verdict") {
    const auto k = make_builtin("kasner");
    const auto r = verify(k.map, k.partition, A0);
    const auto ev = singleton_check(k.map, k.partition, A0, 12);
    const auto v = entropy_verdict(A0, r, ev);
    REQUIRE(v.exact);
    CHECK(*v.exact == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    CHECK(v.li_yorke);
    CHECK(v.devaney);
    CHECK(v.justifications == std::vector<std::string>{rules::kPartitionSingleton, rules::kCircleDevaney});
    REQUIRE(v.growth_constant);
    CHECK(*v.growth_constant == doctest::Approx(1.5));
    // without singleton evidence nothing exact can be said
    const auto bare = entropy_verdict(A0, r);
    CHECK_FALSE(bare.exact);
    CHECK_FALSE(bare.li_yorke);
  }

  TEST_CASE("cycle matrix gives zero lower bound and no chaos") {
    const auto c3 = TransitionMatrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
    VerificationReport r;
    r.strict = true;
    r.covering = true;
    const auto v = entropy_verdict(c3, r);
    REQUIRE(v.lower);
    CHECK(std::abs(*v.lower) <= 1e-12);
    CHECK_FALSE(v.li_yorke);
    CHECK_FALSE(v.devaney);
  }

  TEST_CASE("property: rules only fire on their hypotheses") {
    gen::Rng rng(51);
    for (int k = 0; k < 500; ++k) {
      const auto a = gen::random_matrix(rng, gen::uniform_int(rng, 2, 6), 0.4);
      VerificationReport r;
      r.circle = gen::coin(rng, 0.5);
      r.covering = gen::coin(rng, 0.7);
      r.equality = r.covering && gen::coin(rng, 0.7);
      r.strict = gen::coin(rng, 0.5);
      r.partition_covering = gen::coin(rng, 0.6);
      r.boundary_invariant = gen::coin(rng, 0.6);
      if (gen::coin(rng, 0.5)) r.expansion_factor = 1.0 + gen::uniform_int(rng, 1, 10) / 10.0;
      std::optional<SingletonEvidence> ev;
      if (gen::coin(rng, 0.5)) {
        ev.emplace();
        ev->decreasing = gen::coin(rng, 0.7);
      }
      const auto v = entropy_verdict(a, r, ev);
      const bool singleton_hyp = r.partition_covering && r.equality && ev && ev->decreasing;
      const bool expanding_hyp = r.circle && r.expansion_factor && r.boundary_invariant && r.covering &&
                                 r.partition_covering;
      if (v.exact) {
        CHECK((singleton_hyp || expanding_hyp));
        REQUIRE(v.lower);
        CHECK(*v.lower <= *v.exact + 1e-9);
      }
      if (v.li_yorke) CHECK((has_rule(v, rules::kStrictLiYorke) || has_rule(v, rules::kCircleDevaney)));
      if (v.devaney) CHECK(r.circle);
    }
  }

  TEST_CASE("property: verdicts unchanged when pieces are given again as closed arcs") {
    const auto k = make_builtin("kasner");
    std::vector<Arc> again;
    for (const Arc& a : k.partition.pieces()) again.push_back(k.partition.domain().arc_between(a.start, a.end()));
    const Partition closed(k.partition.domain(), again);
    const auto r1 = verify(k.map, k.partition, A0);
    const auto r2 = verify(k.map, closed, A0);
    CHECK(r1.covering == r2.covering);
    CHECK(r1.equality == r2.equality);
    CHECK(r1.strict == r2.strict);
    CHECK(r1.boundary_invariant == r2.boundary_invariant);
  }

  TEST_CASE("property: cylinder estimates respect the exact entropy") {
    for (const char* name : {"kasner", "doubling", "tent"}) {
      const auto inst = make_builtin(name);
      const auto r = verify(inst.map, inst.partition, inst.matrix);
      const auto v = entropy_verdict(inst.matrix, r, singleton_check(inst.map, inst.partition, inst.matrix, 8));
      REQUIRE(v.exact);
      REQUIRE(v.growth_constant);
      for (const auto& e : entropy_by_cylinders(inst.map, inst.partition, 12))
        CHECK(e.estimate <= *v.exact + std::log(*v.growth_constant) / e.n + 1e-9);
    }
    const auto g = make_builtin("linear_markov", {kGolden});
    const auto r = verify(g.map, g.partition, kGolden);
    const auto v = entropy_verdict(kGolden, r, singleton_check(g.map, g.partition, kGolden, 8));
    REQUIRE(v.exact);
    for (const auto& e : entropy_by_cylinders(g.map, g.partition, 16))
      CHECK(e.estimate <= *v.exact + std::log(*v.growth_constant) / e.n + 1e-9);
  }
}
