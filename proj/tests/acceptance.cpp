// Acceptance checks, one line per criterion. Exits 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

#include "generators.hpp"
#include "symdyn/symdyn.hpp"

using namespace symdyn;

namespace {

// Tolerances pinned here; they are part of the criteria.
constexpr double kLambdaTol = 1e-9;
constexpr double kEstimateTol = 1e-6;
constexpr double kRuntimeLimit = 60.0;
constexpr double kScrambledMin = 1e-3;
constexpr double kScrambledMax = 0.1;
constexpr int kPreimageSamples = 100;
constexpr int kPreimageDepth = 10;
constexpr int kGrid = 10000;
constexpr double kSlopeFloor = 1.0 - 1e-9;
constexpr double kMinimizerRadius = 1e-6;
constexpr double kFiniteDiffStep = 1e-7;
constexpr double kFiniteDiffRelTol = 1e-6;
constexpr double kOracleTol = 1e-9;
constexpr double kOracleExclusion = 1e-6;
constexpr double kGoldenTol = 1e-8;
constexpr double kGoldenEntropyTol = 1e-3;
constexpr double kPerronTol = 1e-9;
constexpr double kFactorTol = 1e-10;

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %2d %-28s %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool near_kasner_fixed(double th, double r) {
  const Domain c = Domain::circle();
  return c.distance(th, kKasnerT1) <= r || c.distance(th, kKasnerT2) <= r || c.distance(th, kKasnerT3) <= r;
}

void kasner_entropy() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = run_analysis(parse_config({{"map", "kasner"}, {"options", {{"depth", 12}, {"n_max", 12}}}}));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto& r = res.report;
  const double lambda = r["spectral"]["lambda"].get<double>();
  const bool has_exact = r["entropy"]["exact"].is_number();
  const double exact = has_exact ? r["entropy"]["exact"].get<double>() : NAN;
  const double est = r["entropy"]["estimates"][11]["estimate"].get<double>();
  const double want = std::log(2.0) + std::log(1.5) / 12.0;
  const bool ok = res.ok() && std::abs(lambda - 2.0) <= kLambdaTol && has_exact &&
                  std::abs(exact - std::log(2.0)) <= kLambdaTol && std::abs(est - want) <= kEstimateTol &&
                  secs < kRuntimeLimit;
  report(1, "kasner entropy", ok,
         fmt("lambda=%.12f exact=%.12f est12=%.10f (want %.10f) %.2fs", lambda, exact, est, want, secs));
}

void kasner_chaos() {
  const auto k = make_kasner();
  const auto rep = verify(k.map, k.partition, k.matrix);
  const auto v = entropy_verdict(k.matrix, rep, singleton_check(k.map, k.partition, k.matrix, 12));
  const bool rules_ok =
      v.justifications == std::vector<std::string>{rules::kPartitionSingleton, rules::kCircleDevaney};
  const auto w = scrambled_pair_witness(200);
  const bool ok = v.li_yorke && v.devaney && rules_ok && w.min_distance < kScrambledMin &&
                  w.max_distance > kScrambledMax;
  std::string just;
  for (const auto& j : v.justifications) just += (just.empty() ? "" : ",") + j;
  report(2, "kasner chaos", ok,
         fmt("li_yorke=%d devaney=%d rules={%s} min=%.3g@%d max=%.3g@%d", v.li_yorke, v.devaney, just.c_str(),
             w.min_distance, w.argmin, w.max_distance, w.argmax));
}

void preimage_multiplicity() {
  const auto k = make_kasner();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unif(0.0, kTwoPi);
  std::vector<double> ys(kPreimageSamples);
  for (double& y : ys) y = unif(rng);
  const auto counts = preimage_counts(k.map, k.partition, k.matrix, ys, kPreimageDepth);
  int ones = 0, twos = 0, other = 0;
  for (int c : counts) (c == 1 ? ones : c == 2 ? twos : other)++;
  const int at_pi = preimage_count(k.map, k.partition, k.matrix, kKasnerT3, kPreimageDepth);
  report(3, "preimage multiplicity", other == 0 && at_pi == 2,
         fmt("samples: %d ones, %d twos, %d other; count(pi)=%d", ones, twos, other, at_pi));
}

void derivative_law() {
  const Domain c = Domain::circle();
  double min_abs = 1e300, worst_rel = 0.0;
  bool minimizers_ok = true;
  for (int k = 0; k < kGrid; ++k) {
    const double th = kTwoPi * k / kGrid;
    const double d = kasner_derivative(th);
    min_abs = std::min(min_abs, std::abs(d));
    if (std::abs(d) < 1.0 + 1e-9 && !near_kasner_fixed(th, kMinimizerRadius)) minimizers_ok = false;
    const double fd =
        c.signed_difference(kasner_angle(th + kFiniteDiffStep), kasner_angle(th - kFiniteDiffStep)) /
        (2 * kFiniteDiffStep);
    worst_rel = std::max(worst_rel, std::abs(fd - d) / std::abs(d));
  }
  const bool ok = min_abs >= kSlopeFloor && minimizers_ok && worst_rel < kFiniteDiffRelTol;
  report(4, "derivative law", ok,
         fmt("min|T'|=%.12f minimizers-at-fixed-points=%d max rel fd error=%.3g", min_abs, minimizers_ok, worst_rel));
}

void oracle_agreement() {
  const Domain c = Domain::circle();
  double worst = 0.0;
  int used = 0;
  for (int k = 0; k < kGrid; ++k) {
    const double th = kTwoPi * k / kGrid;
    if (near_kasner_fixed(th, kOracleExclusion)) continue;
    worst = std::max(worst, c.distance(kasner_angle(th), kasner_geometric(th)));
    ++used;
  }
  report(5, "oracle agreement", worst <= kOracleTol, fmt("max deviation %.3g over %d points", worst, used));
}

void golden_mean() {
  const auto a = TransitionMatrix::from_rows({{1, 1}, {1, 0}});
  const double lambda = spectral_radius(a).lambda;
  bool counts_ok = true;
  const int want[] = {2, 3, 5, 8, 13};
  for (int n = 1; n <= 5; ++n) counts_ok = counts_ok && count_words(a, n) == want[n - 1];
  const auto g = make_builtin("linear_markov", {a});
  const auto est = entropy_by_cylinders(g.map, g.partition, 20).back();
  const double log_phi = std::log((1 + std::sqrt(5.0)) / 2);
  const bool ok = std::abs(lambda - 1.6180339887) <= kGoldenTol && counts_ok &&
                  std::abs(est.estimate - log_phi) <= kGoldenEntropyTol;
  report(6, "golden mean", ok,
         fmt("lambda=%.12f counts=%s N20=%llu est20=%.8f log(phi)=%.8f diff=%.3g", lambda,
             counts_ok ? "ok" : "bad", static_cast<unsigned long long>(est.count), est.estimate, log_phi,
             est.estimate - log_phi));
}

void branching_bound() {
  gen::Rng rng(7);
  int bad = 0;
  double worst_margin = 1e300;
  for (int k = 0; k < 200; ++k) {
    const int p = gen::uniform_int(rng, 2, 8);
    const auto a = gen::irreducible_branching(rng, p, 0.15);
    const double margin = spectral_radius(a).lambda - std::pow(2.0, 1.0 / p);
    worst_margin = std::min(worst_margin, margin);
    if (!is_irreducible(a) || margin < -kPerronTol) ++bad;
  }
  double worst_cycle = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto a = gen::simple_cycle(rng, gen::uniform_int(rng, 2, 8));
    worst_cycle = std::max(worst_cycle, std::abs(spectral_radius(a).lambda - 1.0));
  }
  const bool ok = bad == 0 && worst_cycle <= kPerronTol;
  report(7, "branching lower bound", ok,
         fmt("%d violations, min lambda-2^(1/p)=%.3g, max |lambda-1| on cycles=%.3g", bad, worst_margin,
             worst_cycle));
}

void graph_suites() {
  gen::Rng rng(8);
  int mismatch = 0, nonmonotone = 0, below_one = 0;
  for (int k = 0; k < 500; ++k) {
    const int p = gen::uniform_int(rng, 2, 8);
    const auto a = gen::random_matrix(rng, p, gen::uniform_int(rng, 1, 6) / 10.0);
    if (has_full_cycle(TransitionGraph(a)) != is_irreducible(a)) ++mismatch;
    const auto [lo, hi] = gen::ordered_pair(rng, p);
    const double l1 = spectral_radius(lo).lambda, l2 = spectral_radius(hi).lambda;
    if (l1 > l2 + kPerronTol) ++nonmonotone;
    for (double l : {spectral_radius(a).lambda, l1, l2})
      if (l < 1.0 - kPerronTol) ++below_one;
  }
  report(8, "graph and spectral suites", mismatch + nonmonotone + below_one == 0,
         fmt("full-cycle/irreducible mismatches=%d non-monotone=%d lambda<1=%d", mismatch, nonmonotone, below_one));
}

void commuting_square() {
  gen::Rng rng(9);
  std::string detail;
  bool ok = true;
  std::vector<std::pair<std::string, MapInstance>> maps;
  for (const char* name : {"kasner", "doubling", "tent"}) maps.emplace_back(name, make_builtin(name));
  maps.emplace_back("golden", make_builtin("linear_markov", {TransitionMatrix::from_rows({{1, 1}, {1, 0}})}));
  for (const auto& [name, inst] : maps) {
    const Domain& d = inst.map.domain();
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const auto s = gen::admissible_sequence(rng, inst.matrix, 8, 6);
      const double x = factor_point(inst.map, inst.partition, s, kFactorTol).point;
      const double y = factor_point(inst.map, inst.partition, shift(s), kFactorTol).point;
      worst = std::max(worst, d.distance(inst.map.evaluate(x), y));
    }
    ok = ok && worst <= 10 * kFactorTol;
    detail += fmt("%s=%.2g ", name.c_str(), worst);
  }
  report(9, "commuting square", ok, "max defect " + detail);
}

void cylinder_word_equality() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"kasner", "doubling"}) {
    const auto inst = make_builtin(name);
    int bad_n = 0;
    for (int n = 1; n <= 10; ++n) {
      const auto cyl = enumerate_cylinders(inst.map, inst.partition, &inst.matrix, n);
      if (BigInt(cyl.size()) != count_words(inst.matrix, n)) ++bad_n;
    }
    ok = ok && bad_n == 0;
    detail += fmt("%s: %d mismatched lengths; ", name, bad_n);
  }
  report(10, "cylinder-word equality", ok, detail);
}

}  // namespace

int main() {
  const auto guarded = [](int id, const char* name, void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      report(id, name, false, std::string("exception: ") + e.what());
    }
  };
  guarded(1, "kasner entropy", kasner_entropy);
  guarded(2, "kasner chaos", kasner_chaos);
  guarded(3, "preimage multiplicity", preimage_multiplicity);
  guarded(4, "derivative law", derivative_law);
  guarded(5, "oracle agreement", oracle_agreement);
  guarded(6, "golden mean", golden_mean);
  guarded(7, "branching lower bound", branching_bound);
  guarded(8, "graph and spectral suites", graph_suites);
  guarded(9, "commuting square", commuting_square);
  guarded(10, "cylinder-word equality", cylinder_word_equality);
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
