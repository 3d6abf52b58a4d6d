#include "symdyn/coupled.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "symdyn/error.hpp"

namespace symdyn {

std::vector<Arc> piece_image(const PiecewiseMonotoneMap& t, const Arc& piece) {
  const Domain& d = t.domain();
  const double thin = 64.0 * std::numeric_limits<double>::epsilon() * d.length();
  std::vector<Arc> out;
  for (std::size_t b = 0; b < t.branches().size(); ++b)
    for (const Arc& j : d.intersect(t.branch(b).support(), piece, thin)) out.push_back(t.branch_image(b, j));
  return out;
}

TransitionMatrix infer_matrix(const PiecewiseMonotoneMap& t, const Partition& p, double tol) {
  const Domain& d = t.domain();
  const double abs_tol = tol * d.length();
  const std::size_t n = p.size();
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const auto img = piece_image(t, p.piece(i));
    for (std::size_t j = 0; j < n; ++j) rows[i][j] = d.covers(img, p.piece(j), abs_tol) ? 1 : 0;
  }
  try {
    return TransitionMatrix::from_rows(rows);
  } catch (const Error& e) {
    throw Error(ErrorCode::NotATransitionMatrix, std::string("inferred matrix is invalid: ") + e.what());
  }
}

VerificationReport verify(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, double tol) {
  if (a.size() != p.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is " + std::to_string(a.size()) + "x" +
                                                  std::to_string(a.size()) + " but the partition has " +
                                                  std::to_string(p.size()) + " pieces");
  }
  if (!(p.domain() == t.domain())) throw Error(ErrorCode::DimensionMismatch, "map and partition domains differ");
  const Domain& d = t.domain();
  const double abs_tol = tol * d.length();
  const std::size_t n = p.size();

  VerificationReport rep;
  rep.circle = d.is_circle();
  rep.tol = abs_tol;

  rep.covering = true;
  rep.equality = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto img = piece_image(t, p.piece(i));
    std::vector<Arc> allowed;
    for (std::size_t j = 0; j < n; ++j) {
      if (!a(i, j)) continue;
      allowed.push_back(p.piece(j));
      if (!d.covers(img, p.piece(j), abs_tol)) rep.covering = false;
    }
    for (const Arc& arc : img)
      if (!d.covers(allowed, arc, abs_tol)) rep.equality = false;
  }
  rep.equality = rep.equality && rep.covering;

  rep.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) rep.min_gap = std::min(rep.min_gap, d.gap(p.piece(i), p.piece(j)));
  if (n < 2) rep.min_gap = 0.0;
  rep.strict = n >= 2 && rep.min_gap > abs_tol;

  rep.partition_covering = d.covers(p.pieces(), d.full(), abs_tol);

  const auto ends = p.endpoints();
  rep.boundary_invariant = true;
  for (double e : ends) {
    const double y = t.evaluate(e);
    const bool hit = std::any_of(ends.begin(), ends.end(), [&](double f) { return d.distance(y, f) <= abs_tol; });
    if (!hit) rep.boundary_invariant = false;
  }

  rep.min_abs_slope = std::numeric_limits<double>::infinity();
  for (const Arc& piece : p.pieces()) rep.min_abs_slope = std::min(rep.min_abs_slope, t.min_abs_slope_on(piece));
  if (rep.min_abs_slope > 1.0) rep.expansion_factor = rep.min_abs_slope;

  if (rep.partition_covering && rep.equality) {
    rep.notes.push_back(
        "closed pieces with disjoint interiors cover the domain: closures of piece interiors are taken to cover it "
        "as well");
  }
  return rep;
}

EntropyVerdict entropy_verdict(const TransitionMatrix& a, const VerificationReport& rep,
                               const std::optional<SingletonEvidence>& singleton) {
  EntropyVerdict v;
  const SpectralResult sr = spectral_radius(a);
  const double log_lambda = std::log(sr.lambda);
  const bool irreducible = is_irreducible(a);
  const bool branching = a.max_row_sum() >= 2;
  const std::size_t p = a.size();
  const auto& ev = singleton ? singleton : rep.singleton_evidence;

  if (rep.strict && rep.covering) {
    v.lower = log_lambda;
    const bool full = static_cast<std::size_t>(a.ones()) == p * p;
    v.justifications.push_back(full ? rules::kStrictFullShift : rules::kStrictLogLambda);
  }
  if (rep.strict && irreducible && branching) {
    v.li_yorke = true;
    v.lower = std::max(v.lower.value_or(0.0), std::log(2.0) / static_cast<double>(p));
    v.justifications.push_back(rules::kStrictLiYorke);
  }
  const bool singleton_rule = rep.partition_covering && rep.equality && ev && ev->decreasing;
  if (singleton_rule) {
    v.exact = log_lambda;
    v.justifications.push_back(rules::kPartitionSingleton);
  }
  const bool expanding_rule = rep.circle && rep.expansion_factor && *rep.expansion_factor > 1.0 &&
                              rep.boundary_invariant && rep.covering && rep.partition_covering;
  if (expanding_rule) {
    v.exact = log_lambda;
    v.justifications.push_back(rules::kCircleExpanding);
  }
  if (rep.circle && (singleton_rule || expanding_rule) && irreducible && branching) {
    v.li_yorke = true;
    v.devaney = true;
    v.justifications.push_back(rules::kCircleDevaney);
  }
  if (v.exact && !v.lower) v.lower = v.exact;
  if (irreducible && sr.eigvec) {
    const auto& x = *sr.eigvec;
    const auto [mn, mx] = std::minmax_element(x.begin(), x.end());
    v.growth_constant = static_cast<double>(p) * (*mx / *mn) / sr.lambda;
  }
  return v;
}

}  // namespace symdyn
