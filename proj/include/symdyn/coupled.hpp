#pragma once

#include <optional>
#include <string>
#include <vector>

#include "symdyn/onedmap.hpp"
#include "symdyn/semiconj.hpp"
#include "symdyn/transition_matrix.hpp"

namespace symdyn {

/// Default containment tolerance as a fraction of the domain length.
inline constexpr double kDefaultCoverTol = 1e-9;

/// Union of branch images of the piece, one arc per branch lap.
std::vector<Arc> piece_image(const PiecewiseMonotoneMap& t, const Arc& piece);

/// a_ij = 1 iff T(Lambda_i) covers Lambda_j up to tol (times the domain
/// length). Throws Error(NotATransitionMatrix) if a row or column is empty.
TransitionMatrix infer_matrix(const PiecewiseMonotoneMap& t, const Partition& p, double tol = kDefaultCoverTol);

struct VerificationReport {
  bool circle = false;
  bool covering = false;   // T(Lambda_i) covers every allowed Lambda_j
  bool equality = false;   // ... and is covered by the allowed pieces
  bool strict = false;     // pieces at positive mutual distance
  double min_gap = 0.0;
  bool partition_covering = false;  // pieces cover the whole domain
  bool boundary_invariant = false;  // T maps piece endpoints into piece endpoints
  std::optional<double> expansion_factor;  // min |T'| over the pieces, when > 1
  double min_abs_slope = 0.0;
  std::optional<SingletonEvidence> singleton_evidence;
  double tol = 0.0;  // absolute containment tolerance used
  std::vector<std::string> notes;
};

/// Throws Error(DimensionMismatch).
VerificationReport verify(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                          double tol = kDefaultCoverTol);

struct EntropyVerdict {
  std::optional<double> lower;
  std::optional<double> exact;
  bool li_yorke = false;
  bool devaney = false;
  std::vector<std::string> justifications;
  /// c with N_n <= c * lambda^n for the admissible word counts; present for
  /// irreducible matrices.
  std::optional<double> growth_constant;
};

/// Rule identifiers written into justifications.
namespace rules {
inline constexpr const char* kStrictFullShift = "strict_coupled_log_p";
inline constexpr const char* kStrictLogLambda = "strict_coupled_log_lambda";
inline constexpr const char* kStrictLiYorke = "strict_irreducible_li_yorke";
inline constexpr const char* kPartitionSingleton = "partition_singleton_exact";
inline constexpr const char* kCircleExpanding = "circle_expanding_exact";
inline constexpr const char* kCircleDevaney = "circle_devaney";
}  // namespace rules

/// Applies the entropy and chaos rules to a verification report. Evidence
/// passed here overrides rep.singleton_evidence.
EntropyVerdict entropy_verdict(const TransitionMatrix& a, const VerificationReport& rep,
                               const std::optional<SingletonEvidence>& singleton = std::nullopt);

}  // namespace symdyn
