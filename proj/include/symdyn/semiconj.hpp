#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/onedmap.hpp"
#include "symdyn/subshift.hpp"
#include "symdyn/transition_matrix.hpp"

namespace symdyn {

/// Lambda_{a0} ∩ T^-1 Lambda_{a1} ∩ ... ∩ T^-(n-1) Lambda_{a(n-1)} for a word of
/// length n. components holds the pieces of the set; interval is their hull
/// and ambiguous is set when there is more than one piece.
struct CylinderInterval {
  SymbolWord word;
  Arc interval;
  double diameter = 0.0;
  bool ambiguous = false;
  std::vector<Arc> components;
};

/// Points of `piece` that T sends into one of `targets`, as merged arcs.
/// Overlaps shorter than a few ulps of the domain length are treated as
/// empty, so arcs touching at a single point do not produce preimages.
std::vector<Arc> preimages(const PiecewiseMonotoneMap& t, const Arc& piece, std::span<const Arc> targets);

/// Backward induction from the last symbol. Throws Error(EmptyCylinder).
CylinderInterval cylinder(const PiecewiseMonotoneMap& t, const Partition& p, std::span<const int> word,
                          double tol = 1e-12);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// All nonempty cylinders of words of length n, in lexicographic order.
/// With a matrix only admissible words are generated; without one every
/// word is tried and empty cylinders are dropped. Throws
/// Error(EnumerationCapExceeded) when a level exceeds cap.
std::vector<CylinderInterval> enumerate_cylinders(const PiecewiseMonotoneMap& t, const Partition& p,
                                                  const TransitionMatrix* a, int n,
                                                  std::size_t cap = kDefaultEnumerationCap);

using Series = std::vector<std::pair<int, double>>;

struct SingletonEvidence {
  int depth = 0;
  double max_diameter = 0.0;
  Series diameter_table;  // (n, max diameter over admissible words of length n)
  bool decreasing = false;
  SymbolWord widest_word;  // a word attaining max_diameter at full depth
};

/// Requires depth >= 2.
SingletonEvidence singleton_check(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                                  int depth, double tol = 1e-12, std::size_t cap = kDefaultEnumerationCap);

struct FactorPoint {
  double point = 0.0;
  double radius = 0.0;
  int depth = 0;  // length of the periodic cylinder used to bracket the tail
  bool certified = false;
};

/// Projection of an eventually periodic sequence to the point of its
/// infinite cylinder. The periodic tail is located by bisection on
/// T^q(x) - x inside a cylinder of the repeated period; the preperiod is then
/// pulled back through the branch inverses. A result whose radius exceeds
/// tol is returned with certified = false.
FactorPoint factor_point(const PiecewiseMonotoneMap& t, const Partition& p, const SymbolSequence& s,
                         double tol = 1e-10, int max_depth = 256);

/// Words (a0..a(n-1)) admissible for A with T^k(x) in Lambda_{ak} within tol.
/// At most 8 words, lexicographically smallest first.
std::vector<SymbolWord> itinerary(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                                  double x, int n, double tol = 1e-12);

/// Number of admissible words of length depth whose cylinder contains y.
int preimage_count(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, double y,
                   int depth, double tol = 1e-12, std::size_t cap = kDefaultEnumerationCap);

/// Same as preimage_count for many points, enumerating the cylinders once.
std::vector<int> preimage_counts(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                                 std::span<const double> ys, int depth, double tol = 1e-12,
                                 std::size_t cap = kDefaultEnumerationCap);

struct CylinderCount {
  int n = 0;
  std::uint64_t count = 0;
  double estimate = 0.0;  // log(count) / n
};

/// Nonempty-cylinder counts for every word over the partition's alphabet,
/// n = 1..n_max. Requires n_max >= 2.
std::vector<CylinderCount> entropy_by_cylinders(const PiecewiseMonotoneMap& t, const Partition& p, int n_max,
                                                std::size_t cap = kDefaultEnumerationCap);

/// "n,value" header followed by one row per entry.
std::string to_csv(const Series& series);

}  // namespace symdyn
