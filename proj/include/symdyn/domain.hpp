#pragma once

#include <span>
#include <vector>

namespace symdyn {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

enum class DomainKind { interval, circle };

/// Closed arc (or interval) given by its start and length. On the circle the
/// arc runs counterclockwise from start and may cross theta = 0; a length of
/// 2*pi is the full circle.
struct Arc {
  double start = 0.0;
  double length = 0.0;

  double end() const noexcept { return start + length; }
  double midpoint() const noexcept { return start + 0.5 * length; }
};

/// The phase space: the unit interval [0,1] with |x-y|, or the circle
/// [0, 2pi) with the arc-length metric min(|a-b|, 2pi - |a-b|).
class Domain {
 public:
  static Domain interval() { return Domain(DomainKind::interval, 1.0); }
  static Domain circle() { return Domain(DomainKind::circle, kTwoPi); }

  DomainKind kind() const noexcept { return kind_; }
  bool is_circle() const noexcept { return kind_ == DomainKind::circle; }
  double length() const noexcept { return length_; }
  Arc full() const noexcept { return {0.0, length_}; }

  /// Circle: reduce into [0, 2pi). Interval: identity.
  double normalize(double x) const;
  bool contains(double x, double tol = 0.0) const;
  double distance(double x, double y) const;
  /// to - from; on the circle reduced into (-pi, pi].
  double signed_difference(double to, double from) const;

  /// Interval [a, b] with a < b, or the counterclockwise arc from a to b.
  /// Throws Error(InvalidPartition) for a zero-length or out-of-domain arc.
  Arc arc_between(double a, double b) const;
  Arc make_arc(double start, double length) const;

  /// Normalized point of the arc at parameter t in [0, length].
  double point_at(const Arc& arc, double t) const { return normalize(arc.start + t); }

  /// Position of x along the arc measured from its start. Points of the
  /// complementary arc closer to start come back negative.
  double offset(const Arc& arc, double x) const;

  bool contains(const Arc& arc, double x, double tol) const;
  bool contains(const Arc& outer, const Arc& inner, double tol) const;

  /// Pieces of a intersected with b whose length exceeds min_length.
  std::vector<Arc> intersect(const Arc& a, const Arc& b, double min_length = 0.0) const;

  /// Distance between two arcs in the domain metric (0 if they meet).
  double gap(const Arc& a, const Arc& b) const;

  /// True iff the union of pieces covers target up to holes of size tol.
  bool covers(std::span<const Arc> pieces, const Arc& target, double tol) const;

  /// Union of arcs, merging those that overlap or sit within tol.
  std::vector<Arc> merge(std::vector<Arc> arcs, double tol) const;

  /// Smallest single arc containing all of the given arcs.
  Arc hull(std::span<const Arc> arcs) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  Domain(DomainKind kind, double length) : kind_(kind), length_(length) {}

  DomainKind kind_;
  double length_;
};

}  // namespace symdyn
