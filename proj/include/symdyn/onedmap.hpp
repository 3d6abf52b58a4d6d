#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symdyn/domain.hpp"
#include "symdyn/transition_matrix.hpp"

namespace symdyn {

enum class Direction { increasing, decreasing };

/// One monotone C^1 lap of a map.
///
/// The branch is described on its lifted support: u runs over
/// [support.start, support.start + support.length] without reduction, and
/// value(u) is a continuous lift of T (on the circle it may leave [0, 2pi)).
/// Working with lifts keeps wrap-around arcs such as [5pi/3, 7pi/3] and
/// images longer than pi free of special cases.
class Branch {
 public:
  using Fn = std::function<double(double)>;

  /// Validates monotonicity and the slope bounds on a grid of samples.
  Branch(Arc support, Fn value, Fn slope, double min_abs_slope, double max_abs_slope);

  const Arc& support() const noexcept { return support_; }
  Direction direction() const noexcept { return direction_; }
  double min_abs_slope() const noexcept { return min_abs_slope_; }
  double max_abs_slope() const noexcept { return max_abs_slope_; }

  double value(double u) const { return value_(u); }
  double slope(double u) const { return slope_(u); }

  /// Lifted values at the two ends of the support, in support order.
  double value_at_start() const { return value_(support_.start); }
  double value_at_end() const { return value_(support_.end()); }

  /// u in [u_lo, u_hi] with value(u) = y, by bisection to full precision.
  /// Exact when y equals the value at either end of the bracket.
  double inverse(double y, double u_lo, double u_hi) const;

 private:
  Arc support_;
  Fn value_;
  Fn slope_;
  Direction direction_;
  double min_abs_slope_;
  double max_abs_slope_;
};

/// Ordered pieces Lambda_1..Lambda_p: closed, nondegenerate, pairwise
/// disjoint interiors.
class Partition {
 public:
  Partition(Domain domain, std::vector<Arc> pieces);

  const Domain& domain() const noexcept { return domain_; }
  std::size_t size() const noexcept { return pieces_.size(); }
  const Arc& piece(std::size_t i) const { return pieces_[i]; }
  std::span<const Arc> pieces() const noexcept { return pieces_; }

  /// Sorted, deduplicated piece endpoints (normalized).
  std::vector<double> endpoints() const;

  /// 0-based indices of the pieces containing x within tol.
  std::vector<int> pieces_containing(double x, double tol) const;

  double total_length() const;

 private:
  Domain domain_;
  std::vector<Arc> pieces_;
};

/// A continuous map of the interval or circle made of monotone C^1 branches
/// whose supports tile the domain.
class PiecewiseMonotoneMap {
 public:
  /// direct, when given, evaluates the reduced map in one call and is
  /// preferred over the branch lifts inside evaluate().
  PiecewiseMonotoneMap(Domain domain, std::vector<Branch> branches, std::string name,
                       std::function<double(double)> direct = {});

  const Domain& domain() const noexcept { return domain_; }
  const std::string& name() const noexcept { return name_; }
  std::span<const Branch> branches() const noexcept { return branches_; }
  const Branch& branch(std::size_t b) const { return branches_.at(b); }

  /// Throws Error(OutOfDomain).
  double evaluate(double x) const;

  /// Branch derivative at x. At a breakpoint with agreeing one-sided values
  /// that common value is returned; otherwise throws BreakpointError.
  double derivative(double x) const;

  /// (left, right) one-sided derivatives; equal away from breakpoints.
  std::pair<double, double> one_sided_derivatives(double x) const;

  /// Image of the subarc J of branch b's support. Throws Error(NotInSupport).
  Arc branch_image(std::size_t b, const Arc& j) const;

  /// Point x of branch b's support with T(x) = y. When several lifts of y
  /// fall in the image the lowest one is used. Throws Error(NotInImage).
  double branch_inverse(std::size_t b, double y, double tol) const;

  /// First branch whose support contains x.
  std::optional<std::size_t> branch_at(double x) const;

  /// Lifted coordinate of x inside branch b's support.
  double lift_coordinate(std::size_t b, double x) const;

  /// Minimal |T'| over branches meeting the arc in more than a point.
  double min_abs_slope_on(const Arc& arc) const;

 private:
  Domain domain_;
  std::vector<Branch> branches_;
  std::string name_;
  std::function<double(double)> direct_;
};

/// Piecewise-linear map through (breakpoints[k], values[k]). Breakpoints
/// must run from 0 to the domain length; on the circle values are lifts and
/// values.back() - values.front() must be a multiple of 2pi.
PiecewiseMonotoneMap make_piecewise_linear(Domain domain, const std::vector<double>& breakpoints,
                                           const std::vector<double>& values, std::string name = "piecewise_linear");

struct BuiltinParams {
  std::optional<TransitionMatrix> matrix;  // linear_markov only
};

struct MapInstance {
  PiecewiseMonotoneMap map;
  Partition partition;
  TransitionMatrix matrix;
};

/// kasner, doubling, tent, linear_markov. Throws Error(UnknownBuiltin) or
/// Error(BadParams).
MapInstance make_builtin(const std::string& name, const BuiltinParams& params = {});

/// Piecewise-linear Markov interval map realizing A: piece lengths follow
/// the Perron vector (uniform slope lambda_A) and each piece is carried
/// linearly onto the hull of the pieces its row allows. Rows must have
/// contiguous ones and the pieces must chain continuously; otherwise
/// Error(BadParams).
MapInstance make_linear_markov(const TransitionMatrix& a);

}  // namespace symdyn
