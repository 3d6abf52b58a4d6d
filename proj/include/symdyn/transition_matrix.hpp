#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace symdyn {

/// Square 0/1 matrix with no zero row and no zero column, p >= 2.
///
/// Indices are 0-based in the C++ API. Symbols in words and sequences are
/// 1-based (see subshift.hpp), so symbol s corresponds to row s - 1.
class TransitionMatrix {
 public:
  /// Validates and builds. Throws Error with NotSquare, DimensionTooSmall,
  /// NonBinaryEntry, ZeroRow or ZeroColumn.
  static TransitionMatrix from_rows(const std::vector<std::vector<int>>& rows);

  std::size_t size() const noexcept { return p_; }
  bool operator()(std::size_t i, std::size_t j) const noexcept { return bits_[i * p_ + j] != 0; }

  int row_sum(std::size_t i) const noexcept;
  int col_sum(std::size_t j) const noexcept;
  int max_row_sum() const noexcept;
  int ones() const noexcept;

  std::vector<std::vector<int>> to_rows() const;

  /// Entrywise A <= B.
  bool entrywise_le(const TransitionMatrix& other) const noexcept;

  friend bool operator==(const TransitionMatrix&, const TransitionMatrix&) = default;

 private:
  TransitionMatrix(std::size_t p, std::vector<std::uint8_t> bits) : p_(p), bits_(std::move(bits)) {}

  std::size_t p_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct SpectralResult {
  double lambda = 0.0;
  /// Positive Perron vector normalized to max-norm 1; only for irreducible A.
  std::optional<std::vector<double>> eigvec;
  int iterations = 0;
  /// max-norm of A v - lambda v for the returned eigvec (or for the Perron
  /// vector of the dominant component when eigvec is absent).
  double residual = 0.0;
};

/// Maximal eigenvalue of A, taken as the largest Perron root over the
/// strongly connected components. Each component is handled by power
/// iteration on averaged consecutive iterates, (x + Cx)/2, which is
/// aperiodic even when C is a cycle; the Collatz-Wielandt bracket
/// min (Cx)_i/x_i <= lambda <= max (Cx)_i/x_i is the stopping rule.
///
/// Throws Error(NoConvergence) if the bracket is still wider than tol after
/// 10 * p * ceil(1/tol) iterations.
SpectralResult spectral_radius(const TransitionMatrix& a, double tol = 1e-12);

bool is_irreducible(const TransitionMatrix& a);

struct Primitivity {
  bool primitive = false;
  std::optional<int> exponent;  // smallest k with A^k > 0
};

/// Checks powers up to the Wielandt bound (p-1)^2 + 1.
Primitivity is_primitive(const TransitionMatrix& a);

/// (1/n) log ||A^n|| with ||M|| = sum |m_ij|, accumulated in floating point
/// with renormalization so that large n does not overflow.
double log_norm_growth(const TransitionMatrix& a, int n);

}  // namespace symdyn
