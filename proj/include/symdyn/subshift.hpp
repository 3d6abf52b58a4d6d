#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "symdyn/digraph.hpp"
#include "symdyn/transition_matrix.hpp"

namespace symdyn {

/// Finite word over the 1-based alphabet {1..p}.
using SymbolWord = std::vector<int>;

/// Eventually periodic one-sided sequence pre . per . per . ...
///
/// Stored in canonical form: the period is primitive (not a power of a
/// shorter word) and the preperiod is as short as possible. Two sequences
/// are equal as infinite sequences iff their canonical forms are equal.
class SymbolSequence {
 public:
  /// Throws Error(InvalidSequence) if period is empty or any symbol < 1.
  SymbolSequence(SymbolWord preperiod, SymbolWord period);

  static SymbolSequence periodic(SymbolWord period) { return {{}, std::move(period)}; }

  const SymbolWord& preperiod() const noexcept { return pre_; }
  const SymbolWord& period() const noexcept { return per_; }

  int at(std::size_t n) const;
  SymbolWord prefix(std::size_t n) const;
  int max_symbol() const;

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;

 private:
  void canonicalize();

  SymbolWord pre_;
  SymbolWord per_;
};

/// Symbols outside 1..p raise Error(SymbolOutOfRange).
bool is_admissible(const TransitionMatrix& a, std::span<const int> word);

/// Includes the preperiod/period seam and the wrap from the end of the
/// period back to its start.
bool is_admissible(const TransitionMatrix& a, const SymbolSequence& s);

/// Number of admissible words of length n: p for n = 1, else ||A^(n-1)||.
BigInt count_words(const TransitionMatrix& a, int n);

/// log of the maximal eigenvalue of A.
double subshift_entropy(const TransitionMatrix& a, double tol = 1e-12);

/// Drops the first symbol.
SymbolSequence shift(const SymbolSequence& s);

SymbolSequence shift(const SymbolSequence& s, std::size_t times);

/// Index of the first disagreement, or -1 if the sequences are equal.
long first_disagreement(const SymbolSequence& a, const SymbolSequence& b);

/// 0 if equal, else 2^-k where k is the first index of disagreement.
double sequence_metric(const SymbolSequence& a, const SymbolSequence& b);

std::string to_string(std::span<const int> word);
std::string to_string(const SymbolSequence& s);

}  // namespace symdyn
