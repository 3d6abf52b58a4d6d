#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "symdyn/transition_matrix.hpp"

namespace symdyn {

using BigInt = boost::multiprecision::cpp_int;

/// Digraph with an edge i -> j iff a_ij = 1. Vertices are 0-based.
class TransitionGraph {
 public:
  explicit TransitionGraph(const TransitionMatrix& a);

  int size() const noexcept { return static_cast<int>(succ_.size()); }
  const std::vector<int>& successors(int v) const { return succ_[v]; }
  const std::vector<int>& predecessors(int v) const { return pred_[v]; }
  bool has_edge(int u, int v) const;

 private:
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
};

/// Tarjan's algorithm. Components are returned in topological order of the
/// condensation (a component only has edges into later components), and each
/// component is sorted ascending.
std::vector<std::vector<int>> strongly_connected_components(const TransitionGraph& g);

/// A closed walk that visits every vertex (repetition allowed), starting and
/// ending at vertex 0, or nullopt when none exists.
std::optional<std::vector<int>> find_full_cycle(const TransitionGraph& g);

bool has_full_cycle(const TransitionGraph& g);

/// Exact (A^n)_{ij}: the number of length-n paths from i to j.
BigInt count_paths(const TransitionMatrix& a, int i, int j, int n);

/// Exact A^n, row-major.
std::vector<BigInt> matrix_power(const TransitionMatrix& a, int n);

/// ||A^n|| = sum of all entries of A^n, exact.
BigInt power_norm(const TransitionMatrix& a, int n);

}  // namespace symdyn
