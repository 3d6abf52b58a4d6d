#include "symdyn/transition_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symdyn/digraph.hpp"
#include "symdyn/error.hpp"

namespace symdyn {

TransitionMatrix TransitionMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
  const std::size_t p = rows.size();
  for (const auto& row : rows) {
    if (row.size() != p) {
      throw Error(ErrorCode::NotSquare, "every row must have length " + std::to_string(p));
    }
  }
  if (p < 2) {
    throw Error(ErrorCode::DimensionTooSmall, "transition matrix needs p >= 2, got " + std::to_string(p));
  }
  std::vector<std::uint8_t> bits(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const int v = rows[i][j];
      if (v != 0 && v != 1) {
        std::ostringstream os;
        os << "entry (" << i + 1 << "," << j + 1 << ") = " << v;
        throw Error(ErrorCode::NonBinaryEntry, os.str());
      }
      bits[i * p + j] = static_cast<std::uint8_t>(v);
    }
  }
  TransitionMatrix m(p, std::move(bits));
  for (std::size_t i = 0; i < p; ++i) {
    if (m.row_sum(i) == 0) throw Error(ErrorCode::ZeroRow, "row " + std::to_string(i + 1) + " is zero");
  }
  for (std::size_t j = 0; j < p; ++j) {
    if (m.col_sum(j) == 0) throw Error(ErrorCode::ZeroColumn, "column " + std::to_string(j + 1) + " is zero");
  }
  return m;
}

int TransitionMatrix::row_sum(std::size_t i) const noexcept {
  int s = 0;
  for (std::size_t j = 0; j < p_; ++j) s += bits_[i * p_ + j];
  return s;
}

int TransitionMatrix::col_sum(std::size_t j) const noexcept {
  int s = 0;
  for (std::size_t i = 0; i < p_; ++i) s += bits_[i * p_ + j];
  return s;
}

int TransitionMatrix::max_row_sum() const noexcept {
  int best = 0;
  for (std::size_t i = 0; i < p_; ++i) best = std::max(best, row_sum(i));
  return best;
}

int TransitionMatrix::ones() const noexcept {
  int s = 0;
  for (auto b : bits_) s += b;
  return s;
}

std::vector<std::vector<int>> TransitionMatrix::to_rows() const {
  std::vector<std::vector<int>> rows(p_, std::vector<int>(p_));
  for (std::size_t i = 0; i < p_; ++i)
    for (std::size_t j = 0; j < p_; ++j) rows[i][j] = bits_[i * p_ + j];
  return rows;
}

bool TransitionMatrix::entrywise_le(const TransitionMatrix& other) const noexcept {
  if (other.p_ != p_) return false;
  for (std::size_t k = 0; k < bits_.size(); ++k)
    if (bits_[k] > other.bits_[k]) return false;
  return true;
}

namespace {

struct ComponentPerron {
  double lambda = 0.0;
  std::vector<double> vec;
  int iterations = 0;
  double residual = 0.0;
};

// Power iteration restricted to one strongly connected component with at
// least one internal edge, so the restricted matrix is irreducible.
ComponentPerron component_perron(const TransitionMatrix& a, const std::vector<int>& comp, double tol) {
  const std::size_t k = comp.size();
  std::vector<std::vector<int>> adj(k);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c)
      if (a(comp[r], comp[c])) adj[r].push_back(static_cast<int>(c));

  const double cap_d = 10.0 * static_cast<double>(a.size()) * std::ceil(1.0 / tol);
  const long long cap = static_cast<long long>(std::min(cap_d, 5.0e7));

  std::vector<double> x(k, 1.0), y(k);
  ComponentPerron out;
  for (long long it = 1; it <= cap; ++it) {
    for (std::size_t r = 0; r < k; ++r) {
      double s = 0.0;
      for (int c : adj[r]) s += x[c];
      y[r] = s;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      const double q = y[r] / x[r];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    // Below a few ulps the bracket cannot shrink further.
    const double floor_tol = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi);
    if (hi - lo <= std::max(tol, floor_tol)) {
      out.lambda = 0.5 * (lo + hi);
      out.iterations = static_cast<int>(it);
      double res = 0.0;
      for (std::size_t r = 0; r < k; ++r) res = std::max(res, std::abs(y[r] - out.lambda * x[r]));
      out.residual = res;
      out.vec = x;
      return out;
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < k; ++r) {
      x[r] = 0.5 * (x[r] + y[r] / hi);
      norm = std::max(norm, x[r]);
    }
    for (auto& v : x) v /= norm;
  }
  throw Error(ErrorCode::NoConvergence, "power iteration did not reach tolerance within the iteration cap");
}

}  // namespace

SpectralResult spectral_radius(const TransitionMatrix& a, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParams, "tol must be positive");
  const auto comps = strongly_connected_components(TransitionGraph(a));

  SpectralResult best;
  bool have = false;
  for (const auto& comp : comps) {
    bool has_edge = false;
    for (int u : comp)
      for (int v : comp)
        if (a(u, v)) has_edge = true;
    if (!has_edge) continue;  // trivial component, Perron root 0
    ComponentPerron cp = component_perron(a, comp, tol);
    best.iterations += cp.iterations;
    if (!have || cp.lambda > best.lambda) {
      best.lambda = cp.lambda;
      best.residual = cp.residual;
      if (comp.size() == a.size()) {
        std::vector<double> v(a.size());
        for (std::size_t r = 0; r < comp.size(); ++r) v[comp[r]] = cp.vec[r];
        best.eigvec = std::move(v);
      }
      have = true;
    }
  }
  return best;
}

bool is_irreducible(const TransitionMatrix& a) {
  const std::size_t p = a.size();
  auto reaches_all = [&](bool forward) {
    std::vector<char> seen(p, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < p; ++v) {
        const bool edge = forward ? a(u, v) : a(v, u);
        if (edge && !seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == p;
  };
  return reaches_all(true) && reaches_all(false);
}

Primitivity is_primitive(const TransitionMatrix& a) {
  const std::size_t p = a.size();
  const int bound = static_cast<int>((p - 1) * (p - 1) + 1);
  std::vector<char> power(p * p), next(p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) power[i * p + j] = a(i, j);

  for (int k = 1; k <= bound; ++k) {
    if (std::all_of(power.begin(), power.end(), [](char c) { return c != 0; })) {
      return {true, k};
    }
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        char v = 0;
        for (std::size_t m = 0; m < p && !v; ++m) v = power[i * p + m] && a(m, j);
        next[i * p + j] = v;
      }
    }
    power.swap(next);
  }
  return {false, std::nullopt};
}

double log_norm_growth(const TransitionMatrix& a, int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "n must be >= 1");
  const std::size_t p = a.size();
  std::vector<double> m(p * p), next(p * p);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) m[i * p + j] = a(i, j);
  double log_scale = 0.0;
  for (int step = 1; step < n; ++step) {
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < p; ++k)
          if (a(k, j)) s += m[i * p + k];
        next[i * p + j] = s;
      }
    }
    m.swap(next);
    double total = 0.0;
    for (double v : m) total += v;
    for (double& v : m) v /= total;
    log_scale += std::log(total);
  }
  double total = 0.0;
  for (double v : m) total += v;
  return (log_scale + std::log(total)) / n;
}

}  // namespace symdyn
