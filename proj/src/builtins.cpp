#include <algorithm>
#include <cmath>

#include "symdyn/error.hpp"
#include "symdyn/kasner.hpp"
#include "symdyn/onedmap.hpp"

namespace symdyn {

namespace {

MapInstance make_doubling() {
  const Domain circle = Domain::circle();
  auto map = make_piecewise_linear(circle, {0.0, kPi, kTwoPi}, {0.0, kTwoPi, 2.0 * kTwoPi}, "doubling");
  Partition part(circle, {{0.0, kPi}, {kPi, kPi}});
  return {std::move(map), std::move(part), TransitionMatrix::from_rows({{1, 1}, {1, 1}})};
}

MapInstance make_tent() {
  const Domain unit = Domain::interval();
  auto map = make_piecewise_linear(unit, {0.0, 0.5, 1.0}, {0.0, 1.0, 0.0}, "tent");
  Partition part(unit, {{0.0, 0.5}, {0.5, 0.5}});
  return {std::move(map), std::move(part), TransitionMatrix::from_rows({{1, 1}, {1, 1}})};
}

}  // namespace

MapInstance make_linear_markov(const TransitionMatrix& a) {
  const std::size_t p = a.size();
  const SpectralResult sr = spectral_radius(a);
  std::vector<double> weight(p, 1.0);
  if (sr.eigvec) weight = *sr.eigvec;
  const double total = [&] {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
  }();
  std::vector<double> xs(p + 1, 0.0);
  for (std::size_t i = 0; i < p; ++i) xs[i + 1] = xs[i] + weight[i] / total;
  xs[p] = 1.0;

  // Row i covers pieces first[i]..last[i]; the lap runs between breakpoint
  // indices first[i] and last[i] + 1.
  std::vector<std::size_t> first(p), last(p);
  for (std::size_t i = 0; i < p; ++i) {
    std::size_t f = p, l = 0;
    for (std::size_t j = 0; j < p; ++j)
      if (a(i, j)) f = std::min(f, j), l = std::max(l, j);
    for (std::size_t j = f; j <= l; ++j) {
      if (!a(i, j)) {
        throw Error(ErrorCode::BadParams,
                    "row " + std::to_string(i + 1) + " has non-contiguous ones; no linear Markov map realizes it");
      }
    }
    first[i] = f;
    last[i] = l + 1;
  }

  // Orient each lap so consecutive laps meet; try both orientations of the first.
  for (bool up : {true, false}) {
    std::vector<std::size_t> idx;
    idx.push_back(up ? first[0] : last[0]);
    std::size_t end = up ? last[0] : first[0];
    idx.push_back(end);
    bool ok = true;
    for (std::size_t i = 1; i < p && ok; ++i) {
      if (end == first[i]) {
        end = last[i];
      } else if (end == last[i]) {
        end = first[i];
      } else {
        ok = false;
      }
      idx.push_back(end);
    }
    if (!ok) continue;
    std::vector<double> values;
    for (std::size_t k : idx) values.push_back(xs[k]);
    const Domain unit = Domain::interval();
    auto map = make_piecewise_linear(unit, xs, values, "linear_markov");
    std::vector<Arc> pieces;
    for (std::size_t i = 0; i < p; ++i) pieces.push_back({xs[i], xs[i + 1] - xs[i]});
    return {std::move(map), Partition(unit, std::move(pieces)), a};
  }
  throw Error(ErrorCode::BadParams, "rows do not chain into a continuous map; no linear Markov map realizes them");
}

MapInstance make_builtin(const std::string& name, const BuiltinParams& params) {
  if (name != "linear_markov" && params.matrix) {
    throw Error(ErrorCode::BadParams, "builtin '" + name + "' takes no matrix");
  }
  if (name == "kasner") return make_kasner();
  if (name == "doubling") return make_doubling();
  if (name == "tent") return make_tent();
  if (name == "linear_markov") {
    if (!params.matrix) throw Error(ErrorCode::BadParams, "linear_markov needs a matrix");
    return make_linear_markov(*params.matrix);
  }
  throw Error(ErrorCode::UnknownBuiltin, "unknown builtin '" + name + "' (kasner, doubling, tent, linear_markov)");
}

}  // namespace symdyn
