#include "symdyn/semiconj.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sliver(const Domain& d) { return 64.0 * kEps * d.length(); }

double metric_diameter(const Domain& d, const Arc& a) {
  return d.is_circle() ? std::min(a.length, 0.5 * d.length()) : a.length;
}

struct Lap {
  const Branch* branch;
  double u0, u1;  // lifted bracket inside the support
  double lo, hi;  // lifted image
};

// Monotone laps of T restricted to the piece.
std::vector<Lap> laps(const PiecewiseMonotoneMap& t, const Arc& piece) {
  const Domain& d = t.domain();
  std::vector<Lap> out;
  for (const Branch& br : t.branches()) {
    const Arc& s = br.support();
    for (const Arc& j : d.intersect(s, piece, sliver(d))) {
      const double u0 = s.start + std::clamp(d.offset(s, j.start), 0.0, s.length);
      const double u1 = std::min(u0 + j.length, s.end());
      const double y0 = br.value(u0), y1 = br.value(u1);
      out.push_back({&br, u0, u1, std::min(y0, y1), std::max(y0, y1)});
    }
  }
  return out;
}

// Integer shifts k with [start + kL, end + kL] meeting [lo, hi].
std::pair<long, long> lift_range(const Domain& d, double lo, double hi, double start, double end) {
  if (!d.is_circle()) return {0, 0};
  const double L = d.length();
  return {static_cast<long>(std::floor((lo - end) / L)), static_cast<long>(std::ceil((hi - start) / L))};
}

CylinderInterval finish(const Domain& d, std::span<const int> word, std::vector<Arc> comps) {
  CylinderInterval c;
  c.word.assign(word.begin(), word.end());
  c.interval = d.hull(comps);
  c.diameter = metric_diameter(d, c.interval);
  c.ambiguous = comps.size() > 1;
  c.components = std::move(comps);
  return c;
}

void check_word(const Partition& p, std::span<const int> word) {
  if (word.empty()) throw Error(ErrorCode::InvalidSequence, "empty word");
  for (int s : word) {
    if (s < 1 || s > static_cast<int>(p.size())) {
      throw Error(ErrorCode::SymbolOutOfRange, "symbol " + std::to_string(s) + " outside the partition");
    }
  }
}

double arc_distance(const Domain& d, const Arc& a, double x) {
  if (d.contains(a, x, 0.0)) return 0.0;
  return std::min(d.distance(x, a.start), d.distance(x, a.end()));
}

}  // namespace

std::vector<Arc> preimages(const PiecewiseMonotoneMap& t, const Arc& piece, std::span<const Arc> targets) {
  const Domain& d = t.domain();
  const double L = d.length();
  const double thin = sliver(d);
  std::vector<Arc> out;
  for (const Lap& lap : laps(t, piece)) {
    for (const Arc& tgt : targets) {
      const double ts = d.normalize(tgt.start);
      const auto [k0, k1] = lift_range(d, lap.lo, lap.hi, ts, ts + tgt.length);
      for (long k = k0; k <= k1; ++k) {
        const double a = std::max(lap.lo, ts + k * L);
        const double c = std::min(lap.hi, ts + tgt.length + k * L);
        if (c - a <= thin) continue;
        const double xa = lap.branch->inverse(a, lap.u0, lap.u1);
        const double xc = lap.branch->inverse(c, lap.u0, lap.u1);
        const double lo = std::min(xa, xc);
        const double len = std::abs(xc - xa);
        if (len > 0.0) out.push_back({d.normalize(lo), len});
      }
    }
  }
  return d.merge(std::move(out), thin);
}

CylinderInterval cylinder(const PiecewiseMonotoneMap& t, const Partition& p, std::span<const int> word, double tol) {
  check_word(p, word);
  const Domain& d = t.domain();
  std::vector<Arc> cur{p.piece(static_cast<std::size_t>(word.back() - 1))};
  for (std::size_t k = word.size() - 1; k-- > 0;) {
    cur = preimages(t, p.piece(static_cast<std::size_t>(word[k] - 1)), cur);
    if (cur.empty()) throw Error(ErrorCode::EmptyCylinder, "cylinder " + to_string(word) + " is empty");
  }
  return finish(d, word, d.merge(std::move(cur), std::max(tol, 0.0)));
}

namespace {

struct Node {
  SymbolWord word;
  std::vector<Arc> comps;
};

// Calls visit(len, nodes) for len = 1..n; nodes are in generation order.
template <class Visit>
void walk_levels(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix* a, int n,
                 std::size_t cap, Visit&& visit) {
  if (n < 1) throw Error(ErrorCode::BadParams, "word length must be >= 1");
  if (a && a->size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "matrix and partition sizes differ");
  std::vector<Node> level;
  for (std::size_t i = 0; i < p.size(); ++i) level.push_back({{static_cast<int>(i + 1)}, {p.piece(i)}});
  if (level.size() > cap) throw Error(ErrorCode::EnumerationCapExceeded, "too many cylinders");
  visit(1, level);
  // Words grow at the front: cyl(s w) = Lambda_s ∩ T^-1 cyl(w).
  for (int len = 2; len <= n; ++len) {
    std::vector<Node> next;
    for (const Node& node : level) {
      for (std::size_t s = 0; s < p.size(); ++s) {
        if (a && !(*a)(s, static_cast<std::size_t>(node.word.front() - 1))) continue;
        auto comps = preimages(t, p.piece(s), node.comps);
        if (comps.empty()) continue;
        SymbolWord w;
        w.reserve(node.word.size() + 1);
        w.push_back(static_cast<int>(s + 1));
        w.insert(w.end(), node.word.begin(), node.word.end());
        next.push_back({std::move(w), std::move(comps)});
        if (next.size() > cap) {
          throw Error(ErrorCode::EnumerationCapExceeded,
                      "more than " + std::to_string(cap) + " cylinders at length " + std::to_string(len));
        }
      }
    }
    level = std::move(next);
    visit(len, level);
  }
}

}  // namespace

std::vector<CylinderInterval> enumerate_cylinders(const PiecewiseMonotoneMap& t, const Partition& p,
                                                  const TransitionMatrix* a, int n, std::size_t cap) {
  const Domain& d = t.domain();
  std::vector<CylinderInterval> out;
  walk_levels(t, p, a, n, cap, [&](int len, std::vector<Node>& level) {
    if (len != n) return;
    std::sort(level.begin(), level.end(), [](const Node& x, const Node& y) { return x.word < y.word; });
    out.reserve(level.size());
    for (Node& node : level) out.push_back(finish(d, node.word, std::move(node.comps)));
  });
  return out;
}

SingletonEvidence singleton_check(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                                  int depth, double tol, std::size_t cap) {
  if (depth < 2) throw Error(ErrorCode::BadParams, "singleton check needs depth >= 2");
  (void)tol;
  SingletonEvidence ev;
  ev.depth = depth;
  ev.decreasing = true;
  const Domain& d = t.domain();
  walk_levels(t, p, &a, depth, cap, [&](int n, const std::vector<Node>& level) {
    double widest = 0.0;
    const Node* arg = nullptr;
    for (const Node& node : level) {
      const double diam = metric_diameter(d, d.hull(node.comps));
      // Symmetric twins differ only by rounding; among near-ties keep the smallest word.
      const double tie = 1e-12 * std::max(widest, diam);
      if (diam > widest + tie || (std::abs(diam - widest) <= tie && arg && node.word < arg->word)) {
        widest = std::max(widest, diam);
        arg = &node;
      }
    }
    if (!ev.diameter_table.empty() && !(widest < ev.diameter_table.back().second)) ev.decreasing = false;
    ev.diameter_table.emplace_back(n, widest);
    if (n == depth && arg) ev.widest_word = arg->word;
  });
  ev.max_diameter = ev.diameter_table.back().second;
  return ev;
}

FactorPoint factor_point(const PiecewiseMonotoneMap& t, const Partition& p, const SymbolSequence& s, double tol,
                         int max_depth) {
  const Domain& d = t.domain();
  const double L = d.length();
  const double floor_radius = 16.0 * kEps * L;
  const SymbolWord& per = s.period();
  const int q = static_cast<int>(per.size());
  check_word(p, per);
  if (!s.preperiod().empty()) check_word(p, s.preperiod());

  // Bracket the periodic point with a cylinder of the repeated period.
  const int step = std::max(1, (8 + q - 1) / q);
  std::optional<CylinderInterval> box;
  int depth = 0;
  for (int reps = step;; reps += step) {
    const int len = reps * q + 1;
    if (len > max_depth && box) break;
    SymbolWord w;
    for (int r = 0; r < reps; ++r) w.insert(w.end(), per.begin(), per.end());
    w.push_back(per.front());
    try {
      box = cylinder(t, p, w);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyCylinder || !box) throw;
      break;
    }
    depth = len;
    if (box->diameter <= 1e-6 * L || len > max_depth) break;
  }

  auto h = [&](double x) {
    double y = x;
    for (int k = 0; k < q; ++k) y = t.evaluate(y);
    return d.signed_difference(y, x);
  };
  double lo = box->interval.start;
  double hi = box->interval.end();
  const double hlo = h(lo), hhi = h(hi);
  FactorPoint fp;
  fp.depth = depth;
  bool refined = true;
  if (std::abs(hlo) <= 1e-13) {
    fp.point = lo;
    fp.radius = floor_radius;
  } else if (std::abs(hhi) <= 1e-13) {
    fp.point = hi;
    fp.radius = floor_radius;
  } else if ((hlo < 0.0) != (hhi < 0.0)) {
    const bool neg_lo = hlo < 0.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = lo + 0.5 * (hi - lo);
      if (mid <= lo || mid >= hi) break;
      if ((h(mid) < 0.0) == neg_lo) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    fp.point = lo + 0.5 * (hi - lo);
    fp.radius = std::max(0.5 * (hi - lo), floor_radius);
  } else {
    fp.point = box->interval.midpoint();
    fp.radius = 0.5 * box->interval.length;
    refined = false;
  }
  fp.point = d.normalize(fp.point);

  // Pull back through the preperiod.
  const SymbolWord& pre = s.preperiod();
  for (std::size_t i = pre.size(); i-- > 0;) {
    const Arc& piece = p.piece(static_cast<std::size_t>(pre[i] - 1));
    const double slack = floor_radius;
    std::vector<double> cands;
    for (const Lap& lap : laps(t, piece)) {
      const auto [k0, k1] = lift_range(d, lap.lo - slack, lap.hi + slack, fp.point, fp.point);
      for (long k = k0; k <= k1; ++k) {
        const double y = fp.point + k * L;
        if (y < lap.lo - slack || y > lap.hi + slack) continue;
        cands.push_back(d.normalize(lap.branch->inverse(std::clamp(y, lap.lo, lap.hi), lap.u0, lap.u1)));
      }
    }
    if (cands.empty()) {
      throw Error(ErrorCode::EmptyCylinder, "sequence " + to_string(s) + " has no point in its cylinder");
    }
    double x = cands.front();
    if (cands.size() > 1) {
      // Decide between coincident lifts with a short cylinder of the remaining word.
      const SymbolWord ref = shift(s, i).prefix(12);
      const Arc near = cylinder(t, p, ref).interval;
      double best = std::numeric_limits<double>::infinity();
      for (double c : cands) {
        const double dist = arc_distance(d, near, c);
        if (dist < best) best = dist, x = c;
      }
    }
    const double r = t.min_abs_slope_on(piece);
    fp.radius = fp.radius / std::max(r, 1.0) + 4.0 * kEps * L;
    fp.point = x;
  }
  fp.certified = refined && fp.radius <= tol;
  return fp;
}

std::vector<SymbolWord> itinerary(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                                  double x, int n, double tol) {
  constexpr std::size_t kMaxWords = 8;
  if (n < 1) return {};
  if (a.size() != p.size()) throw Error(ErrorCode::DimensionMismatch, "matrix and partition sizes differ");
  std::vector<std::vector<int>> choices;
  double y = t.domain().normalize(x);
  for (int k = 0; k < n; ++k) {
    choices.push_back(p.pieces_containing(y, tol));
    if (k + 1 < n) y = t.evaluate(y);
  }
  std::vector<SymbolWord> out;
  SymbolWord w;
  auto dfs = [&](auto&& self, int k) -> void {
    if (out.size() >= kMaxWords) return;
    if (k == n) {
      out.push_back(w);
      return;
    }
    for (int c : choices[static_cast<std::size_t>(k)]) {
      if (k > 0 && !a(static_cast<std::size_t>(w.back() - 1), static_cast<std::size_t>(c))) continue;
      w.push_back(c + 1);
      self(self, k + 1);
      w.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

std::vector<int> preimage_counts(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a,
                                 std::span<const double> ys, int depth, double tol, std::size_t cap) {
  const auto cyls = enumerate_cylinders(t, p, &a, depth, cap);
  const Domain& d = t.domain();
  std::vector<int> out;
  out.reserve(ys.size());
  for (double y : ys) {
    int count = 0;
    for (const auto& c : cyls) {
      for (const Arc& comp : c.components) {
        if (d.contains(comp, y, tol)) {
          ++count;
          break;
        }
      }
    }
    out.push_back(count);
  }
  return out;
}

int preimage_count(const PiecewiseMonotoneMap& t, const Partition& p, const TransitionMatrix& a, double y, int depth,
                   double tol, std::size_t cap) {
  const double ys[] = {y};
  return preimage_counts(t, p, a, ys, depth, tol, cap).front();
}

std::vector<CylinderCount> entropy_by_cylinders(const PiecewiseMonotoneMap& t, const Partition& p, int n_max,
                                                std::size_t cap) {
  if (n_max < 2) throw Error(ErrorCode::BadParams, "n_max must be >= 2");
  std::vector<CylinderCount> out;
  walk_levels(t, p, nullptr, n_max, cap, [&](int n, const std::vector<Node>& level) {
    const auto count = static_cast<std::uint64_t>(level.size());
    out.push_back({n, count, count ? std::log(static_cast<double>(count)) / n : 0.0});
  });
  return out;
}

std::string to_csv(const Series& series) {
  std::string out = "n,value\n";
  char buf[64];
  for (const auto& [n, v] : series) {
    std::snprintf(buf, sizeof buf, "%d,%.17g\n", n, v);
    out += buf;
  }
  return out;
}

}  // namespace symdyn
