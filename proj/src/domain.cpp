#include "symdyn/domain.hpp"

#include <algorithm>
#include <cmath>

#include "symdyn/error.hpp"

namespace symdyn {

double Domain::normalize(double x) const {
  if (!is_circle()) return x;
  double r = std::fmod(x, length_);
  if (r < 0.0) r += length_;
  if (r >= length_) r = 0.0;
  return r;
}

bool Domain::contains(double x, double tol) const {
  if (!std::isfinite(x)) return false;
  if (is_circle()) return true;
  return x >= -tol && x <= length_ + tol;
}

double Domain::distance(double x, double y) const {
  const double d = std::abs(x - y);
  if (!is_circle()) return d;
  const double r = std::fmod(d, length_);
  return std::min(r, length_ - r);
}

double Domain::signed_difference(double to, double from) const {
  const double d = to - from;
  if (!is_circle()) return d;
  double r = std::remainder(d, length_);
  if (r <= -0.5 * length_) r += length_;
  return r;
}

Arc Domain::arc_between(double a, double b) const {
  if (!is_circle()) {
    if (!(a < b) || a < 0.0 || b > length_) {
      throw Error(ErrorCode::InvalidPartition, "interval piece must satisfy 0 <= a < b <= 1");
    }
    return {a, b - a};
  }
  double len = b - a;
  if (len <= 0.0 || len > length_) len = normalize(b) - normalize(a);
  if (len <= 0.0) len += length_;
  if (!(len > 0.0)) throw Error(ErrorCode::InvalidPartition, "arc has zero length");
  return {normalize(a), std::min(len, length_)};
}

Arc Domain::make_arc(double start, double length) const {
  if (!(length > 0.0) || length > length_ * (1.0 + 1e-15)) {
    throw Error(ErrorCode::InvalidPartition, "arc length must lie in (0, domain length]");
  }
  if (!is_circle() && (start < 0.0 || start + length > length_ * (1.0 + 1e-15))) {
    throw Error(ErrorCode::InvalidPartition, "interval piece leaves [0,1]");
  }
  return {normalize(start), std::min(length, length_)};
}

double Domain::offset(const Arc& arc, double x) const {
  if (!is_circle()) return x - arc.start;
  double d = std::fmod(x - arc.start, length_);
  if (d < 0.0) d += length_;
  const double slack = 0.5 * (length_ - arc.length);
  if (d > arc.length + slack) d -= length_;
  return d;
}

bool Domain::contains(const Arc& arc, double x, double tol) const {
  if (is_circle() && arc.length >= length_) return true;
  const double o = offset(arc, x);
  return o >= -tol && o <= arc.length + tol;
}

bool Domain::contains(const Arc& outer, const Arc& inner, double tol) const {
  const Arc one[] = {outer};
  return covers(one, inner, tol);
}

std::vector<Arc> Domain::intersect(const Arc& a, const Arc& b, double min_length) const {
  std::vector<Arc> out;
  if (!is_circle()) {
    const double lo = std::max(a.start, b.start);
    const double hi = std::min(a.end(), b.end());
    if (hi - lo > min_length) out.push_back({lo, hi - lo});
    return out;
  }
  if (a.length >= length_) {
    if (b.length > min_length) out.push_back({normalize(b.start), b.length});
    return out;
  }
  if (b.length >= length_) {
    if (a.length > min_length) out.push_back({normalize(a.start), a.length});
    return out;
  }
  const double a0 = normalize(a.start);
  const double a1 = a0 + a.length;
  const double bs = normalize(b.start);
  for (int k = -1; k <= 1; ++k) {
    const double b0 = bs + k * length_;
    const double lo = std::max(a0, b0);
    const double hi = std::min(a1, b0 + b.length);
    if (hi - lo > min_length) out.push_back({normalize(lo), hi - lo});
  }
  return out;
}

double Domain::gap(const Arc& a, const Arc& b) const {
  if (!is_circle()) return std::max(0.0, std::max(a.start - b.end(), b.start - a.end()));
  if (a.length >= length_ || b.length >= length_) return 0.0;
  if (contains(a, b.start, 0.0) || contains(a, normalize(b.end()), 0.0) || contains(b, a.start, 0.0)) return 0.0;
  return std::min(distance(a.end(), b.start), distance(b.end(), a.start));
}

bool Domain::covers(std::span<const Arc> pieces, const Arc& target, double tol) const {
  struct Seg {
    double lo, hi;
  };
  std::vector<Seg> segs;
  auto add = [&](double lo, double hi) {
    lo = std::max(lo, 0.0);
    hi = std::min(hi, target.length);
    if (hi > lo) segs.push_back({lo, hi});
  };
  for (const Arc& p : pieces) {
    if (!is_circle()) {
      const double o = p.start - target.start;
      add(o, o + p.length);
      continue;
    }
    double o = std::fmod(p.start - target.start, length_);
    if (o < 0.0) o += length_;
    add(o, o + p.length);
    add(o - length_, o - length_ + p.length);
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& x, const Seg& y) { return x.lo < y.lo; });
  double reach = 0.0;
  for (const Seg& s : segs) {
    if (s.lo > reach + tol) return false;
    reach = std::max(reach, s.hi);
  }
  return reach >= target.length - tol;
}

std::vector<Arc> Domain::merge(std::vector<Arc> arcs, double tol) const {
  for (auto& a : arcs) a.start = normalize(a.start);
  std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  std::vector<Arc> out;
  for (const Arc& a : arcs) {
    if (!out.empty() && a.start <= out.back().end() + tol) {
      out.back().length = std::max(out.back().end(), a.end()) - out.back().start;
    } else {
      out.push_back(a);
    }
  }
  if (is_circle() && out.size() > 1 && out.back().end() >= out.front().start + length_ - tol) {
    Arc& last = out.back();
    last.length = std::max(last.end(), out.front().end() + length_) - last.start;
    out.erase(out.begin());
  }
  for (auto& a : out) a.length = std::min(a.length, length_);
  return out;
}

Arc Domain::hull(std::span<const Arc> arcs) const {
  if (arcs.empty()) throw Error(ErrorCode::BadParams, "hull of no arcs");
  std::vector<Arc> merged = merge(std::vector<Arc>(arcs.begin(), arcs.end()), 0.0);
  if (!is_circle()) {
    return {merged.front().start, merged.back().end() - merged.front().start};
  }
  if (merged.size() == 1) return merged.front();
  // Drop the widest gap between consecutive arcs.
  std::size_t best = 0;
  double widest = -1.0;
  for (std::size_t k = 0; k < merged.size(); ++k) {
    const Arc& cur = merged[k];
    const Arc& nxt = merged[(k + 1) % merged.size()];
    double g = nxt.start - cur.end();
    if (k + 1 == merged.size()) g += length_;
    if (g > widest) {
      widest = g;
      best = k;
    }
  }
  const Arc& first = merged[(best + 1) % merged.size()];
  return {first.start, length_ - widest};
}

}  // namespace symdyn
