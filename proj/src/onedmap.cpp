#include "symdyn/onedmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

namespace {
constexpr int kMonotoneSamples = 257;
constexpr double kSlopeSlack = 1e-9;
}  // namespace

Branch::Branch(Arc support, Fn value, Fn slope, double min_abs_slope, double max_abs_slope)
    : support_(support),
      value_(std::move(value)),
      slope_(std::move(slope)),
      direction_(Direction::increasing),
      min_abs_slope_(min_abs_slope),
      max_abs_slope_(max_abs_slope) {
  if (!(support_.length > 0.0)) throw Error(ErrorCode::InvalidMap, "branch support must have positive length");
  if (!(min_abs_slope_ > 0.0) || max_abs_slope_ < min_abs_slope_) {
    throw Error(ErrorCode::InvalidMap, "branch slope bounds must satisfy 0 < min <= max");
  }
  const double y0 = value_at_start();
  const double y1 = value_at_end();
  if (y1 == y0) throw Error(ErrorCode::InvalidMap, "branch is constant");
  direction_ = y1 > y0 ? Direction::increasing : Direction::decreasing;
  const double sign = direction_ == Direction::increasing ? 1.0 : -1.0;

  double prev = y0;
  for (int k = 0; k < kMonotoneSamples; ++k) {
    const double u = support_.start + support_.length * k / (kMonotoneSamples - 1);
    const double s = slope_(u);
    if (sign * s < min_abs_slope_ - kSlopeSlack || std::abs(s) > max_abs_slope_ + kSlopeSlack) {
      std::ostringstream os;
      os << "slope " << s << " at u = " << u << " violates the declared bounds";
      throw Error(ErrorCode::InvalidMap, os.str());
    }
    const double v = value_(u);
    if (k > 0 && sign * (v - prev) <= 0.0) throw Error(ErrorCode::InvalidMap, "branch is not strictly monotone");
    prev = v;
  }
}

double Branch::inverse(double y, double u_lo, double u_hi) const {
  const double y_lo = value_(u_lo);
  const double y_hi = value_(u_hi);
  if (y == y_lo) return u_lo;
  if (y == y_hi) return u_hi;
  const bool increasing = direction_ == Direction::increasing;
  double lo = u_lo;
  double hi = u_hi;
  for (int it = 0; it < 200; ++it) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double v = value_(mid);
    if ((v < y) == increasing) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

Partition::Partition(Domain domain, std::vector<Arc> pieces) : domain_(domain), pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw Error(ErrorCode::InvalidPartition, "partition has no pieces");
  for (auto& p : pieces_) p = domain_.make_arc(p.start, p.length);
  const double overlap_tol = 1e-12 * domain_.length();
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    for (std::size_t j = i + 1; j < pieces_.size(); ++j) {
      if (!domain_.intersect(pieces_[i], pieces_[j], overlap_tol).empty()) {
        throw Error(ErrorCode::InvalidPartition,
                    "pieces " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " overlap");
      }
    }
  }
}

std::vector<double> Partition::endpoints() const {
  std::vector<double> pts;
  for (const auto& p : pieces_) {
    pts.push_back(domain_.normalize(p.start));
    pts.push_back(domain_.normalize(p.end()));
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> out;
  const double tol = 1e-12 * domain_.length();
  for (double x : pts) {
    if (out.empty() || x - out.back() > tol) out.push_back(x);
  }
  if (domain_.is_circle() && out.size() > 1 && domain_.distance(out.front(), out.back()) <= tol) out.pop_back();
  return out;
}

std::vector<int> Partition::pieces_containing(double x, double tol) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i)
    if (domain_.contains(pieces_[i], x, tol)) out.push_back(static_cast<int>(i));
  return out;
}

double Partition::total_length() const {
  double s = 0.0;
  for (const auto& p : pieces_) s += p.length;
  return s;
}

PiecewiseMonotoneMap::PiecewiseMonotoneMap(Domain domain, std::vector<Branch> branches, std::string name,
                                           std::function<double(double)> direct)
    : domain_(domain), branches_(std::move(branches)), name_(std::move(name)), direct_(std::move(direct)) {
  if (branches_.empty()) throw Error(ErrorCode::InvalidMap, "map has no branches");
  const double L = domain_.length();
  const double tile_tol = 1e-9 * L;
  const double cont_tol = 1e-12 * std::max(1.0, L);

  std::vector<std::size_t> order(branches_.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return domain_.normalize(branches_[a].support().start) < domain_.normalize(branches_[b].support().start);
  });

  double total = 0.0;
  for (const auto& b : branches_) total += b.support().length;
  if (std::abs(total - L) > tile_tol) throw Error(ErrorCode::InvalidMap, "branch supports do not tile the domain");
  if (!domain_.is_circle()) {
    const auto& first = branches_[order.front()].support();
    const auto& last = branches_[order.back()].support();
    if (std::abs(first.start) > tile_tol || std::abs(last.end() - L) > tile_tol) {
      throw Error(ErrorCode::InvalidMap, "branch supports must start at 0 and end at 1");
    }
  }

  const std::size_t n = order.size();
  const std::size_t seams = domain_.is_circle() ? n : n - 1;
  for (std::size_t k = 0; k < seams; ++k) {
    const Branch& cur = branches_[order[k]];
    const Branch& nxt = branches_[order[(k + 1) % n]];
    if (domain_.distance(cur.support().end(), nxt.support().start) > tile_tol) {
      throw Error(ErrorCode::InvalidMap, "gap or overlap between consecutive branch supports");
    }
    if (domain_.distance(cur.value_at_end(), nxt.value_at_start()) > cont_tol) {
      std::ostringstream os;
      os.precision(17);
      os << "map is discontinuous at " << domain_.normalize(nxt.support().start) << ": " << cur.value_at_end()
         << " vs " << nxt.value_at_start();
      throw Error(ErrorCode::InvalidMap, os.str());
    }
  }
}

std::optional<std::size_t> PiecewiseMonotoneMap::branch_at(double x) const {
  for (std::size_t b = 0; b < branches_.size(); ++b)
    if (domain_.contains(branches_[b].support(), x, 0.0)) return b;
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * domain_.length();
  for (std::size_t b = 0; b < branches_.size(); ++b)
    if (domain_.contains(branches_[b].support(), x, tol)) return b;
  return std::nullopt;
}

double PiecewiseMonotoneMap::lift_coordinate(std::size_t b, double x) const {
  const Arc& s = branches_.at(b).support();
  return s.start + std::clamp(domain_.offset(s, x), 0.0, s.length);
}

double PiecewiseMonotoneMap::evaluate(double x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::OutOfDomain, "point outside the domain");
  if (direct_) return direct_(domain_.normalize(x));
  const auto b = branch_at(x);
  if (!b) throw Error(ErrorCode::OutOfDomain, "no branch contains the point");
  return domain_.normalize(branches_[*b].value(lift_coordinate(*b, x)));
}

std::pair<double, double> PiecewiseMonotoneMap::one_sided_derivatives(double x) const {
  if (!domain_.contains(x)) throw Error(ErrorCode::OutOfDomain, "point outside the domain");
  const double tol = 1e-13 * domain_.length();
  std::optional<double> left, right;
  for (std::size_t b = 0; b < branches_.size(); ++b) {
    const Arc& s = branches_[b].support();
    if (!domain_.contains(s, x, tol)) continue;
    const double o = domain_.offset(s, x);
    const double u = s.start + std::clamp(o, 0.0, s.length);
    const double d = branches_[b].slope(u);
    if (o <= tol) {
      right = d;
    } else if (o >= s.length - tol) {
      left = d;
    } else {
      return {d, d};
    }
  }
  if (!left && !right) throw Error(ErrorCode::OutOfDomain, "no branch contains the point");
  if (!left) left = right;
  if (!right) right = left;
  return {*left, *right};
}

double PiecewiseMonotoneMap::derivative(double x) const {
  const auto [l, r] = one_sided_derivatives(x);
  if (std::abs(l - r) <= 1e-9 * std::max({1.0, std::abs(l), std::abs(r)})) return 0.5 * (l + r);
  throw BreakpointError(l, r);
}

Arc PiecewiseMonotoneMap::branch_image(std::size_t b, const Arc& j) const {
  const Branch& br = branches_.at(b);
  const Arc& s = br.support();
  const double tol = 1e-12 * domain_.length();
  const double o = domain_.offset(s, j.start);
  if (o < -tol || o + j.length > s.length + tol) {
    throw Error(ErrorCode::NotInSupport, "subarc is not inside the branch support");
  }
  const double u0 = s.start + std::clamp(o, 0.0, s.length);
  const double u1 = std::min(u0 + j.length, s.end());
  const double y0 = br.value(u0);
  const double y1 = br.value(u1);
  const double lo = std::min(y0, y1);
  return {domain_.normalize(lo), std::min(std::abs(y1 - y0), domain_.length())};
}

double PiecewiseMonotoneMap::branch_inverse(std::size_t b, double y, double tol) const {
  const Branch& br = branches_.at(b);
  const double ya = br.value_at_start();
  const double yb = br.value_at_end();
  const double ymin = std::min(ya, yb);
  const double ymax = std::max(ya, yb);
  const double slack = std::max(tol, 0.0);
  double target = y;
  if (domain_.is_circle()) {
    const double L = domain_.length();
    target = y + std::ceil((ymin - slack - y) / L) * L;
  }
  if (target < ymin - slack || target > ymax + slack) {
    throw Error(ErrorCode::NotInImage, "value is not in the branch image");
  }
  target = std::clamp(target, ymin, ymax);
  const Arc& s = br.support();
  return domain_.normalize(br.inverse(target, s.start, s.end()));
}

double PiecewiseMonotoneMap::min_abs_slope_on(const Arc& arc) const {
  double best = std::numeric_limits<double>::infinity();
  const double tol = 1e-12 * domain_.length();
  for (const auto& br : branches_)
    if (!domain_.intersect(br.support(), arc, tol).empty()) best = std::min(best, br.min_abs_slope());
  return best;
}

namespace {
// Exact at both ends of [0,1].
double lerp(double a, double b, double t) { return t < 0.5 ? a + (b - a) * t : b - (b - a) * (1.0 - t); }
}  // namespace

PiecewiseMonotoneMap make_piecewise_linear(Domain domain, const std::vector<double>& breakpoints,
                                           const std::vector<double>& values, std::string name) {
  const double L = domain.length();
  if (breakpoints.size() < 2 || breakpoints.size() != values.size()) {
    throw Error(ErrorCode::InvalidMap, "need at least two breakpoints and one value per breakpoint");
  }
  if (std::abs(breakpoints.front()) > 1e-12 || std::abs(breakpoints.back() - L) > 1e-12 * L) {
    throw Error(ErrorCode::InvalidMap, "breakpoints must run from 0 to the domain length");
  }
  std::vector<double> xs = breakpoints;
  xs.front() = 0.0;
  xs.back() = L;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    if (!(xs[k + 1] > xs[k])) throw Error(ErrorCode::InvalidMap, "breakpoints must be strictly increasing");
    if (values[k + 1] == values[k]) throw Error(ErrorCode::InvalidMap, "constant lap between breakpoints");
  }
  if (domain.is_circle()) {
    const double turns = (values.back() - values.front()) / L;
    if (std::abs(turns - std::round(turns)) > 1e-9) {
      throw Error(ErrorCode::InvalidMap, "circle map lift must close up: last - first value must be a multiple of 2pi");
    }
  } else {
    for (double v : values)
      if (v < 0.0 || v > L) throw Error(ErrorCode::InvalidMap, "interval map values must lie in [0,1]");
  }

  std::vector<Branch> branches;
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double x0 = xs[k], x1 = xs[k + 1];
    const double y0 = values[k], y1 = values[k + 1];
    const double slope = (y1 - y0) / (x1 - x0);
    branches.emplace_back(
        Arc{x0, x1 - x0}, [=](double u) { return lerp(y0, y1, std::clamp((u - x0) / (x1 - x0), 0.0, 1.0)); },
        [=](double) { return slope; }, std::abs(slope), std::abs(slope));
  }
  return PiecewiseMonotoneMap(domain, std::move(branches), std::move(name));
}

}  // namespace symdyn
