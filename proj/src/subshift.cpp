#include "symdyn/subshift.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "symdyn/error.hpp"

namespace symdyn {

SymbolSequence::SymbolSequence(SymbolWord preperiod, SymbolWord period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw Error(ErrorCode::InvalidSequence, "period must be nonempty");
  for (int s : pre_)
    if (s < 1) throw Error(ErrorCode::InvalidSequence, "symbols are 1-based");
  for (int s : per_)
    if (s < 1) throw Error(ErrorCode::InvalidSequence, "symbols are 1-based");
  canonicalize();
}

void SymbolSequence::canonicalize() {
  // Primitive root of the period.
  const std::size_t n = per_.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool repeats = true;
    for (std::size_t k = d; k < n && repeats; ++k) repeats = per_[k] == per_[k - d];
    if (repeats) {
      per_.resize(d);
      break;
    }
  }
  // Absorb the tail of the preperiod into the period.
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

int SymbolSequence::at(std::size_t n) const {
  if (n < pre_.size()) return pre_[n];
  return per_[(n - pre_.size()) % per_.size()];
}

SymbolWord SymbolSequence::prefix(std::size_t n) const {
  SymbolWord w(n);
  for (std::size_t k = 0; k < n; ++k) w[k] = at(k);
  return w;
}

int SymbolSequence::max_symbol() const {
  int m = *std::max_element(per_.begin(), per_.end());
  for (int s : pre_) m = std::max(m, s);
  return m;
}

namespace {
void check_range(const TransitionMatrix& a, int s) {
  if (s < 1 || s > static_cast<int>(a.size())) {
    throw Error(ErrorCode::SymbolOutOfRange,
                "symbol " + std::to_string(s) + " outside 1.." + std::to_string(a.size()));
  }
}
}  // namespace

bool is_admissible(const TransitionMatrix& a, std::span<const int> word) {
  for (int s : word) check_range(a, s);
  for (std::size_t k = 0; k + 1 < word.size(); ++k)
    if (!a(word[k] - 1, word[k + 1] - 1)) return false;
  return true;
}

bool is_admissible(const TransitionMatrix& a, const SymbolSequence& s) {
  SymbolWord w = s.preperiod();
  w.insert(w.end(), s.period().begin(), s.period().end());
  w.push_back(s.period().front());
  return is_admissible(a, w);
}

BigInt count_words(const TransitionMatrix& a, int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "word length must be >= 1");
  if (n == 1) return BigInt(a.size());
  return power_norm(a, n - 1);
}

double subshift_entropy(const TransitionMatrix& a, double tol) { return std::log(spectral_radius(a, tol).lambda); }

SymbolSequence shift(const SymbolSequence& s) {
  if (!s.preperiod().empty()) {
    return {SymbolWord(s.preperiod().begin() + 1, s.preperiod().end()), s.period()};
  }
  SymbolWord per = s.period();
  std::rotate(per.begin(), per.begin() + 1, per.end());
  return SymbolSequence::periodic(std::move(per));
}

SymbolSequence shift(const SymbolSequence& s, std::size_t times) {
  const std::size_t pre = s.preperiod().size();
  if (times <= pre) {
    return {SymbolWord(s.preperiod().begin() + static_cast<long>(times), s.preperiod().end()), s.period()};
  }
  SymbolWord per = s.period();
  const std::size_t r = (times - pre) % per.size();
  std::rotate(per.begin(), per.begin() + static_cast<long>(r), per.end());
  return SymbolSequence::periodic(std::move(per));
}

long first_disagreement(const SymbolSequence& a, const SymbolSequence& b) {
  // Past both preperiods, agreement over one common period means agreement forever.
  const std::size_t horizon = std::max(a.preperiod().size(), b.preperiod().size()) +
                              std::lcm(a.period().size(), b.period().size());
  for (std::size_t k = 0; k < horizon; ++k)
    if (a.at(k) != b.at(k)) return static_cast<long>(k);
  return -1;
}

double sequence_metric(const SymbolSequence& a, const SymbolSequence& b) {
  const long k = first_disagreement(a, b);
  return k < 0 ? 0.0 : std::ldexp(1.0, -static_cast<int>(k));
}

std::string to_string(std::span<const int> word) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < word.size(); ++k) os << (k ? "," : "") << word[k];
  os << ')';
  return os.str();
}

std::string to_string(const SymbolSequence& s) {
  return "pre " + to_string(s.preperiod()) + " per " + to_string(s.period());
}

}  // namespace symdyn
