#include "rklab/tail_point.hpp"

#include <stdexcept>

namespace rklab {

namespace {

// Rotation by one to the right: last symbol moves to the front.
Word rotate_right(const Word& w) {
  const int n = w.size();
  return w.suffix(1).concat(w.prefix(n - 1));
}

Word rotate_left(const Word& w, int r) {
  const int n = w.size();
  r %= n;
  if (r == 0) return w;
  return w.drop_front(r).concat(w.prefix(r));
}

Word primitive_root(const Word& w) {
  const int n = w.size();
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const Word root = w.prefix(d);
    Word rebuilt = root;
    while (rebuilt.size() < n) rebuilt = rebuilt.concat(root);
    if (rebuilt == w) return root;
  }
  return w;
}

}  // namespace

TailPoint::TailPoint(Word prefix, Word period) : prefix_(prefix), period_(period) {
  if (period_.empty()) throw std::invalid_argument("tail point period must be nonempty");
  period_ = primitive_root(period_);
  // absorb trailing prefix symbols into the period: u a (v a)^inf = u (a v)^inf
  const int p = period_.size();
  while (!prefix_.empty() &&
         prefix_.at(prefix_.size() - 1) == period_.at(p - 1)) {
    prefix_ = prefix_.prefix(prefix_.size() - 1);
    period_ = rotate_right(period_);
  }
}

TailPoint TailPoint::parse(const std::string& prefix, const std::string& period) {
  return TailPoint(Word::parse(prefix), Word::parse(period));
}

TailPoint TailPoint::constant(int symbol) { return TailPoint(Word(), Word(symbol & 1, 1)); }

int TailPoint::symbol(std::uint64_t i) const {
  const auto pre = static_cast<std::uint64_t>(prefix_.size());
  if (i < pre) return prefix_.at(static_cast<int>(i));
  return period_.at(static_cast<int>((i - pre) % static_cast<std::uint64_t>(period_.size())));
}

Word TailPoint::truncate(int k) const {
  if (k < 0 || k > Word::kMaxLength) throw std::out_of_range("truncation length out of range");
  std::uint64_t bits = 0;
  for (int i = 0; i < k; ++i) {
    bits = (bits << 1) | static_cast<std::uint64_t>(symbol(static_cast<std::uint64_t>(i)));
  }
  return Word(bits, k);
}

TailPoint TailPoint::shift(std::uint64_t n) const {
  const auto pre = static_cast<std::uint64_t>(prefix_.size());
  if (n <= pre) return TailPoint(prefix_.drop_front(static_cast<int>(n)), period_);
  const auto r = (n - pre) % static_cast<std::uint64_t>(period_.size());
  return TailPoint(Word(), rotate_left(period_, static_cast<int>(r)));
}

std::string TailPoint::str() const { return prefix_.str() + "(" + period_.str() + ")^inf"; }

}  // namespace rklab
