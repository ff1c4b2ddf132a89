#pragma once

#include <cstdint>
#include <string>

#include "rklab/word.hpp"

namespace rklab {

/// Eventually periodic point x = prefix . period . period . ... of the full
/// 2-shift. Always held in canonical form: the period is primitive and the
/// prefix is as short as possible, so two TailPoints denote the same
/// sequence iff they compare equal.
class TailPoint {
 public:
  TailPoint(Word prefix, Word period);
  static TailPoint parse(const std::string& prefix, const std::string& period);
  /// The constant sequence symbol^inf.
  static TailPoint constant(int symbol);

  const Word& prefix() const noexcept { return prefix_; }
  const Word& period() const noexcept { return period_; }

  /// x_{i+1} for 0-based position i.
  int symbol(std::uint64_t i) const;
  /// x|_k, the first k symbols.
  Word truncate(int k) const;
  /// sigma^n(x).
  TailPoint shift(std::uint64_t n = 1) const;

  std::string str() const;

  friend bool operator==(const TailPoint&, const TailPoint&) = default;

 private:
  Word prefix_;
  Word period_;
};

}  // namespace rklab
