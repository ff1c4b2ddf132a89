#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace rklab {

/// Finite binary word w_1 w_2 ... w_k packed into an integer.
///
/// Bit order is fixed once for the whole library: w_1 is the most
/// significant digit, so index(w) = sum_i w_i 2^(k-i). With this convention
/// the word read as a dyadic fraction sum_i w_i 2^-i equals index(w) / 2^k,
/// and the shift (drop w_1) is a mask of the low k-1 bits.
class Word {
 public:
  static constexpr int kMaxLength = 63;

  Word() = default;
  Word(std::uint64_t index, int length);

  /// Parses a string of '0'/'1' characters. Empty string gives the empty word.
  static Word parse(std::string_view bits);

  int size() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  std::uint64_t index() const noexcept { return bits_; }

  /// Symbol at 0-based position i, i.e. w_{i+1}.
  int at(int i) const;

  Word prefix(int n) const;
  Word suffix(int n) const;
  /// sigma^n applied to the word: drops the first n symbols.
  Word drop_front(int n) const;
  Word prepend(int symbol) const;
  Word append(int symbol) const;
  Word concat(const Word& tail) const;

  int count_ones() const noexcept;
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::uint64_t bits_ = 0;
  int length_ = 0;
};

inline Word operator+(const Word& a, const Word& b) { return a.concat(b); }

}  // namespace rklab
