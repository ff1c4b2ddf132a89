#include "rklab/word.hpp"

#include <bit>
#include <stdexcept>

namespace rklab {

namespace {

std::uint64_t low_mask(int n) {
  return n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
}

void check_length(int length) {
  if (length < 0 || length > Word::kMaxLength) {
    throw std::out_of_range("word length " + std::to_string(length) +
                            " outside [0, " + std::to_string(Word::kMaxLength) + "]");
  }
}

}  // namespace

Word::Word(std::uint64_t index, int length) : bits_(index), length_(length) {
  check_length(length);
  if ((index & ~low_mask(length)) != 0) {
    throw std::out_of_range("word index does not fit in the given length");
  }
}

Word Word::parse(std::string_view bits) {
  check_length(static_cast<int>(bits.size()));
  std::uint64_t v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("word must consist of '0' and '1', got '" +
                                  std::string(bits) + "'");
    }
    v = (v << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return Word(v, static_cast<int>(bits.size()));
}

int Word::at(int i) const {
  if (i < 0 || i >= length_) throw std::out_of_range("word position out of range");
  return static_cast<int>((bits_ >> (length_ - 1 - i)) & 1u);
}

Word Word::prefix(int n) const {
  if (n < 0 || n > length_) throw std::out_of_range("prefix longer than word");
  return Word(bits_ >> (length_ - n), n);
}

Word Word::suffix(int n) const {
  if (n < 0 || n > length_) throw std::out_of_range("suffix longer than word");
  return Word(bits_ & low_mask(n), n);
}

Word Word::drop_front(int n) const { return suffix(length_ - n); }

Word Word::prepend(int symbol) const {
  check_length(length_ + 1);
  return Word((static_cast<std::uint64_t>(symbol & 1) << length_) | bits_, length_ + 1);
}

Word Word::append(int symbol) const {
  check_length(length_ + 1);
  return Word((bits_ << 1) | static_cast<std::uint64_t>(symbol & 1), length_ + 1);
}

Word Word::concat(const Word& tail) const {
  check_length(length_ + tail.length_);
  return Word((bits_ << tail.length_) | tail.bits_, length_ + tail.length_);
}

int Word::count_ones() const noexcept { return std::popcount(bits_); }

std::string Word::str() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i) {
    if ((bits_ >> (length_ - 1 - i)) & 1u) s[static_cast<std::size_t>(i)] = '1';
  }
  return s;
}

}  // namespace rklab
