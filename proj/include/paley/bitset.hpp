#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace paley {

// Fixed-width dynamic bitset tuned for the set intersections of the
// extremal searches. All operands of a binary op share one width.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  std::size_t size() const noexcept { return bits_; }

  void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }

  std::size_t count() const noexcept {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  bool none() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  // |this & other| without materializing the intersection.
  std::size_t and_count(const Bitset& other) const noexcept {
    std::size_t c = 0;
    for (std::size_t k = 0; k < words_.size(); ++k) {
      c += static_cast<std::size_t>(std::popcount(words_[k] & other.words_[k]));
    }
    return c;
  }

  Bitset operator&(const Bitset& other) const {
    Bitset out(bits_);
    for (std::size_t k = 0; k < words_.size(); ++k) out.words_[k] = words_[k] & other.words_[k];
    return out;
  }

  // this &= ~other
  Bitset& subtract(const Bitset& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~other.words_[k];
    return *this;
  }

  Bitset& operator&=(const Bitset& other) noexcept {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= other.words_[k];
    return *this;
  }

  // Index of the first set bit at or after `from`, or size() if none.
  std::size_t next(std::size_t from) const noexcept {
    if (from >= bits_) return bits_;
    std::size_t k = from >> 6;
    std::uint64_t w = words_[k] & (~std::uint64_t{0} << (from & 63));
    while (true) {
      if (w != 0) return (k << 6) + static_cast<std::size_t>(std::countr_zero(w));
      if (++k == words_.size()) return bits_;
      w = words_[k];
    }
  }

  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w != 0) {
        fn((k << 6) + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> indices() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

  bool operator==(const Bitset&) const = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace paley
