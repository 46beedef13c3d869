#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace conlat {

// Runtime-sized bitset over element indices.
class IndexMask {
 public:
  IndexMask() = default;
  explicit IndexMask(int bits) : bits_(bits), words_((bits + 63) / 64, 0) {}

  int capacity() const { return bits_; }

  bool test(int i) const {
    return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1u;
  }

  void set(int i) {
    words_[static_cast<std::size_t>(i) >> 6] |= std::uint64_t{1} << (i & 63);
  }

  bool subset_of(const IndexMask& o) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w] & ~o.words_[w]) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  friend IndexMask mask_and(const IndexMask& a, const IndexMask& b) {
    IndexMask r(a.bits_);
    for (std::size_t w = 0; w < r.words_.size(); ++w)
      r.words_[w] = a.words_[w] & b.words_[w];
    return r;
  }

  // Calls fn(i) for every set bit, in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = std::countr_zero(bits);
        fn(static_cast<int>(w * 64) + b);
        bits &= bits - 1;
      }
    }
  }

  bool operator==(const IndexMask&) const = default;

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace conlat
