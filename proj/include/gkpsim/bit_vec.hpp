#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace gkpsim {

/// Fixed-length GF(2) vector packed 64 bits per word.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

  int size() const { return bits_; }

  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= mask;
    else
      w_[i >> 6] &= ~mask;
  }
  void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  void clear() { std::fill(w_.begin(), w_.end(), std::uint64_t{0}); }

  BitVec& operator^=(const BitVec& o) {
    if (o.bits_ != bits_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  bool operator==(const BitVec& o) const = default;

  bool any() const {
    for (auto word : w_)
      if (word) return true;
    return false;
  }

  int popcount() const {
    int c = 0;
    for (auto word : w_) c += std::popcount(word);
    return c;
  }

  /// Parity of the AND with another vector (symplectic-style pairing).
  bool dot(const BitVec& o) const {
    if (o.bits_ != bits_) throw std::invalid_argument("BitVec size mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1;
  }

  std::vector<int> ones() const {
    std::vector<int> out;
    for (int i = 0; i < bits_; ++i)
      if (get(i)) out.push_back(i);
    return out;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

  /// Index of the lowest set bit, or -1.
  int lowest_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<int>(i) * 64 + std::countr_zero(w_[i]);
    return -1;
  }

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> w_;
};

struct BitVecHash {
  std::size_t operator()(const BitVec& v) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto word : v.words()) {
      h ^= word;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace gkpsim
