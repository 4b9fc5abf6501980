#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace tripidx {

/// Append-only helper for assembling a bit sequence word by word.
class bit_builder {
 public:
  void push_back(bool bit) {
    if (n_ % 64 == 0) words_.push_back(0);
    if (bit) words_.back() |= uint64_t(1) << (n_ % 64);
    ++n_;
  }
  uint64_t size() const { return n_; }
  std::vector<uint64_t> take_words() && { return std::move(words_); }

 private:
  std::vector<uint64_t> words_;
  uint64_t n_ = 0;
};

// Plain bit sequence with constant-time rank and near-constant select.
//
// Positions are 1-based. rank1(i) counts set bits in [1, i]; rank1(0) == 0.
// select1(j) returns the position of the j-th set bit (1-based ordinal).
//
// The rank directory interleaves, per 512-bit superblock, one absolute
// 64-bit count with seven 9-bit in-superblock prefix counts packed into a
// second word: 128 directory bits per 512 payload bits (25% overhead).
// Select binary-searches superblock counts between hints sampled at every
// 8192-th set (and unset) bit.
class bitvector {
 public:
  bitvector() = default;
  bitvector(std::vector<uint64_t> words, uint64_t n_bits);
  explicit bitvector(bit_builder&& builder);
  static bitvector from_bits(const std::vector<bool>& bits);

  uint64_t size() const { return n_; }
  uint64_t ones() const { return ones_; }
  uint64_t zeros() const { return n_ - ones_; }

  /// Bit at 1-based position i.
  bool bit(uint64_t i) const;
  /// Number of set bits in positions [1, i]; i may be 0..size().
  uint64_t rank1(uint64_t i) const;
  uint64_t rank0(uint64_t i) const;
  /// Position of the j-th set bit; throws not_found_error when j > ones().
  uint64_t select1(uint64_t j) const;
  uint64_t select0(uint64_t j) const;

  void save(std::ostream& out) const;
  static bitvector load(std::istream& in);
  uint64_t serialized_bytes() const;

 private:
  void build_directories();
  uint64_t word(uint64_t idx) const {
    return idx < words_.size() ? words_[idx] : 0;
  }
  // In-superblock prefix count of set bits before word b (b in [0, 8)).
  uint64_t rel1(uint64_t super, uint64_t b) const {
    return b == 0 ? 0 : (counts_[2 * super + 1] >> (9 * (b - 1))) & 0x1ff;
  }

  std::vector<uint64_t> words_;
  std::vector<uint64_t> counts_;  // interleaved (absolute, packed relative)
  std::vector<uint64_t> hints1_;  // superblock of every 8192-th set bit
  std::vector<uint64_t> hints0_;  // superblock of every 8192-th unset bit
  uint64_t n_ = 0;
  uint64_t ones_ = 0;
};

}  // namespace tripidx
