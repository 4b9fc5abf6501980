#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <utility>
#include <vector>

#include "tripidx/bitvector.hpp"

namespace tripidx {

// Balanced wavelet matrix over a sequence of codes in [0, sigma).
//
// Stores one bitmap per bit of the code width (most significant first);
// each level stably partitions the previous one, zeros before ones.
// Supports point access, per-code rank/select, and counting/reporting
// the points of the grid (position, code) inside an axis-aligned box.
// Positions are 1-based.
class wavelet_matrix {
 public:
  wavelet_matrix() = default;

  static wavelet_matrix build(const std::vector<uint32_t>& codes,
                              uint32_t sigma);

  uint64_t size() const { return n_; }
  uint32_t sigma() const { return sigma_; }
  uint32_t levels() const { return levels_; }

  /// Code at position i.
  uint32_t access(uint64_t i) const;
  /// Occurrences of code in positions [1, i]; i may be 0.
  uint64_t rank(uint32_t code, uint64_t i) const;
  /// Position of the j-th occurrence of code (not_found_error past the last).
  uint64_t select(uint32_t code, uint64_t j) const;

  /// Points with position in [x1, x2] and code in [y1, y2].
  uint64_t count(uint64_t x1, uint64_t x2, uint32_t y1, uint32_t y2) const;
  /// Same box, but materialized as (position, code) pairs in code order,
  /// positions ascending within a code.
  std::vector<std::pair<uint64_t, uint32_t>> report(uint64_t x1, uint64_t x2,
                                                    uint32_t y1,
                                                    uint32_t y2) const;

  void save(std::ostream& out) const;
  static wavelet_matrix load(std::istream& in);
  uint64_t serialized_bytes() const;

 private:
  void check_box(uint64_t x1, uint64_t x2, uint32_t y1, uint32_t y2) const;

  uint64_t n_ = 0;
  uint32_t sigma_ = 0;
  uint32_t levels_ = 0;
  std::vector<bitvector> rows_;  // one per level, MSB first
  std::vector<uint64_t> zeros_;  // zeros per row
};

}  // namespace tripidx
