#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace tripidx {

// Compressed form of the successor permutation.
//
// The permutation is mostly made of long stretches where consecutive values
// differ by exactly +1, so the encoding stores, per block of `sample_rate`
// entries, one absolute sample plus a byte stream of deltas: runs of +1 are
// collapsed into a single run token (0x00 followed by the run length) and
// every other delta is written as a zigzag varbyte. Random access decodes at
// most one block.
class psi_codec {
 public:
  psi_codec() = default;

  /// values[i] is the (i+1)-th permutation entry, each in [1, values.size()].
  static psi_codec encode(const std::vector<uint32_t>& values,
                          uint32_t sample_rate);

  uint64_t size() const { return n_; }
  uint32_t sample_rate() const { return sample_rate_; }

  /// Decode entry i (1-based) from the nearest preceding sample.
  uint32_t value_at(uint64_t i) const;

  struct run_stats {
    uint64_t total_deltas = 0;
    uint64_t run_encoded = 0;  // deltas covered by +1 run tokens
    uint64_t stream_bytes = 0;
    double run_fraction() const {
      return total_deltas == 0 ? 0.0
                               : static_cast<double>(run_encoded) / total_deltas;
    }
  };
  run_stats stats() const;

  void save(std::ostream& out) const;
  static psi_codec load(std::istream& in);
  uint64_t serialized_bytes() const;

 private:
  uint64_t n_ = 0;
  uint32_t sample_rate_ = 0;
  std::vector<uint32_t> sample_values_;
  std::vector<uint32_t> sample_offsets_;  // byte offset of each block's deltas
  std::vector<uint8_t> stream_;
};

}  // namespace tripidx
