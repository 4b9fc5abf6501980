#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "tripidx/bitvector.hpp"
#include "tripidx/corpus.hpp"
#include "tripidx/psi_codec.hpp"

namespace tripidx {

// Self-index over the concatenated trips of a corpus.
//
// The indexed sequence S lists every trip in canonical order, each followed
// by a separator (symbol 0), plus one trailing global terminator, so
// |S| = total stops + trips + 1. Suffixes are ordered cyclically within
// their trip: the successor of a trip's separator is the trip's first stop,
// and when two suffixes reach their separators at the same offset the tie
// breaks by trip rank (the global terminator ranks before every trip).
// Under this order the separator section sorts trips by (first stop, last
// stop, start time, ...), which makes every (first, last) pair a contiguous
// run whose start times increase.
//
// Stored state: the successor permutation (compressed), the section bitmap
// marking where runs of equal first symbols begin, and the vocabulary of
// distinct symbols. Positions are 1-based everywhere.
class tcsa {
 public:
  struct range {
    uint64_t lo = 1;
    uint64_t hi = 0;
    bool empty() const { return lo > hi; }
    uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
    bool operator==(const range&) const = default;
  };

  tcsa() = default;

  /// Build from a corpus already in canonical order (see sort_trips).
  /// When aligned_time_codes is given it receives, per suffix-array
  /// position, the time code of the occurrence at that position (trip
  /// start codes at separator positions, 0 at the global terminator).
  static tcsa build(const trip_corpus& sorted_corpus, uint32_t sample_rate,
                    std::vector<uint32_t>* aligned_time_codes = nullptr);

  uint64_t size() const { return n_; }
  uint32_t stop_count() const { return stop_count_; }
  uint64_t trip_count() const { return trip_count_; }
  uint32_t sample_rate() const { return psi_.sample_rate(); }

  /// Successor permutation entry at position i.
  uint64_t psi(uint64_t i) const;
  /// First symbol of the suffix at position i (0 = separator).
  uint32_t symbol_at(uint64_t i) const;

  // Maximal run of suffix-array positions whose suffixes start with the
  // pattern. Supported shapes: stops only; separator-anchored prefixes
  // `[0]` and `[0, X]`; trip-final `[X, 0]`; and `[Y, 0, X]` for trips
  // ending at Y whose first stop is X. Other shapes are not contiguous
  // under this suffix order and raise usage_error.
  range pattern_range(std::span<const uint32_t> pattern) const;

  /// Trips whose first stop is X.
  range starts_range(uint32_t stop) const;
  /// Trips whose last stop is X.
  range ends_range(uint32_t stop) const;
  /// {last-stop range, separator-section range} for trips X ... Y; the
  /// second range is the image of the first under psi, in trip-rank order
  /// with non-decreasing start codes.
  std::pair<range, range> start_end_ranges(uint32_t first_stop,
                                           uint32_t last_stop) const;
  /// Occurrences of the stop anywhere in any trip (revisits count).
  uint64_t uses(uint32_t stop) const;
  /// Suffix-array section holding every occurrence of the stop.
  range section_range(uint32_t stop) const;

  /// The k most frequently used stops, by occurrence count descending,
  /// ties toward the smaller stop id. Only stops that occur are ranked.
  std::vector<std::pair<uint32_t, uint64_t>> topk_sequential(uint64_t k) const;

  struct split_record {
    range parent, left, right;
  };
  /// Same result as topk_sequential, computed by best-first binary
  /// partitioning of the vocabulary; splits are logged when asked.
  std::vector<std::pair<uint32_t, uint64_t>> topk_binary(
      uint64_t k, std::vector<split_record>* splits = nullptr) const;

  const bitvector& section_bitmap() const { return section_bits_; }
  std::span<const uint32_t> vocabulary() const { return vocab_; }
  psi_codec::run_stats psi_stats() const { return psi_.stats(); }

  void save(std::ostream& out) const;
  static tcsa load(std::istream& in);
  uint64_t serialized_bytes() const;

 private:
  range symbol_section(uint32_t symbol) const;
  void validate_pattern(std::span<const uint32_t> pattern) const;

  uint64_t n_ = 0;
  uint32_t stop_count_ = 0;
  uint64_t trip_count_ = 0;
  std::vector<uint32_t> vocab_;  // ascending; vocab_[0] == 0 (separator)
  bitvector section_bits_;
  psi_codec psi_;
};

}  // namespace tripidx
