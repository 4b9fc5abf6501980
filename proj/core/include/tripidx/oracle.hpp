#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tripidx/corpus.hpp"
#include "tripidx/trip_index.hpp"

namespace tripidx::oracle {

// Reference implementations that answer every query by explicit
// enumeration over the raw corpus. Nothing here shares code with the
// index structures; tests compare the two sides.

// Suffix structures computed the slow way: each suffix is materialized
// as an explicit key (symbols up to and including its first separator,
// then the trip rank; the global terminator is [0, 0]) and the keys are
// sorted. Positions are 1-based to match the index.
struct suffix_structures {
  uint64_t n = 0;
  std::vector<uint32_t> sequence;       // [1..n]; 0 = separator/terminator
  std::vector<uint64_t> order;          // [1..n]; rank -> sequence position
  std::vector<uint64_t> successor;      // [1..n]; psi over ranks
  std::vector<uint32_t> aligned_codes;  // [1..n]; time code per rank
  std::vector<uint32_t> vocab;          // distinct symbols, ascending
  std::vector<uint64_t> section_starts; // [i] = first rank of vocab[i]'s run
};

/// corpus must already be in canonical order (see sort_trips).
suffix_structures build_suffix_structures(const trip_corpus& corpus);

uint64_t starts_at(const trip_corpus& corpus, uint32_t stop);
uint64_t ends_at(const trip_corpus& corpus, uint32_t stop);
uint64_t start_end(const trip_corpus& corpus, uint32_t first_stop,
                   uint32_t last_stop);
uint64_t uses(const trip_corpus& corpus, uint32_t stop);
std::vector<std::pair<uint32_t, uint64_t>> top_stops(const trip_corpus& corpus,
                                                     uint64_t k);

uint64_t starts_between(const trip_corpus& corpus, uint32_t stop,
                        time_interval t);
uint64_t ends_between(const trip_corpus& corpus, uint32_t stop,
                      time_interval t);
uint64_t uses_between(const trip_corpus& corpus, uint32_t stop,
                      time_interval t);
uint64_t start_end_between(const trip_corpus& corpus, uint32_t first_stop,
                           uint32_t last_stop, time_interval t, semantics sem);

/// Points of the (position, code) grid inside the box, by linear scan.
uint64_t grid_count(const std::vector<uint32_t>& codes, uint64_t x1,
                    uint64_t x2, uint32_t y1, uint32_t y2);
std::vector<std::pair<uint64_t, uint32_t>> grid_report(
    const std::vector<uint32_t>& codes, uint64_t x1, uint64_t x2, uint32_t y1,
    uint32_t y2);

}  // namespace tripidx::oracle
