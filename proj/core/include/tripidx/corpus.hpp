#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

#include "tripidx/time_grid.hpp"

namespace tripidx {

// One recorded journey: the stops it traverses, in order, and the
// discretized time code at which each stop is reached. stops and times
// always have the same length (>= 2) and times never decrease.
struct trip {
  std::vector<uint32_t> stops;
  std::vector<uint32_t> times;
  /// 1-based position in the ingested file; the final sorting tie-break.
  uint64_t input_ordinal = 0;
};

struct trip_corpus {
  std::vector<trip> trips;
  /// Largest stop id in use; stop ids are 1-based, 0 is reserved.
  uint32_t stop_count = 0;
  time_grid grid;
};

/// Canonical trip order: first stop, last stop, start time, then the
/// remaining stops in sequence, with the input ordinal as final tie-break.
bool trip_order_less(const trip& a, const trip& b);

/// Returns the corpus reordered canonically; a trip's rank is its 1-based
/// position in the result. Deterministic for any input permutation.
trip_corpus sort_trips(trip_corpus corpus);

// Text corpus format: one trip per line as whitespace-separated
// `stop:timecode` tokens; blank lines and lines starting with `#` are
// skipped. Throws parse_error naming the offending line.
trip_corpus parse_corpus(std::istream& in, const time_grid& grid = {});

void write_corpus(const trip_corpus& corpus, std::ostream& out);

/// Structural checks shared by index builders; throws build_error.
void validate_corpus(const trip_corpus& corpus);

}  // namespace tripidx
