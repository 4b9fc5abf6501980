#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tripidx/corpus.hpp"
#include "tripidx/tcsa.hpp"
#include "tripidx/time_grid.hpp"
#include "tripidx/wavelet_matrix.hpp"

namespace tripidx {

/// Inclusive interval of discretized time codes.
struct time_interval {
  uint32_t lo = 0;
  uint32_t hi = 0;
};

/// How a time window constrains a trip: strong keeps trips that run
/// entirely inside it, weak keeps trips that merely overlap it.
enum class semantics { strong, weak };

// Counting engine over one corpus: the stop self-index answers the
// spatial part, a wavelet matrix over the suffix-aligned time codes
// answers the temporal part of each query.
class trip_index {
 public:
  trip_index() = default;

  static trip_index build(const trip_corpus& corpus, uint32_t sample_rate);
  /// Reassemble from deserialized parts; validates they belong together.
  static trip_index from_parts(tcsa stops, wavelet_matrix times,
                               time_grid grid);

  const tcsa& stops() const { return stops_; }
  const wavelet_matrix& times() const { return times_; }
  const time_grid& grid() const { return grid_; }
  uint64_t trip_count() const { return stops_.trip_count(); }
  uint32_t stop_count() const { return stops_.stop_count(); }

  // spatial counts
  uint64_t starts_at(uint32_t stop) const;
  uint64_t ends_at(uint32_t stop) const;
  uint64_t start_end(uint32_t first_stop, uint32_t last_stop) const;
  uint64_t uses(uint32_t stop) const;

  // spatio-temporal counts; intervals are inclusive in code space
  uint64_t starts_between(uint32_t stop, time_interval t) const;
  uint64_t ends_between(uint32_t stop, time_interval t) const;
  uint64_t uses_between(uint32_t stop, time_interval t) const;
  uint64_t start_end_between(uint32_t first_stop, uint32_t last_stop,
                             time_interval t, semantics sem) const;

 private:
  void check_interval(time_interval t) const;

  tcsa stops_;
  wavelet_matrix times_;
  time_grid grid_;
};

}  // namespace tripidx
