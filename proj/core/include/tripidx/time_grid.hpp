#pragma once

#include <chrono>
#include <cstdint>
#include <functional>

namespace tripidx {

// Discretization of timestamps into compact codes.
//
// A code is day_type * slots_per_day + slot, where the slot is the
// minute-of-day divided by the slot width. With the defaults (5-minute
// slots, 8 day types, 1440-minute days) the code space has 8 * 288 = 2304
// values. Codes index the time alphabet of the wavelet matrix, so queries
// and corpora built under different grids are not interchangeable.
struct time_grid {
  uint32_t slot_minutes = 5;
  uint32_t day_type_count = 8;
  uint32_t day_minutes = 1440;

  uint32_t slots_per_day() const {
    return (day_minutes + slot_minutes - 1) / slot_minutes;
  }
  /// Size of the time alphabet.
  uint32_t sigma() const { return day_type_count * slots_per_day(); }

  /// Throws config_error when any field is zero or sizes overflow.
  void validate() const;

  bool operator==(const time_grid&) const = default;
};

/// Code for a minute of a given day type; throws config_error for a day
/// type outside the grid and usage_error for a minute outside the day.
uint32_t discretize(const time_grid& grid, uint32_t day_type,
                    uint32_t minute_of_day);

/// Maps a calendar date to its day-type bucket.
using day_classifier = std::function<uint32_t(const std::chrono::year_month_day&)>;

/// Discretize a calendar timestamp through an injected classifier.
uint32_t discretize(const time_grid& grid, const day_classifier& classify,
                    const std::chrono::year_month_day& date,
                    uint32_t minute_of_day);

/// Default bucket scheme: Mon-Thu 0, Fri 1, Sat 2, Sun 3, plus 4 during the
/// high season (July and August).
uint32_t default_day_classifier(const std::chrono::year_month_day& date);

}  // namespace tripidx
