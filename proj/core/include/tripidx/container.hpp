#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "tripidx/trip_index.hpp"

namespace tripidx {

// Index container, a single binary stream:
//   magic "TCTR1", version u16, endianness u8 (1 = little), reserved u8,
//   grid (3 x u32), then the stop index and the time index as
//   length-prefixed sections. Multi-byte fields are little-endian.

void save_index(const trip_index& index, std::ostream& out);
trip_index load_index(std::istream& in);

void save_index_file(const trip_index& index, const std::string& path);
trip_index load_index_file(const std::string& path);

/// Sizes of the serialized structures next to a plain-array baseline
/// (every stop occurrence stored in the fewest whole bits that fit the
/// largest stop id).
struct space_report {
  uint64_t plain_baseline_bytes = 0;
  uint64_t stops_index_bytes = 0;
  uint64_t time_index_bytes = 0;
  double stops_ratio_percent() const {
    return plain_baseline_bytes == 0
               ? 0.0
               : 100.0 * static_cast<double>(stops_index_bytes) /
                     static_cast<double>(plain_baseline_bytes);
  }
};

space_report measure(const trip_index& index);

}  // namespace tripidx
