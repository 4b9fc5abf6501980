#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "tripidx/corpus.hpp"

namespace tripidx {

struct network_stop {
  uint32_t id = 0;
  std::string label;
};

struct network_line {
  uint32_t id = 0;
  std::vector<uint32_t> stops;
  // Service window in minutes of day, [begin, end); 0/0 means whole day.
  uint32_t window_begin = 0;
  uint32_t window_end = 0;
};

struct network_description {
  std::vector<network_stop> stops;
  std::vector<network_line> lines;
};

// Text network format, one directive per line:
//   stop <id> <label...>
//   line <id> <stop ids...>
//   window <line id> <begin minute> <end minute>
// Stops must be declared before the lines that reference them. Blank lines
// and `#` comments are skipped. Throws parse_error naming the line.
network_description parse_network(std::istream& in);

/// Trip length model: lengths are min_stops plus a binomial draw over
/// (max_stops - min_stops) trials whose success rate hits the given mean.
struct length_params {
  uint32_t min_stops = 2;
  uint32_t max_stops = 31;
  double mean_stops = 11.81;
};

// Draws trips as contiguous segments of the declared lines. Start minutes
// fall inside the line's service window, hop times are 1..5 minutes, and
// every timestamp is discretized under the grid. The same seed always
// produces the same corpus, byte for byte.
trip_corpus generate_synthetic(const network_description& network,
                               uint64_t trip_count, uint64_t seed,
                               const time_grid& grid = {},
                               const length_params& lengths = {});

}  // namespace tripidx
