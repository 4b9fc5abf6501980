#include "tripidx/trip_index.hpp"

#include <string>

#include "tripidx/errors.hpp"

namespace tripidx {

trip_index trip_index::build(const trip_corpus& corpus, uint32_t sample_rate) {
  validate_corpus(corpus);
  trip_corpus sorted = sort_trips(corpus);
  trip_index idx;
  std::vector<uint32_t> aligned;
  idx.stops_ = tcsa::build(sorted, sample_rate, &aligned);
  idx.times_ = wavelet_matrix::build(aligned, sorted.grid.sigma());
  idx.grid_ = sorted.grid;
  return idx;
}

trip_index trip_index::from_parts(tcsa stops, wavelet_matrix times,
                                  time_grid grid) {
  grid.validate();
  if (stops.size() != times.size())
    throw build_error("stop and time structures disagree on length");
  if (times.sigma() != grid.sigma())
    throw build_error("time structure alphabet disagrees with the grid");
  trip_index idx;
  idx.stops_ = std::move(stops);
  idx.times_ = std::move(times);
  idx.grid_ = grid;
  return idx;
}

uint64_t trip_index::starts_at(uint32_t stop) const {
  return stops_.starts_range(stop).size();
}

uint64_t trip_index::ends_at(uint32_t stop) const {
  return stops_.ends_range(stop).size();
}

uint64_t trip_index::start_end(uint32_t first_stop, uint32_t last_stop) const {
  return stops_.start_end_ranges(first_stop, last_stop).first.size();
}

uint64_t trip_index::uses(uint32_t stop) const { return stops_.uses(stop); }

void trip_index::check_interval(time_interval t) const {
  if (t.lo > t.hi || t.hi >= grid_.sigma())
    throw usage_error("time interval [" + std::to_string(t.lo) + ", " +
                      std::to_string(t.hi) + "] not within [0, " +
                      std::to_string(grid_.sigma()) + ")");
}

uint64_t trip_index::starts_between(uint32_t stop, time_interval t) const {
  check_interval(t);
  tcsa::range r = stops_.starts_range(stop);
  if (r.empty()) return 0;
  return times_.count(r.lo, r.hi, t.lo, t.hi);
}

uint64_t trip_index::ends_between(uint32_t stop, time_interval t) const {
  check_interval(t);
  tcsa::range r = stops_.ends_range(stop);
  if (r.empty()) return 0;
  return times_.count(r.lo, r.hi, t.lo, t.hi);
}

uint64_t trip_index::uses_between(uint32_t stop, time_interval t) const {
  check_interval(t);
  tcsa::range r = stops_.section_range(stop);
  if (r.empty()) return 0;
  return times_.count(r.lo, r.hi, t.lo, t.hi);
}

uint64_t trip_index::start_end_between(uint32_t first_stop, uint32_t last_stop,
                                       time_interval t, semantics sem) const {
  check_interval(t);
  auto [at_last, sep] = stops_.start_end_ranges(first_stop, last_stop);
  if (at_last.empty()) return 0;
  // start codes over the separator run are non-decreasing, so the trips
  // admitted by a bound on the start form a prefix/suffix of the run
  auto first_start_ge = [&](uint32_t bound) {
    uint64_t lo = sep.lo, hi = sep.hi, first = sep.hi + 1;
    while (lo <= hi) {
      uint64_t mid = lo + (hi - lo) / 2;
      if (times_.access(mid) >= bound) {
        first = mid;
        hi = mid - 1;
      } else {
        lo = mid + 1;
      }
    }
    return first;
  };
  if (sem == semantics::strong) {
    uint64_t a = first_start_ge(t.lo);
    uint64_t b = t.hi == times_.sigma() - 1 ? sep.hi + 1
                                            : first_start_ge(t.hi + 1);
    if (a >= b) return 0;
    // same-index trips in the last-stop run; count those ending by t.hi
    return times_.count(at_last.lo + (a - sep.lo), at_last.lo + (b - 1 - sep.lo),
                        t.lo, t.hi);
  }
  uint64_t b = t.hi == times_.sigma() - 1 ? sep.hi + 1 : first_start_ge(t.hi + 1);
  if (b == sep.lo) return 0;  // every start is already past the window
  return times_.count(at_last.lo, at_last.lo + (b - 1 - sep.lo), t.lo,
                      times_.sigma() - 1);
}

}  // namespace tripidx
