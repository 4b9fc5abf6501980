#pragma once

#include <utility>
#include <vector>

#include "tripidx/corpus.hpp"

// The worked example used throughout the unit tests: six trips over ten
// stops, whose index every structural golden value below was derived
// from by hand (see test_tcsa.cpp). Input order is deliberately
// scrambled so the canonical sort is exercised.
namespace testsup {

inline tripidx::trip_corpus corpus_e() {
  tripidx::trip_corpus c;
  c.stop_count = 10;
  auto add = [&](std::vector<uint32_t> stops, std::vector<uint32_t> times) {
    tripidx::trip t;
    t.stops = std::move(stops);
    t.times = std::move(times);
    t.input_ordinal = c.trips.size() + 1;
    c.trips.push_back(std::move(t));
  };
  add({2, 3, 10, 4, 7}, {2, 3, 4, 5, 6});
  add({9, 8, 7}, {12, 13, 14});
  add({1, 2, 3}, {5, 6, 7});
  add({3, 10, 5}, {9, 10, 11});
  add({1, 2, 3}, {0, 1, 2});
  add({2, 3, 10, 6}, {10, 11, 12, 13});
  return c;
}

inline tripidx::trip_corpus corpus_e_sorted() {
  return tripidx::sort_trips(corpus_e());
}

}  // namespace testsup
