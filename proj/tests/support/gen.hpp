#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <utility>

#include "tripidx/corpus.hpp"

// Deterministic random corpora for property tests: every structural and
// counting operation is cross-checked against the brute-force reference
// on these. Sizes stay small enough that the reference is instant.
namespace testsup {

inline tripidx::trip_corpus random_corpus(uint64_t seed,
                                          uint64_t max_trips = 500) {
  std::mt19937_64 rng(seed);
  auto below = [&](uint64_t bound) { return rng() % bound; };

  tripidx::trip_corpus c;
  switch (seed % 3) {
    case 0: c.grid = {15, 1, 1440}; break;   // 96 codes
    case 1: c.grid = {5, 2, 720}; break;     // 288 codes
    default: c.grid = {5, 8, 1440}; break;   // 2304 codes
  }
  const uint32_t sigma = c.grid.sigma();
  const auto delta = static_cast<uint32_t>(2 + below(59));  // stops 1..delta
  c.stop_count = delta;
  const uint64_t trips = 1 + below(max_trips);
  for (uint64_t i = 0; i < trips; ++i) {
    tripidx::trip t;
    const uint64_t len = 2 + below(6) + below(6);  // 2..12, mid-heavy
    auto code = static_cast<uint32_t>(below(sigma));
    for (uint64_t k = 0; k < len; ++k) {
      t.stops.push_back(static_cast<uint32_t>(1 + below(delta)));
      t.times.push_back(code);
      code = static_cast<uint32_t>(
          std::min<uint64_t>(sigma - 1, code + below(4)));
    }
    t.input_ordinal = i + 1;
    c.trips.push_back(std::move(t));
  }
  return c;
}

}  // namespace testsup
