#include <cstdint>
#include <random>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "tripidx/errors.hpp"
#include "tripidx/psi_codec.hpp"

using tripidx::psi_codec;

TEST_CASE("psi codec: decodes every stored value at all sampling rates") {
  std::mt19937_64 rng(31337);
  std::vector<uint32_t> values(5000);
  // alternating long +1 runs (the common case) and random jumps
  uint32_t v = 1000000;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i % 97 < 80)
      v += 1;
    else
      v = static_cast<uint32_t>(rng() % 2000000);
    values[i] = v;
  }
  for (uint32_t rate : {1u, 2u, 16u, 64u, 256u, 10000u}) {
    CAPTURE(rate);
    psi_codec codec = psi_codec::encode(values, rate);
    CHECK(codec.size() == values.size());
    CHECK(codec.sample_rate() == rate);
    for (size_t i = 0; i < values.size(); ++i)
      REQUIRE(codec.value_at(i + 1) == values[i]);
  }
}

TEST_CASE("psi codec: run statistics and size behaviour") {
  std::vector<uint32_t> runs(4096);
  for (size_t i = 0; i < runs.size(); ++i)
    runs[i] = static_cast<uint32_t>(i % 512 == 0 ? 7 * i : runs[i - 1] + 1);
  psi_codec codec = psi_codec::encode(runs, 64);
  psi_codec::run_stats st = codec.stats();
  CHECK(st.total_deltas == runs.size() - runs.size() / 64);  // samples excluded
  CHECK(st.run_fraction() > 0.9);

  // larger sampling rates may only shrink the footprint
  uint64_t prev = psi_codec::encode(runs, 16).serialized_bytes();
  for (uint32_t rate : {64u, 256u}) {
    uint64_t bytes = psi_codec::encode(runs, rate).serialized_bytes();
    CHECK(bytes < prev);
    prev = bytes;
  }
}

TEST_CASE("psi codec: argument and stream errors") {
  std::vector<uint32_t> values{3, 1, 2};
  CHECK_THROWS_AS(psi_codec::encode(values, 0), tripidx::usage_error);
  psi_codec codec = psi_codec::encode(values, 2);
  CHECK_THROWS_AS(codec.value_at(0), tripidx::range_error);
  CHECK_THROWS_AS(codec.value_at(4), tripidx::range_error);

  std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
  codec.save(buf);
  CHECK(static_cast<uint64_t>(buf.str().size()) == codec.serialized_bytes());
  psi_codec back = psi_codec::load(buf);
  for (size_t i = 1; i <= values.size(); ++i)
    CHECK(back.value_at(i) == codec.value_at(i));

  std::string whole = buf.str();
  std::istringstream cut(whole.substr(0, whole.size() - 2), std::ios::binary);
  CHECK_THROWS_AS(psi_codec::load(cut), tripidx::io_error);
}
