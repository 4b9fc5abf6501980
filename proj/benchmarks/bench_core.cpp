// Microbenchmarks for the structures on the hot query path.
#include <benchmark/benchmark.h>

#include <cstdint>
#include <random>
#include <vector>

#include "tripidx/bitvector.hpp"
#include "tripidx/psi_codec.hpp"
#include "tripidx/tcsa.hpp"
#include "tripidx/trip_index.hpp"
#include "tripidx/wavelet_matrix.hpp"

namespace {

using namespace tripidx;

bitvector random_bitvector(uint64_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  bit_builder b;
  for (uint64_t i = 0; i < n; ++i) b.push_back(rng() & 1);
  return bitvector(std::move(b));
}

trip_corpus synthetic_corpus(uint64_t trips, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto below = [&](uint64_t bound) { return rng() % bound; };
  trip_corpus c;
  c.grid = {5, 8, 1440};
  c.stop_count = 320;
  for (uint64_t i = 0; i < trips; ++i) {
    trip t;
    uint64_t len = 2 + below(10) + below(10);
    auto code = static_cast<uint32_t>(below(c.grid.sigma()));
    for (uint64_t k = 0; k < len; ++k) {
      t.stops.push_back(static_cast<uint32_t>(1 + below(c.stop_count)));
      t.times.push_back(code);
      code = static_cast<uint32_t>(
          std::min<uint64_t>(c.grid.sigma() - 1, code + below(3)));
    }
    t.input_ordinal = i + 1;
    c.trips.push_back(std::move(t));
  }
  return c;
}

void bm_bitvector_rank(benchmark::State& state) {
  bitvector bv = random_bitvector(1 << 22, 1);
  std::mt19937_64 rng(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(bv.rank1(rng() % (bv.size() + 1)));
}
BENCHMARK(bm_bitvector_rank);

void bm_bitvector_select(benchmark::State& state) {
  bitvector bv = random_bitvector(1 << 22, 3);
  std::mt19937_64 rng(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(bv.select1(1 + rng() % bv.ones()));
}
BENCHMARK(bm_bitvector_select);

void bm_psi_decode(benchmark::State& state) {
  const auto rate = static_cast<uint32_t>(state.range(0));
  std::mt19937_64 rng(5);
  std::vector<uint32_t> values(1 << 20);
  uint32_t v = 0;
  for (auto& x : values) {
    v = rng() % 100 < 85 ? v + 1 : static_cast<uint32_t>(rng() % (1 << 24));
    x = v;
  }
  psi_codec codec = psi_codec::encode(values, rate);
  for (auto _ : state)
    benchmark::DoNotOptimize(codec.value_at(1 + rng() % values.size()));
}
BENCHMARK(bm_psi_decode)->Arg(16)->Arg(64)->Arg(256);

void bm_wavelet_count(benchmark::State& state) {
  std::mt19937_64 rng(6);
  std::vector<uint32_t> codes(1 << 20);
  for (auto& c : codes) c = static_cast<uint32_t>(rng() % 2304);
  wavelet_matrix wm = wavelet_matrix::build(codes, 2304);
  for (auto _ : state) {
    uint64_t x1 = 1 + rng() % codes.size();
    uint64_t x2 = x1 + rng() % (codes.size() - x1 + 1);
    uint32_t y1 = static_cast<uint32_t>(rng() % 2304);
    uint32_t y2 = y1 + static_cast<uint32_t>(rng() % (2304 - y1));
    benchmark::DoNotOptimize(wm.count(x1, x2, y1, y2));
  }
}
BENCHMARK(bm_wavelet_count);

void bm_pattern_search(benchmark::State& state) {
  trip_index idx = trip_index::build(synthetic_corpus(100000, 7), 64);
  std::mt19937_64 rng(8);
  for (auto _ : state) {
    auto x = static_cast<uint32_t>(1 + rng() % idx.stop_count());
    benchmark::DoNotOptimize(idx.starts_at(x));
  }
}
BENCHMARK(bm_pattern_search);

void bm_windowed_start_end(benchmark::State& state) {
  trip_index idx = trip_index::build(synthetic_corpus(100000, 9), 64);
  const uint32_t sigma = idx.grid().sigma();
  std::mt19937_64 rng(10);
  for (auto _ : state) {
    auto x = static_cast<uint32_t>(1 + rng() % idx.stop_count());
    auto y = static_cast<uint32_t>(1 + rng() % idx.stop_count());
    auto lo = static_cast<uint32_t>(rng() % sigma);
    auto hi = lo + static_cast<uint32_t>(rng() % (sigma - lo));
    benchmark::DoNotOptimize(
        idx.start_end_between(x, y, {lo, hi}, semantics::strong));
  }
}
BENCHMARK(bm_windowed_start_end);

void bm_topk(benchmark::State& state) {
  trip_index idx = trip_index::build(synthetic_corpus(100000, 11), 64);
  const auto k = static_cast<uint64_t>(state.range(0));
  const bool binary = state.range(1) != 0;
  for (auto _ : state) {
    auto top =
        binary ? idx.stops().topk_binary(k) : idx.stops().topk_sequential(k);
    benchmark::DoNotOptimize(top.data());
  }
}
BENCHMARK(bm_topk)->Args({10, 0})->Args({10, 1})->Args({1000, 0})->Args({1000, 1});

}  // namespace

BENCHMARK_MAIN();
