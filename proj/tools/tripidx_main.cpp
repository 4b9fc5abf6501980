// tripidx: build and query compact trip indexes from the command line.
#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "tripidx/container.hpp"
#include "tripidx/errors.hpp"
#include "tripidx/network.hpp"
#include "tripidx/oracle.hpp"
#include "tripidx/trip_index.hpp"

namespace {

using namespace tripidx;

struct grid_flags {
  uint32_t slot_minutes = 5;
  uint32_t day_types = 8;
  uint32_t day_minutes = 1440;
  time_grid grid() const { return {slot_minutes, day_types, day_minutes}; }
};

void add_grid_flags(CLI::App* cmd, grid_flags& g) {
  cmd->add_option("--slot-minutes", g.slot_minutes, "slot width in minutes")
      ->capture_default_str();
  cmd->add_option("--day-types", g.day_types, "number of day-type buckets")
      ->capture_default_str();
  cmd->add_option("--day-minutes", g.day_minutes, "minutes per day")
      ->capture_default_str();
}

void require_file(const std::string& path, const char* what) {
  if (!std::filesystem::exists(path))
    throw usage_error(std::string(what) + " file does not exist: " + path);
}

uint64_t parse_u64(const std::string& token, const char* what) {
  uint64_t v = 0;
  auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || p != token.data() + token.size())
    throw usage_error(std::string("expected a number for ") + what +
                      ", got '" + token + "'");
  return v;
}

// time arguments: either a raw code, or D:HH:MM with --clock
uint32_t parse_time(const std::string& token, const time_grid& grid,
                    bool clock) {
  if (!clock) {
    uint64_t code = parse_u64(token, "a time code");
    if (code >= grid.sigma())
      throw usage_error("time code " + token + " outside [0, " +
                        std::to_string(grid.sigma()) + ")");
    return static_cast<uint32_t>(code);
  }
  size_t c1 = token.find(':');
  size_t c2 = c1 == std::string::npos ? std::string::npos
                                      : token.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw usage_error("clock times look like D:HH:MM, got '" + token + "'");
  uint64_t d = parse_u64(token.substr(0, c1), "the day type");
  uint64_t h = parse_u64(token.substr(c1 + 1, c2 - c1 - 1), "the hour");
  uint64_t m = parse_u64(token.substr(c2 + 1), "the minute");
  if (h >= 24 || m >= 60)
    throw usage_error("clock time out of range: '" + token + "'");
  return discretize(grid, static_cast<uint32_t>(d),
                    static_cast<uint32_t>(h * 60 + m));
}

trip_corpus read_corpus_file(const std::string& path, const time_grid& grid) {
  require_file(path, "corpus");
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  return parse_corpus(in, grid);
}

// ---------------------------------------------------------------- generate

int cmd_generate(const std::string& network_path, uint64_t count,
                 uint64_t seed, const std::string& output,
                 const grid_flags& gf, const length_params& lengths) {
  require_file(network_path, "network");
  std::ifstream in(network_path);
  if (!in) throw io_error("cannot open " + network_path);
  network_description net = parse_network(in);
  trip_corpus corpus = generate_synthetic(net, count, seed, gf.grid(), lengths);

  std::ofstream out(output);
  if (!out) throw io_error("cannot open " + output + " for writing");
  write_corpus(corpus, out);
  out.flush();
  if (!out) throw io_error("write to " + output + " failed");

  uint64_t total_stops = 0;
  for (const trip& t : corpus.trips) total_stops += t.stops.size();
  std::cout << "trips: " << corpus.trips.size() << "\n"
            << "stops: " << corpus.stop_count << "\n"
            << "mean stops per trip: " << std::fixed << std::setprecision(2)
            << (corpus.trips.empty()
                    ? 0.0
                    : static_cast<double>(total_stops) /
                          static_cast<double>(corpus.trips.size()))
            << "\n"
            << "output: " << output << "\n";
  return 0;
}

// ------------------------------------------------------------------- build

void print_space(const trip_index& idx) {
  space_report r = measure(idx);
  std::cout << "plain baseline bytes: " << r.plain_baseline_bytes << "\n"
            << "stop index bytes: " << r.stops_index_bytes << " ("
            << std::fixed << std::setprecision(1) << r.stops_ratio_percent()
            << "% of plain)\n"
            << "time index bytes: " << r.time_index_bytes << "\n";
}

int cmd_build(const std::string& corpus_path, const std::string& output,
              uint32_t rate, const grid_flags& gf) {
  trip_corpus corpus = read_corpus_file(corpus_path, gf.grid());
  trip_index idx = trip_index::build(corpus, rate);
  save_index_file(idx, output);
  std::cout << "trips: " << idx.trip_count() << "\n"
            << "sequence length: " << idx.stops().size() << "\n"
            << "sample rate: " << idx.stops().sample_rate() << "\n";
  print_space(idx);
  std::cout << "output: " << output << "\n";
  return 0;
}

// ------------------------------------------------------------------- query

struct query_args {
  std::string op;
  std::vector<std::string> rest;
};

semantics parse_semantics(const std::string& word) {
  if (word == "strong") return semantics::strong;
  if (word == "weak") return semantics::weak;
  throw usage_error("expected 'strong' or 'weak', got '" + word + "'");
}

void expect_arity(const query_args& q, size_t arity) {
  if (q.rest.size() != arity)
    throw usage_error("query '" + q.op + "' takes " + std::to_string(arity) +
                      " arguments, got " + std::to_string(q.rest.size()));
}

uint32_t stop_arg(const query_args& q, size_t k) {
  return static_cast<uint32_t>(parse_u64(q.rest[k], "a stop id"));
}

int run_query_indexed(const trip_index& idx, const query_args& q, bool clock,
                      bool verbose) {
  const time_grid& grid = idx.grid();
  auto interval = [&](size_t k) {
    return time_interval{parse_time(q.rest[k], grid, clock),
                         parse_time(q.rest[k + 1], grid, clock)};
  };
  if (q.op == "starts") {
    expect_arity(q, 1);
    tcsa::range r = idx.stops().starts_range(stop_arg(q, 0));
    if (verbose) std::cout << "# range [" << r.lo << ", " << r.hi << "]\n";
    std::cout << r.size() << "\n";
  } else if (q.op == "ends") {
    expect_arity(q, 1);
    tcsa::range r = idx.stops().ends_range(stop_arg(q, 0));
    if (verbose) std::cout << "# range [" << r.lo << ", " << r.hi << "]\n";
    std::cout << r.size() << "\n";
  } else if (q.op == "starts-ends") {
    expect_arity(q, 2);
    auto [at_last, sep] =
        idx.stops().start_end_ranges(stop_arg(q, 0), stop_arg(q, 1));
    if (verbose)
      std::cout << "# last-stop range [" << at_last.lo << ", " << at_last.hi
                << "] separator range [" << sep.lo << ", " << sep.hi << "]\n";
    std::cout << at_last.size() << "\n";
  } else if (q.op == "uses") {
    expect_arity(q, 1);
    std::cout << idx.uses(stop_arg(q, 0)) << "\n";
  } else if (q.op == "topk") {
    if (q.rest.size() != 1 && q.rest.size() != 2)
      throw usage_error("query 'topk' takes K and an optional seq|bin");
    uint64_t k = parse_u64(q.rest[0], "k");
    bool binary = q.rest.size() == 2 && q.rest[1] == "bin";
    if (q.rest.size() == 2 && q.rest[1] != "bin" && q.rest[1] != "seq")
      throw usage_error("topk variant must be seq or bin, got '" + q.rest[1] +
                        "'");
    auto top = binary ? idx.stops().topk_binary(k)
                      : idx.stops().topk_sequential(k);
    for (auto [stop, freq] : top) std::cout << stop << " " << freq << "\n";
  } else if (q.op == "starts-between") {
    expect_arity(q, 3);
    std::cout << idx.starts_between(stop_arg(q, 0), interval(1)) << "\n";
  } else if (q.op == "ends-between") {
    expect_arity(q, 3);
    std::cout << idx.ends_between(stop_arg(q, 0), interval(1)) << "\n";
  } else if (q.op == "uses-between") {
    expect_arity(q, 3);
    std::cout << idx.uses_between(stop_arg(q, 0), interval(1)) << "\n";
  } else if (q.op == "starts-ends-between") {
    expect_arity(q, 5);
    std::cout << idx.start_end_between(stop_arg(q, 0), stop_arg(q, 1),
                                       interval(2), parse_semantics(q.rest[4]))
              << "\n";
  } else {
    throw usage_error("unknown query '" + q.op + "'");
  }
  return 0;
}

int run_query_oracle(const trip_corpus& corpus, const query_args& q,
                     bool clock) {
  const time_grid& grid = corpus.grid;
  trip_corpus sorted = sort_trips(corpus);
  auto interval = [&](size_t k) {
    return time_interval{parse_time(q.rest[k], grid, clock),
                         parse_time(q.rest[k + 1], grid, clock)};
  };
  if (q.op == "starts") {
    expect_arity(q, 1);
    std::cout << oracle::starts_at(sorted, stop_arg(q, 0)) << "\n";
  } else if (q.op == "ends") {
    expect_arity(q, 1);
    std::cout << oracle::ends_at(sorted, stop_arg(q, 0)) << "\n";
  } else if (q.op == "starts-ends") {
    expect_arity(q, 2);
    std::cout << oracle::start_end(sorted, stop_arg(q, 0), stop_arg(q, 1))
              << "\n";
  } else if (q.op == "uses") {
    expect_arity(q, 1);
    std::cout << oracle::uses(sorted, stop_arg(q, 0)) << "\n";
  } else if (q.op == "topk") {
    if (q.rest.empty())
      throw usage_error("query 'topk' takes K and an optional seq|bin");
    for (auto [stop, freq] :
         oracle::top_stops(sorted, parse_u64(q.rest[0], "k")))
      std::cout << stop << " " << freq << "\n";
  } else if (q.op == "starts-between") {
    expect_arity(q, 3);
    std::cout << oracle::starts_between(sorted, stop_arg(q, 0), interval(1))
              << "\n";
  } else if (q.op == "ends-between") {
    expect_arity(q, 3);
    std::cout << oracle::ends_between(sorted, stop_arg(q, 0), interval(1))
              << "\n";
  } else if (q.op == "uses-between") {
    expect_arity(q, 3);
    std::cout << oracle::uses_between(sorted, stop_arg(q, 0), interval(1))
              << "\n";
  } else if (q.op == "starts-ends-between") {
    expect_arity(q, 5);
    std::cout << oracle::start_end_between(sorted, stop_arg(q, 0),
                                           stop_arg(q, 1), interval(2),
                                           parse_semantics(q.rest[4]))
              << "\n";
  } else {
    throw usage_error("unknown query '" + q.op + "'");
  }
  return 0;
}

// ------------------------------------------------------------------- bench

struct bench_row {
  std::string name;
  double mean_us = 0;
  double median_us = 0;
  uint64_t count = 0;
};

template <typename Fn>
bench_row run_bench(const std::string& name, uint64_t queries,
                    unsigned threads, Fn&& op) {
  // one full untimed pass warms caches and page tables
  for (uint64_t i = 0; i < queries; ++i) op(i);

  std::vector<double> samples(queries);
  auto worker = [&](uint64_t begin, uint64_t end) {
    for (uint64_t i = begin; i < end; ++i) {
      auto t0 = std::chrono::steady_clock::now();
      op(i);
      auto t1 = std::chrono::steady_clock::now();
      samples[i] =
          std::chrono::duration<double, std::micro>(t1 - t0).count();
    }
  };
  if (threads <= 1) {
    worker(0, queries);
  } else {
    std::vector<std::thread> pool;
    uint64_t chunk = (queries + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      uint64_t begin = t * chunk;
      uint64_t end = std::min(queries, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (std::thread& t : pool) t.join();
  }

  bench_row row;
  row.name = name;
  row.count = queries;
  row.mean_us = std::accumulate(samples.begin(), samples.end(), 0.0) /
                static_cast<double>(queries);
  std::nth_element(samples.begin(), samples.begin() + samples.size() / 2,
                   samples.end());
  row.median_us = samples[samples.size() / 2];
  return row;
}

int cmd_bench(const std::string& index_path, uint64_t queries, uint64_t seed,
              unsigned threads, bool csv) {
  if (queries == 0) throw usage_error("--queries must be >= 1");
  require_file(index_path, "index");
  trip_index idx = load_index_file(index_path);
  const uint32_t delta = idx.stop_count();
  const uint32_t sigma = idx.grid().sigma();

  std::mt19937_64 rng(seed);
  std::vector<uint32_t> xs(queries), ys(queries), los(queries), his(queries);
  for (uint64_t i = 0; i < queries; ++i) {
    xs[i] = static_cast<uint32_t>(1 + rng() % delta);
    ys[i] = static_cast<uint32_t>(1 + rng() % delta);
    los[i] = static_cast<uint32_t>(rng() % sigma);
    his[i] = los[i] + static_cast<uint32_t>(rng() % (sigma - los[i]));
  }
  auto sink = [](uint64_t v) { asm volatile("" : : "r"(v) : "memory"); };

  std::vector<bench_row> rows;
  rows.push_back(run_bench("starts", queries, threads,
                           [&](uint64_t i) { sink(idx.starts_at(xs[i])); }));
  rows.push_back(run_bench("ends", queries, threads,
                           [&](uint64_t i) { sink(idx.ends_at(xs[i])); }));
  rows.push_back(run_bench("starts-ends", queries, threads, [&](uint64_t i) {
    sink(idx.start_end(xs[i], ys[i]));
  }));
  rows.push_back(run_bench("uses", queries, threads,
                           [&](uint64_t i) { sink(idx.uses(xs[i])); }));
  for (uint64_t k : {uint64_t{10}, uint64_t{1000}}) {
    rows.push_back(run_bench("topk-seq-" + std::to_string(k), queries, threads,
                             [&, k](uint64_t) {
                               auto top = idx.stops().topk_sequential(k);
                               sink(top.size());
                             }));
    rows.push_back(run_bench("topk-bin-" + std::to_string(k), queries, threads,
                             [&, k](uint64_t) {
                               auto top = idx.stops().topk_binary(k);
                               sink(top.size());
                             }));
  }
  rows.push_back(
      run_bench("starts-between", queries, threads, [&](uint64_t i) {
        sink(idx.starts_between(xs[i], {los[i], his[i]}));
      }));
  rows.push_back(run_bench("ends-between", queries, threads, [&](uint64_t i) {
    sink(idx.ends_between(xs[i], {los[i], his[i]}));
  }));
  rows.push_back(run_bench("uses-between", queries, threads, [&](uint64_t i) {
    sink(idx.uses_between(xs[i], {los[i], his[i]}));
  }));
  rows.push_back(run_bench("starts-ends-between-strong", queries, threads,
                           [&](uint64_t i) {
                             sink(idx.start_end_between(
                                 xs[i], ys[i], {los[i], his[i]},
                                 semantics::strong));
                           }));
  rows.push_back(run_bench("starts-ends-between-weak", queries, threads,
                           [&](uint64_t i) {
                             sink(idx.start_end_between(
                                 xs[i], ys[i], {los[i], his[i]},
                                 semantics::weak));
                           }));

  auto row_named = [&](const std::string& name) -> const bench_row& {
    for (const bench_row& r : rows)
      if (r.name == name) return r;
    throw error("missing bench row " + name);
  };
  std::ostream& overhead_out = csv ? std::cerr : std::cout;
  if (csv) {
    std::cout << "query,mean_us,median_us,count\n";
    for (const bench_row& r : rows)
      std::cout << r.name << "," << std::fixed << std::setprecision(3)
                << r.mean_us << "," << r.median_us << "," << r.count << "\n";
  } else {
    std::cout << std::left << std::setw(28) << "query" << std::right
              << std::setw(12) << "mean_us" << std::setw(12) << "median_us"
              << std::setw(10) << "count\n";
    for (const bench_row& r : rows)
      std::cout << std::left << std::setw(28) << r.name << std::right
                << std::fixed << std::setprecision(3) << std::setw(12)
                << r.mean_us << std::setw(12) << r.median_us << std::setw(10)
                << r.count << "\n";
  }
  const std::pair<const char*, const char*> pairs[] = {
      {"starts-between", "starts"},
      {"ends-between", "ends"},
      {"uses-between", "uses"},
      {"starts-ends-between-strong", "starts-ends"},
      {"starts-ends-between-weak", "starts-ends"}};
  for (auto [windowed, plain] : pairs) {
    double base = row_named(plain).mean_us;
    overhead_out << "overhead " << windowed << " vs " << plain << ": "
                 << std::fixed << std::setprecision(2)
                 << (base > 0 ? row_named(windowed).mean_us / base : 0.0)
                 << "x\n";
  }
  return 0;
}

// ------------------------------------------------------------------- stats

int cmd_stats(const std::string& index_path) {
  require_file(index_path, "index");
  trip_index idx = load_index_file(index_path);
  const tcsa& s = idx.stops();
  psi_codec::run_stats rs = s.psi_stats();
  std::cout << "sequence length: " << s.size() << "\n"
            << "stop occurrences: " << s.size() - s.trip_count() - 1 << "\n"
            << "trips: " << s.trip_count() << "\n"
            << "stops: " << s.stop_count() << "\n"
            << "distinct symbols: " << s.vocabulary().size() << "\n"
            << "grid: " << idx.grid().slot_minutes << "-minute slots, "
            << idx.grid().day_type_count << " day types, "
            << idx.grid().day_minutes << "-minute day ("
            << idx.grid().sigma() << " codes)\n"
            << "sample rate: " << s.sample_rate() << "\n"
            << "successor +1-run fraction: " << std::fixed
            << std::setprecision(3) << rs.run_fraction() << "\n";
  print_space(idx);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compact trip index: build, query, and measure"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "draw a synthetic corpus from a network");
  std::string gen_network, gen_output;
  uint64_t gen_count = 0, gen_seed = 1;
  grid_flags gen_grid;
  length_params gen_lengths;
  gen->add_option("--network", gen_network, "network description file")
      ->required();
  gen->add_option("--count", gen_count, "number of trips")->required();
  gen->add_option("--seed", gen_seed, "random seed")->capture_default_str();
  gen->add_option("--output", gen_output, "corpus file to write")->required();
  gen->add_option("--min-stops", gen_lengths.min_stops, "shortest trip")
      ->capture_default_str();
  gen->add_option("--max-stops", gen_lengths.max_stops, "longest trip")
      ->capture_default_str();
  gen->add_option("--mean-stops", gen_lengths.mean_stops, "average trip length")
      ->capture_default_str();
  add_grid_flags(gen, gen_grid);

  // build
  auto* bld = app.add_subcommand("build", "index a corpus file");
  std::string bld_corpus, bld_output;
  uint32_t bld_rate = 64, bld_unsafe_rate = 0;
  grid_flags bld_grid;
  bld->add_option("--corpus", bld_corpus, "corpus file")->required();
  bld->add_option("--output", bld_output, "index file to write")->required();
  auto* rate_opt =
      bld->add_option("--sample-rate", bld_rate,
                      "successor sampling rate (16, 64 or 256)")
          ->capture_default_str();
  bld->add_option("--unsafe-rate", bld_unsafe_rate,
                  "any sampling rate >= 1, no guard rails")
      ->excludes(rate_opt);
  add_grid_flags(bld, bld_grid);

  // query
  auto* qry = app.add_subcommand("query", "answer one query");
  std::string qry_index, qry_corpus, qry_engine = "index";
  bool qry_clock = false, qry_verbose = false;
  std::vector<std::string> qry_terms;
  qry->add_option("--index", qry_index, "index file");
  qry->add_option("--corpus", qry_corpus, "corpus file (oracle engine)");
  qry->add_option("--engine", qry_engine, "index | oracle")
      ->capture_default_str();
  qry->add_flag("--clock", qry_clock, "time arguments are D:HH:MM");
  qry->add_flag("--verbose", qry_verbose, "also print match ranges");
  qry->add_option("terms", qry_terms, "query words")->expected(-1);
  grid_flags qry_grid;
  add_grid_flags(qry, qry_grid);

  // bench
  auto* ben = app.add_subcommand("bench", "time the query mix against an index");
  std::string ben_index;
  uint64_t ben_queries = 10000, ben_seed = 42;
  unsigned ben_threads = 1;
  bool ben_csv = false;
  ben->add_option("--index", ben_index, "index file")->required();
  ben->add_option("--queries", ben_queries, "queries per row")
      ->capture_default_str();
  ben->add_option("--seed", ben_seed, "random seed")->capture_default_str();
  ben->add_option("--threads", ben_threads, "worker threads")
      ->capture_default_str();
  ben->add_flag("--csv", ben_csv, "machine-readable output");

  // stats
  auto* sts = app.add_subcommand("stats", "describe an index file");
  std::string sts_index;
  sts->add_option("--index", sts_index, "index file")->required();

  try {
    app.parse(argc, argv);

    if (gen->parsed())
      return cmd_generate(gen_network, gen_count, gen_seed, gen_output,
                          gen_grid, gen_lengths);
    if (bld->parsed()) {
      uint32_t rate = bld_unsafe_rate ? bld_unsafe_rate : bld_rate;
      if (!bld_unsafe_rate && rate != 16 && rate != 64 && rate != 256)
        throw usage_error("--sample-rate must be 16, 64 or 256 (or use "
                          "--unsafe-rate)");
      return cmd_build(bld_corpus, bld_output, rate, bld_grid);
    }
    if (qry->parsed()) {
      if (qry_terms.empty()) throw usage_error("no query given");
      query_args q;
      q.op = qry_terms.front();
      q.rest.assign(qry_terms.begin() + 1, qry_terms.end());
      if (qry_engine == "index") {
        if (qry_index.empty())
          throw usage_error("--index is required with the index engine");
        require_file(qry_index, "index");
        return run_query_indexed(load_index_file(qry_index), q, qry_clock,
                                 qry_verbose);
      }
      if (qry_engine == "oracle") {
        if (qry_corpus.empty())
          throw usage_error("--corpus is required with the oracle engine");
        time_grid grid = qry_index.empty()
                             ? qry_grid.grid()
                             : load_index_file(qry_index).grid();
        return run_query_oracle(read_corpus_file(qry_corpus, grid), q,
                                qry_clock);
      }
      throw usage_error("--engine must be 'index' or 'oracle', got '" +
                        qry_engine + "'");
    }
    if (ben->parsed())
      return cmd_bench(ben_index, ben_queries, ben_seed, ben_threads, ben_csv);
    if (sts->parsed()) return cmd_stats(sts_index);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const config_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
