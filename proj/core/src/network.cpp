#include "tripidx/network.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "tripidx/errors.hpp"

namespace tripidx {

namespace {

uint64_t parse_number(const std::string& token, uint64_t line_no) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw parse_error("network line " + std::to_string(line_no) +
                      ": expected an integer, got '" + token + "'");
  return value;
}

// Deterministic draws on top of the standard engine. The distributions in
// <random> are implementation-defined, so corpora would not be reproducible
// across library versions; these are fully pinned.
uint64_t uniform_below(std::mt19937_64& rng, uint64_t bound) {
  return bound <= 1 ? 0 : rng() % bound;
}

bool bernoulli(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

uint32_t sample_trip_length(std::mt19937_64& rng, const length_params& lp) {
  uint32_t trials = lp.max_stops - lp.min_stops;
  if (trials == 0) return lp.min_stops;
  double p = (lp.mean_stops - lp.min_stops) / trials;
  uint32_t len = lp.min_stops;
  for (uint32_t i = 0; i < trials; ++i)
    if (bernoulli(rng, p)) ++len;
  return len;
}

}  // namespace

network_description parse_network(std::istream& in) {
  network_description net;
  std::unordered_set<uint32_t> stop_ids;
  std::unordered_map<uint32_t, size_t> line_index;
  std::string line;
  uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream tokens(line);
    std::string directive;
    tokens >> directive;
    if (directive == "stop") {
      std::string id_token;
      if (!(tokens >> id_token))
        throw parse_error("network line " + std::to_string(line_no) +
                          ": stop directive needs an id");
      uint64_t id = parse_number(id_token, line_no);
      if (id == 0 || id > 0xffffffffull)
        throw parse_error("network line " + std::to_string(line_no) +
                          ": stop ids are in [1, 2^32)");
      std::string label;
      std::getline(tokens, label);
      size_t start = label.find_first_not_of(" \t");
      label = start == std::string::npos ? std::string() : label.substr(start);
      if (label.empty())
        throw parse_error("network line " + std::to_string(line_no) +
                          ": stop " + id_token + " has no label");
      if (!stop_ids.insert(static_cast<uint32_t>(id)).second)
        throw parse_error("network line " + std::to_string(line_no) +
                          ": duplicate stop id " + id_token);
      net.stops.push_back({static_cast<uint32_t>(id), label});
    } else if (directive == "line") {
      std::string token;
      if (!(tokens >> token))
        throw parse_error("network line " + std::to_string(line_no) +
                          ": line directive needs an id");
      uint64_t id = parse_number(token, line_no);
      network_line nl;
      nl.id = static_cast<uint32_t>(id);
      while (tokens >> token) {
        uint64_t stop = parse_number(token, line_no);
        if (!stop_ids.count(static_cast<uint32_t>(stop)))
          throw parse_error("network line " + std::to_string(line_no) +
                            ": line " + std::to_string(id) +
                            " references unknown stop " + token);
        nl.stops.push_back(static_cast<uint32_t>(stop));
      }
      if (nl.stops.size() < 2)
        throw parse_error("network line " + std::to_string(line_no) + ": line " +
                          std::to_string(id) + " needs at least 2 stops");
      if (line_index.count(nl.id))
        throw parse_error("network line " + std::to_string(line_no) +
                          ": duplicate line id " + std::to_string(id));
      line_index[nl.id] = net.lines.size();
      net.lines.push_back(std::move(nl));
    } else if (directive == "window") {
      std::string lid_token, b_token, e_token;
      if (!(tokens >> lid_token >> b_token >> e_token))
        throw parse_error("network line " + std::to_string(line_no) +
                          ": window directive needs <line> <begin> <end>");
      uint64_t lid = parse_number(lid_token, line_no);
      auto it = line_index.find(static_cast<uint32_t>(lid));
      if (it == line_index.end())
        throw parse_error("network line " + std::to_string(line_no) +
                          ": window for unknown line " + lid_token);
      uint64_t b = parse_number(b_token, line_no);
      uint64_t e = parse_number(e_token, line_no);
      if (b >= e)
        throw parse_error("network line " + std::to_string(line_no) +
                          ": window must satisfy begin < end");
      net.lines[it->second].window_begin = static_cast<uint32_t>(b);
      net.lines[it->second].window_end = static_cast<uint32_t>(e);
    } else {
      throw parse_error("network line " + std::to_string(line_no) +
                        ": unknown directive '" + directive + "'");
    }
  }
  if (net.stops.empty())
    throw parse_error("network declares no stops");
  return net;
}

trip_corpus generate_synthetic(const network_description& network,
                               uint64_t trip_count, uint64_t seed,
                               const time_grid& grid,
                               const length_params& lengths) {
  grid.validate();
  if (lengths.min_stops < 2)
    throw config_error("trip length model: trips need at least 2 stops");
  if (lengths.min_stops > lengths.max_stops)
    throw config_error("trip length model: min exceeds max");
  if (lengths.mean_stops < lengths.min_stops || lengths.mean_stops > lengths.max_stops)
    throw config_error("trip length model: mean outside [min, max]");
  if (network.lines.empty())
    throw config_error("synthetic corpus: network declares no lines");

  size_t longest = 0;
  for (const auto& l : network.lines) longest = std::max(longest, l.stops.size());
  if (longest < lengths.min_stops)
    throw config_error("synthetic corpus: no line is long enough for the minimum trip length");

  // Lines sorted longest-first; a prefix of this order is eligible for any
  // drawn length.
  std::vector<size_t> by_length(network.lines.size());
  for (size_t i = 0; i < by_length.size(); ++i) by_length[i] = i;
  std::stable_sort(by_length.begin(), by_length.end(), [&](size_t a, size_t b) {
    return network.lines[a].stops.size() > network.lines[b].stops.size();
  });

  trip_corpus corpus;
  corpus.grid = grid;
  corpus.trips.reserve(trip_count);
  std::mt19937_64 rng(seed);

  for (uint64_t i = 0; i < trip_count; ++i) {
    uint32_t len;
    do {
      len = sample_trip_length(rng, lengths);
    } while (len > longest);

    size_t eligible = 0;
    while (eligible < by_length.size() &&
           network.lines[by_length[eligible]].stops.size() >= len)
      ++eligible;
    const network_line& nl = network.lines[by_length[uniform_below(rng, eligible)]];

    size_t offset = uniform_below(rng, nl.stops.size() - len + 1);
    uint32_t day_type = static_cast<uint32_t>(uniform_below(rng, grid.day_type_count));

    uint32_t wb = std::min(nl.window_begin, grid.day_minutes - 1);
    uint32_t we = nl.window_end == 0 ? grid.day_minutes
                                     : std::min(nl.window_end, grid.day_minutes);
    if (wb >= we)
      throw config_error("synthetic corpus: line " + std::to_string(nl.id) +
                         " has an empty service window under this grid");

    uint32_t budget = 5 * (len - 1);
    uint32_t latest = we - 1 > wb + budget ? we - 1 - budget : wb;
    uint32_t minute = wb + static_cast<uint32_t>(uniform_below(rng, latest - wb + 1));

    trip t;
    t.stops.reserve(len);
    t.times.reserve(len);
    for (uint32_t k = 0; k < len; ++k) {
      if (k > 0) {
        minute += 1 + static_cast<uint32_t>(uniform_below(rng, 5));
        if (minute > we - 1) minute = we - 1;
      }
      t.stops.push_back(nl.stops[offset + k]);
      t.times.push_back(discretize(grid, day_type, minute));
    }
    t.input_ordinal = i + 1;
    corpus.stop_count = std::max(corpus.stop_count,
                                 *std::max_element(t.stops.begin(), t.stops.end()));
    corpus.trips.push_back(std::move(t));
  }
  return corpus;
}

}  // namespace tripidx
