#include "tripidx/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>

#include "tripidx/errors.hpp"

namespace tripidx {

bool trip_order_less(const trip& a, const trip& b) {
  if (a.stops.front() != b.stops.front()) return a.stops.front() < b.stops.front();
  if (a.stops.back() != b.stops.back()) return a.stops.back() < b.stops.back();
  if (a.times.front() != b.times.front()) return a.times.front() < b.times.front();
  size_t common = std::min(a.stops.size(), b.stops.size());
  for (size_t k = 1; k < common; ++k)
    if (a.stops[k] != b.stops[k]) return a.stops[k] < b.stops[k];
  if (a.stops.size() != b.stops.size()) return a.stops.size() < b.stops.size();
  return a.input_ordinal < b.input_ordinal;
}

trip_corpus sort_trips(trip_corpus corpus) {
  std::sort(corpus.trips.begin(), corpus.trips.end(), trip_order_less);
  return corpus;
}

namespace {

uint64_t parse_number(const std::string& token, size_t begin, size_t end,
                      uint64_t line_no) {
  uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data() + begin, token.data() + end, value);
  if (ec != std::errc() || ptr != token.data() + end)
    throw parse_error("corpus line " + std::to_string(line_no) +
                      ": expected an integer in '" + token + "'");
  return value;
}

}  // namespace

trip_corpus parse_corpus(std::istream& in, const time_grid& grid) {
  grid.validate();
  trip_corpus corpus;
  corpus.grid = grid;
  std::string line;
  uint64_t line_no = 0;
  uint64_t ordinal = 0;
  while (std::getline(in, line)) {
    ++line_no;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    trip t;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      size_t colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size())
        throw parse_error("corpus line " + std::to_string(line_no) +
                          ": token '" + token + "' is not stop:timecode");
      uint64_t stop = parse_number(token, 0, colon, line_no);
      uint64_t code = parse_number(token, colon + 1, token.size(), line_no);
      if (stop == 0)
        throw parse_error("corpus line " + std::to_string(line_no) +
                          ": stop ids start at 1");
      if (stop > 0xffffffffull || code > 0xffffffffull)
        throw parse_error("corpus line " + std::to_string(line_no) +
                          ": value out of range in '" + token + "'");
      if (!t.times.empty() && code < t.times.back())
        throw parse_error("corpus line " + std::to_string(line_no) +
                          ": time codes decrease along the trip");
      t.stops.push_back(static_cast<uint32_t>(stop));
      t.times.push_back(static_cast<uint32_t>(code));
    }
    if (t.stops.size() < 2)
      throw parse_error("corpus line " + std::to_string(line_no) +
                        ": a trip needs at least 2 stops");
    corpus.stop_count = std::max(corpus.stop_count,
                                 *std::max_element(t.stops.begin(), t.stops.end()));
    t.input_ordinal = ++ordinal;
    corpus.trips.push_back(std::move(t));
  }
  return corpus;
}

void write_corpus(const trip_corpus& corpus, std::ostream& out) {
  for (const trip& t : corpus.trips) {
    for (size_t k = 0; k < t.stops.size(); ++k) {
      if (k) out << ' ';
      out << t.stops[k] << ':' << t.times[k];
    }
    out << '\n';
  }
}

void validate_corpus(const trip_corpus& corpus) {
  if (corpus.trips.empty())
    throw build_error("corpus is empty");
  corpus.grid.validate();
  uint32_t sigma = corpus.grid.sigma();
  for (const trip& t : corpus.trips) {
    if (t.stops.size() < 2 || t.stops.size() != t.times.size())
      throw build_error("corpus trip " + std::to_string(t.input_ordinal) +
                        ": malformed stop/time sequences");
    for (size_t k = 0; k < t.stops.size(); ++k) {
      if (t.stops[k] == 0 || t.stops[k] > corpus.stop_count)
        throw build_error("corpus trip " + std::to_string(t.input_ordinal) +
                          ": stop id outside [1, " +
                          std::to_string(corpus.stop_count) + "]");
      if (t.times[k] >= sigma)
        throw build_error("corpus trip " + std::to_string(t.input_ordinal) +
                          ": time code " + std::to_string(t.times[k]) +
                          " outside the grid's " + std::to_string(sigma) +
                          "-code space");
      if (k > 0 && t.times[k] < t.times[k - 1])
        throw build_error("corpus trip " + std::to_string(t.input_ordinal) +
                          ": time codes decrease");
    }
  }
}

}  // namespace tripidx
