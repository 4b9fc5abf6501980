#include "tripidx/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace tripidx::oracle {

suffix_structures build_suffix_structures(const trip_corpus& corpus) {
  uint64_t n = 1;
  for (const trip& t : corpus.trips) n += t.stops.size() + 1;

  suffix_structures s;
  s.n = n;
  s.sequence.assign(n + 1, 0);
  std::vector<uint32_t> code(n + 1, 0);
  std::vector<uint64_t> trip_rank(n + 1, 0);
  std::vector<uint64_t> trip_head(n + 1, 0);
  std::vector<uint64_t> trip_sep(n + 1, 0);
  {
    uint64_t pos = 1, rank = 0;
    for (const trip& t : corpus.trips) {
      ++rank;
      uint64_t head = pos;
      for (size_t k = 0; k < t.stops.size(); ++k, ++pos) {
        s.sequence[pos] = t.stops[k];
        code[pos] = t.times[k];
      }
      s.sequence[pos] = 0;
      code[pos] = t.times.front();
      for (uint64_t p = head; p <= pos; ++p) {
        trip_rank[p] = rank;
        trip_head[p] = head;
        trip_sep[p] = pos;
      }
      ++pos;
    }
    trip_head[n] = n;
    trip_sep[n] = n;
  }

  // one explicit key per suffix: symbols through the first separator,
  // then the trip rank (terminator ranks 0, before every trip)
  std::vector<std::vector<uint64_t>> keys(n + 1);
  for (uint64_t p = 1; p <= n; ++p) {
    std::vector<uint64_t>& key = keys[p];
    if (s.sequence[p] != 0)
      for (uint64_t q = p; q <= trip_sep[p]; ++q) key.push_back(s.sequence[q]);
    else
      key.push_back(0);
    key.push_back(trip_rank[p]);
  }

  std::vector<uint64_t> order(n);
  std::iota(order.begin(), order.end(), uint64_t{1});
  std::sort(order.begin(), order.end(),
            [&](uint64_t p, uint64_t q) { return keys[p] < keys[q]; });

  std::vector<uint64_t> inverse(n + 1);
  for (uint64_t i = 0; i < n; ++i) inverse[order[i]] = i + 1;

  s.order.assign(n + 1, 0);
  s.successor.assign(n + 1, 0);
  s.aligned_codes.assign(n + 1, 0);
  for (uint64_t i = 1; i <= n; ++i) {
    uint64_t p = order[i - 1];
    s.order[i] = p;
    uint64_t next = s.sequence[p] == 0 ? trip_head[p] : p + 1;
    s.successor[i] = inverse[next];
    s.aligned_codes[i] = code[p];
  }
  for (uint64_t i = 1; i <= n; ++i) {
    uint32_t sym = s.sequence[s.order[i]];
    if (i == 1 || sym != s.sequence[s.order[i - 1]]) {
      s.vocab.push_back(sym);
      s.section_starts.push_back(i);
    }
  }
  return s;
}

uint64_t starts_at(const trip_corpus& corpus, uint32_t stop) {
  uint64_t count = 0;
  for (const trip& t : corpus.trips)
    if (t.stops.front() == stop) ++count;
  return count;
}

uint64_t ends_at(const trip_corpus& corpus, uint32_t stop) {
  uint64_t count = 0;
  for (const trip& t : corpus.trips)
    if (t.stops.back() == stop) ++count;
  return count;
}

uint64_t start_end(const trip_corpus& corpus, uint32_t first_stop,
                   uint32_t last_stop) {
  uint64_t count = 0;
  for (const trip& t : corpus.trips)
    if (t.stops.front() == first_stop && t.stops.back() == last_stop) ++count;
  return count;
}

uint64_t uses(const trip_corpus& corpus, uint32_t stop) {
  uint64_t count = 0;
  for (const trip& t : corpus.trips)
    for (uint32_t s : t.stops)
      if (s == stop) ++count;
  return count;
}

std::vector<std::pair<uint32_t, uint64_t>> top_stops(const trip_corpus& corpus,
                                                     uint64_t k) {
  std::map<uint32_t, uint64_t> freq;
  for (const trip& t : corpus.trips)
    for (uint32_t s : t.stops) ++freq[s];
  std::vector<std::pair<uint32_t, uint64_t>> all(freq.begin(), freq.end());
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (all.size() > k) all.resize(k);
  return all;
}

uint64_t starts_between(const trip_corpus& corpus, uint32_t stop,
                        time_interval t) {
  uint64_t count = 0;
  for (const trip& tr : corpus.trips)
    if (tr.stops.front() == stop && tr.times.front() >= t.lo &&
        tr.times.front() <= t.hi)
      ++count;
  return count;
}

uint64_t ends_between(const trip_corpus& corpus, uint32_t stop,
                      time_interval t) {
  uint64_t count = 0;
  for (const trip& tr : corpus.trips)
    if (tr.stops.back() == stop && tr.times.back() >= t.lo &&
        tr.times.back() <= t.hi)
      ++count;
  return count;
}

uint64_t uses_between(const trip_corpus& corpus, uint32_t stop,
                      time_interval t) {
  uint64_t count = 0;
  for (const trip& tr : corpus.trips)
    for (size_t k = 0; k < tr.stops.size(); ++k)
      if (tr.stops[k] == stop && tr.times[k] >= t.lo && tr.times[k] <= t.hi)
        ++count;
  return count;
}

uint64_t start_end_between(const trip_corpus& corpus, uint32_t first_stop,
                           uint32_t last_stop, time_interval t,
                           semantics sem) {
  uint64_t count = 0;
  for (const trip& tr : corpus.trips) {
    if (tr.stops.front() != first_stop || tr.stops.back() != last_stop)
      continue;
    uint32_t depart = tr.times.front();
    uint32_t arrive = tr.times.back();
    bool hit = sem == semantics::strong
                   ? depart >= t.lo && depart <= t.hi && arrive >= t.lo &&
                         arrive <= t.hi
                   : depart <= t.hi && arrive >= t.lo;
    if (hit) ++count;
  }
  return count;
}

uint64_t grid_count(const std::vector<uint32_t>& codes, uint64_t x1,
                    uint64_t x2, uint32_t y1, uint32_t y2) {
  uint64_t count = 0;
  for (uint64_t x = std::max<uint64_t>(x1, 1);
       x <= std::min<uint64_t>(x2, codes.size()); ++x)
    if (codes[x - 1] >= y1 && codes[x - 1] <= y2) ++count;
  return count;
}

std::vector<std::pair<uint64_t, uint32_t>> grid_report(
    const std::vector<uint32_t>& codes, uint64_t x1, uint64_t x2, uint32_t y1,
    uint32_t y2) {
  std::vector<std::pair<uint64_t, uint32_t>> out;
  for (uint64_t x = std::max<uint64_t>(x1, 1);
       x <= std::min<uint64_t>(x2, codes.size()); ++x)
    if (codes[x - 1] >= y1 && codes[x - 1] <= y2)
      out.emplace_back(x, codes[x - 1]);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

}  // namespace tripidx::oracle
