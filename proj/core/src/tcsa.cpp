#include "tripidx/tcsa.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

#include "tripidx/detail/io.hpp"
#include "tripidx/errors.hpp"

namespace tripidx {

namespace {

using entry = std::pair<uint32_t, uint64_t>;  // (stop id, occurrence count)

// heap/order comparator: a outranks b
bool outranks(const entry& a, const entry& b) {
  if (a.second != b.second) return a.second > b.second;
  return a.first < b.first;
}

std::vector<uint8_t> encode_vocab(const std::vector<uint32_t>& vocab) {
  std::vector<uint8_t> bytes;
  uint32_t prev = 0;
  for (uint32_t v : vocab) {
    detail::put_varbyte(bytes, v - prev);
    prev = v;
  }
  return bytes;
}

}  // namespace

tcsa tcsa::build(const trip_corpus& corpus, uint32_t sample_rate,
                 std::vector<uint32_t>* aligned_time_codes) {
  if (corpus.trips.empty())
    throw build_error("cannot build an index from an empty corpus");
  if (sample_rate < 1) throw usage_error("sample rate must be >= 1");

  uint64_t total = 1;  // global terminator
  uint32_t max_stop = 0;
  for (size_t t = 0; t < corpus.trips.size(); ++t) {
    const trip& tr = corpus.trips[t];
    if (tr.stops.size() < 2 || tr.stops.size() != tr.times.size())
      throw build_error("malformed trip at canonical rank " +
                        std::to_string(t + 1));
    for (uint32_t s : tr.stops) {
      if (s == 0) throw build_error("stop id 0 is reserved");
      max_stop = std::max(max_stop, s);
    }
    if (t > 0 && trip_order_less(tr, corpus.trips[t - 1]))
      throw build_error("corpus is not in canonical trip order");
    total += tr.stops.size() + 1;
  }
  if (total > std::numeric_limits<uint32_t>::max())
    throw build_error("corpus too large: sequence exceeds 2^32 symbols");
  if (corpus.stop_count != 0 && max_stop > corpus.stop_count)
    throw build_error("trip references stop " + std::to_string(max_stop) +
                      " beyond declared stop count " +
                      std::to_string(corpus.stop_count));
  const auto n = static_cast<uint32_t>(total);

  // 1-based working arrays over the concatenated sequence
  std::vector<uint32_t> seq(n + 1), succ(n + 1), rank_of(n + 1),
      code_at(n + 1);
  {
    uint32_t pos = 1;
    uint32_t rank = 0;
    for (const trip& tr : corpus.trips) {
      ++rank;
      uint32_t head = pos;
      for (size_t k = 0; k < tr.stops.size(); ++k, ++pos) {
        seq[pos] = tr.stops[k];
        succ[pos] = pos + 1;
        rank_of[pos] = rank;
        code_at[pos] = tr.times[k];
      }
      // separator cycles back to the trip head and carries the start code
      seq[pos] = 0;
      succ[pos] = head;
      rank_of[pos] = rank;
      code_at[pos] = tr.times.front();
      ++pos;
    }
    // global terminator: one-symbol cycle ranked before every trip
    seq[n] = 0;
    succ[n] = n;
    rank_of[n] = 0;
    code_at[n] = 0;
  }

  std::vector<uint32_t> order(n);
  for (uint32_t i = 0; i < n; ++i) order[i] = i + 1;
  std::sort(order.begin(), order.end(), [&](uint32_t p, uint32_t q) {
    // walk both suffixes in lockstep; separators of distinct trips can
    // only meet at the same offset, where trip rank decides
    while (true) {
      uint32_t a = seq[p], b = seq[q];
      if (a != b) return a < b;
      if (a == 0) return rank_of[p] < rank_of[q];
      p = succ[p];
      q = succ[q];
    }
  });

  std::vector<uint32_t> inverse(n + 1);
  for (uint32_t i = 0; i < n; ++i) inverse[order[i]] = i + 1;

  std::vector<uint32_t> successor(n);
  for (uint32_t i = 0; i < n; ++i) successor[i] = inverse[succ[order[i]]];

  bit_builder section_bits;
  std::vector<uint32_t> vocab;
  uint32_t prev_symbol = 0;
  for (uint32_t i = 0; i < n; ++i) {
    uint32_t s = seq[order[i]];
    bool head = i == 0 || s != prev_symbol;
    section_bits.push_back(head);
    if (head) vocab.push_back(s);
    prev_symbol = s;
  }

  if (aligned_time_codes) {
    aligned_time_codes->resize(n);
    for (uint32_t i = 0; i < n; ++i)
      (*aligned_time_codes)[i] = code_at[order[i]];
  }

  tcsa out;
  out.n_ = n;
  out.stop_count_ = std::max(corpus.stop_count, max_stop);
  out.trip_count_ = corpus.trips.size();
  out.vocab_ = std::move(vocab);
  out.section_bits_ = bitvector(std::move(section_bits));
  out.psi_ = psi_codec::encode(successor, sample_rate);
  return out;
}

uint64_t tcsa::psi(uint64_t i) const { return psi_.value_at(i); }

uint32_t tcsa::symbol_at(uint64_t i) const {
  if (i < 1 || i > n_)
    throw range_error("position " + std::to_string(i) + " outside [1, " +
                      std::to_string(n_) + "]");
  return vocab_[section_bits_.rank1(i) - 1];
}

tcsa::range tcsa::symbol_section(uint32_t symbol) const {
  auto it = std::lower_bound(vocab_.begin(), vocab_.end(), symbol);
  if (it == vocab_.end() || *it != symbol) return {};  // {1,0}: empty
  auto p = static_cast<uint64_t>(it - vocab_.begin()) + 1;
  uint64_t lo = section_bits_.select1(p);
  uint64_t hi = p < vocab_.size() ? section_bits_.select1(p + 1) - 1 : n_;
  return {lo, hi};
}

void tcsa::validate_pattern(std::span<const uint32_t> pattern) const {
  if (pattern.empty()) throw usage_error("empty pattern");
  for (uint32_t s : pattern)
    if (s > stop_count_)
      throw usage_error("unknown stop id " + std::to_string(s) +
                        " (stops are 1.." + std::to_string(stop_count_) + ")");
  size_t seps = 0;
  for (uint32_t s : pattern)
    if (s == 0) ++seps;
  if (seps == 0) return;  // within-trip stop run, any length
  bool ok = false;
  if (pattern.size() <= 2 && pattern[0] == 0) ok = true;  // [0], [0,X]
  else if (pattern.size() == 2 && pattern[1] == 0) ok = true;      // [X,0]
  else if (pattern.size() == 3 && pattern[0] != 0 && pattern[1] == 0 &&
           pattern[2] != 0)
    ok = true;  // [Y,0,X]
  if (!ok)
    throw usage_error(
        "unsupported pattern shape: separators may only appear as a "
        "leading symbol, a trailing symbol, or the middle of a "
        "last-separator-first triple");
}

tcsa::range tcsa::pattern_range(std::span<const uint32_t> pattern) const {
  validate_pattern(pattern);
  range sec = symbol_section(pattern[0]);
  if (sec.empty() || pattern.size() == 1) return sec;

  // order of the suffix at i against the pattern tail, walking successors
  auto tail_compare = [&](uint64_t i) {
    uint64_t j = i;
    for (size_t k = 1; k < pattern.size(); ++k) {
      j = psi_.value_at(j);
      uint32_t s = symbol_at(j);
      if (s != pattern[k]) return s < pattern[k] ? -1 : 1;
    }
    return 0;
  };

  uint64_t first_ge = sec.hi + 1;
  for (uint64_t lo = sec.lo, hi = sec.hi; lo <= hi;) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (tail_compare(mid) >= 0) {
      first_ge = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  uint64_t first_gt = sec.hi + 1;
  for (uint64_t lo = first_ge, hi = sec.hi; lo <= hi;) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (tail_compare(mid) > 0) {
      first_gt = mid;
      hi = mid - 1;
    } else {
      lo = mid + 1;
    }
  }
  if (first_ge >= first_gt) return {};
  return {first_ge, first_gt - 1};
}

tcsa::range tcsa::starts_range(uint32_t stop) const {
  if (stop < 1 || stop > stop_count_)
    throw usage_error("stop id " + std::to_string(stop) + " outside [1, " +
                      std::to_string(stop_count_) + "]");
  const uint32_t pat[] = {0, stop};
  return pattern_range(pat);
}

tcsa::range tcsa::ends_range(uint32_t stop) const {
  if (stop < 1 || stop > stop_count_)
    throw usage_error("stop id " + std::to_string(stop) + " outside [1, " +
                      std::to_string(stop_count_) + "]");
  const uint32_t pat[] = {stop, 0};
  return pattern_range(pat);
}

std::pair<tcsa::range, tcsa::range> tcsa::start_end_ranges(
    uint32_t first_stop, uint32_t last_stop) const {
  if (first_stop < 1 || first_stop > stop_count_)
    throw usage_error("stop id " + std::to_string(first_stop) +
                      " outside [1, " + std::to_string(stop_count_) + "]");
  if (last_stop < 1 || last_stop > stop_count_)
    throw usage_error("stop id " + std::to_string(last_stop) +
                      " outside [1, " + std::to_string(stop_count_) + "]");
  const uint32_t pat[] = {last_stop, 0, first_stop};
  range at_last = pattern_range(pat);
  if (at_last.empty()) return {at_last, {}};
  // psi maps the last-stop run onto a contiguous separator-section run,
  // preserving order
  return {at_last, {psi_.value_at(at_last.lo), psi_.value_at(at_last.hi)}};
}

uint64_t tcsa::uses(uint32_t stop) const { return section_range(stop).size(); }

tcsa::range tcsa::section_range(uint32_t stop) const {
  if (stop < 1 || stop > stop_count_)
    throw usage_error("stop id " + std::to_string(stop) + " outside [1, " +
                      std::to_string(stop_count_) + "]");
  return symbol_section(stop);
}

std::vector<entry> tcsa::topk_sequential(uint64_t k) const {
  if (k < 1) throw usage_error("k must be >= 1");
  std::vector<entry> heap;  // min-heap on outranks: front = worst kept
  for (uint64_t p = 2; p <= vocab_.size(); ++p) {
    uint64_t lo = section_bits_.select1(p);
    uint64_t hi = p < vocab_.size() ? section_bits_.select1(p + 1) - 1 : n_;
    entry cand{vocab_[p - 1], hi - lo + 1};
    if (heap.size() < k) {
      heap.push_back(cand);
      std::push_heap(heap.begin(), heap.end(), outranks);
    } else if (outranks(cand, heap.front())) {
      std::pop_heap(heap.begin(), heap.end(), outranks);
      heap.back() = cand;
      std::push_heap(heap.begin(), heap.end(), outranks);
    }
  }
  std::sort(heap.begin(), heap.end(), outranks);
  return heap;
}

std::vector<entry> tcsa::topk_binary(
    uint64_t k, std::vector<split_record>* splits) const {
  if (k < 1) throw usage_error("k must be >= 1");
  struct segment {
    uint64_t lo, hi;      // suffix-array positions
    uint64_t v_lo, v_hi;  // vocabulary entries (1-based), separator excluded
    uint64_t size() const { return hi - lo + 1; }
  };
  auto weaker = [](const segment& a, const segment& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.v_lo > b.v_lo;
  };
  std::priority_queue<segment, std::vector<segment>, decltype(weaker)> queue(
      weaker);
  if (vocab_.size() >= 2)
    queue.push({section_bits_.select1(2), n_, 2, vocab_.size()});

  std::vector<entry> out;
  while (!queue.empty() && out.size() < k) {
    segment seg = queue.top();
    queue.pop();
    if (seg.v_lo == seg.v_hi) {
      out.emplace_back(vocab_[seg.v_lo - 1], seg.size());
      continue;
    }
    uint64_t v_mid = (seg.v_lo + seg.v_hi) / 2;
    uint64_t boundary = section_bits_.select1(v_mid + 1);
    segment left{seg.lo, boundary - 1, seg.v_lo, v_mid};
    segment right{boundary, seg.hi, v_mid + 1, seg.v_hi};
    if (splits)
      splits->push_back({{seg.lo, seg.hi}, {left.lo, left.hi},
                         {right.lo, right.hi}});
    queue.push(left);
    queue.push(right);
  }
  return out;
}

void tcsa::save(std::ostream& out) const {
  detail::put_u64(out, n_);
  detail::put_u32(out, stop_count_);
  detail::put_u64(out, trip_count_);
  detail::put_u64(out, vocab_.size());
  detail::put_bytes(out, encode_vocab(vocab_));
  section_bits_.save(out);
  psi_.save(out);
}

tcsa tcsa::load(std::istream& in) {
  tcsa t;
  t.n_ = detail::get_u64(in);
  t.stop_count_ = detail::get_u32(in);
  t.trip_count_ = detail::get_u64(in);
  uint64_t vocab_count = detail::get_u64(in);
  std::vector<uint8_t> bytes = detail::get_bytes(in);
  t.vocab_.reserve(vocab_count);
  uint64_t pos = 0;
  uint32_t prev = 0;
  for (uint64_t i = 0; i < vocab_count; ++i) {
    uint64_t delta = detail::get_varbyte(bytes, pos);
    uint64_t v = prev + delta;
    if (v > std::numeric_limits<uint32_t>::max() || (i > 0 && delta == 0))
      throw io_error("vocabulary record is not strictly ascending");
    prev = static_cast<uint32_t>(v);
    t.vocab_.push_back(prev);
  }
  if (pos != bytes.size()) throw io_error("vocabulary record has trailing bytes");
  if (t.vocab_.empty() || t.vocab_[0] != 0)
    throw io_error("vocabulary record lacks the separator symbol");
  t.section_bits_ = bitvector::load(in);
  t.psi_ = psi_codec::load(in);
  if (t.section_bits_.size() != t.n_ || t.psi_.size() != t.n_ ||
      t.section_bits_.ones() != t.vocab_.size())
    throw io_error("index sections disagree on sequence length");
  return t;
}

uint64_t tcsa::serialized_bytes() const {
  return 8 + 4 + 8 + 8 + (8 + encode_vocab(vocab_).size()) +
         section_bits_.serialized_bytes() + psi_.serialized_bytes();
}

}  // namespace tripidx
