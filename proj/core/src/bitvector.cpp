#include "tripidx/bitvector.hpp"

#include <bit>
#include <string>

#include "tripidx/detail/io.hpp"
#include "tripidx/errors.hpp"

namespace tripidx {

namespace {

constexpr uint64_t kWordsPerSuper = 8;
constexpr uint64_t kBitsPerSuper = 512;
constexpr uint64_t kSelectSample = 8192;

// 0-based index of the r-th (1-based) set bit of w; r <= popcount(w).
unsigned select_in_word(uint64_t w, unsigned r) {
  for (unsigned byte = 0; byte < 8; ++byte) {
    uint8_t b = static_cast<uint8_t>(w >> (8 * byte));
    unsigned c = static_cast<unsigned>(std::popcount(b));
    if (r > c) {
      r -= c;
      continue;
    }
    for (unsigned bit = 0;; ++bit) {
      if ((b >> bit) & 1u) {
        if (--r == 0) return 8 * byte + bit;
      }
    }
  }
  return 64;  // unreachable for valid input
}

}  // namespace

bitvector::bitvector(std::vector<uint64_t> words, uint64_t n_bits)
    : words_(std::move(words)), n_(n_bits) {
  uint64_t need = (n_ + 63) / 64;
  if (words_.size() < need)
    throw build_error("bitvector: payload shorter than declared bit count");
  words_.resize(need);
  if (n_ % 64) words_[need - 1] &= (~uint64_t(0)) >> (64 - n_ % 64);
  build_directories();
}

bitvector::bitvector(bit_builder&& builder) {
  n_ = builder.size();
  words_ = std::move(builder).take_words();
  build_directories();
}

bitvector bitvector::from_bits(const std::vector<bool>& bits) {
  bit_builder b;
  for (bool x : bits) b.push_back(x);
  return bitvector(std::move(b));
}

void bitvector::build_directories() {
  uint64_t super_count = (words_.size() + kWordsPerSuper - 1) / kWordsPerSuper;
  counts_.assign(2 * super_count, 0);
  hints1_.clear();
  hints0_.clear();

  uint64_t abs1 = 0;
  uint64_t abs0 = 0;
  uint64_t next1 = 1;
  uint64_t next0 = 1;
  for (uint64_t s = 0; s < super_count; ++s) {
    counts_[2 * s] = abs1;
    uint64_t running = 0;
    uint64_t packed = 0;
    for (uint64_t b = 0; b < kWordsPerSuper; ++b) {
      if (b > 0) packed |= (running & 0x1ff) << (9 * (b - 1));
      running += static_cast<uint64_t>(std::popcount(word(s * kWordsPerSuper + b)));
    }
    counts_[2 * s + 1] = packed;

    uint64_t bits_here = std::min(kBitsPerSuper, n_ - std::min(n_, s * kBitsPerSuper));
    uint64_t zeros_here = bits_here - running;
    while (next1 > abs1 && next1 <= abs1 + running) {
      hints1_.push_back(s);
      next1 += kSelectSample;
    }
    while (next0 > abs0 && next0 <= abs0 + zeros_here) {
      hints0_.push_back(s);
      next0 += kSelectSample;
    }
    abs1 += running;
    abs0 += zeros_here;
  }
  ones_ = abs1;
}

bool bitvector::bit(uint64_t i) const {
  if (i < 1 || i > n_)
    throw range_error("bitvector: position " + std::to_string(i) +
                      " outside [1, " + std::to_string(n_) + "]");
  return (words_[(i - 1) / 64] >> ((i - 1) % 64)) & 1u;
}

uint64_t bitvector::rank1(uint64_t i) const {
  if (i > n_)
    throw range_error("bitvector: rank position " + std::to_string(i) +
                      " outside [0, " + std::to_string(n_) + "]");
  if (i == 0) return 0;
  uint64_t w = i / 64;
  uint64_t r = i % 64;
  uint64_t s = w / kWordsPerSuper;
  uint64_t b = w % kWordsPerSuper;
  uint64_t cnt = counts_[2 * s] + rel1(s, b);
  if (r) cnt += static_cast<uint64_t>(std::popcount(word(w) & ((~uint64_t(0)) >> (64 - r))));
  return cnt;
}

uint64_t bitvector::rank0(uint64_t i) const { return i - rank1(i); }

uint64_t bitvector::select1(uint64_t j) const {
  if (j < 1 || j > ones_)
    throw not_found_error("bitvector: select1 ordinal " + std::to_string(j) +
                          " exceeds population " + std::to_string(ones_));
  uint64_t k = (j - 1) / kSelectSample;
  uint64_t super_count = counts_.size() / 2;
  uint64_t lo = hints1_[k];
  uint64_t hi = (k + 1 < hints1_.size()) ? hints1_[k + 1] : super_count - 1;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo + 1) / 2;
    if (counts_[2 * mid] < j)
      lo = mid;
    else
      hi = mid - 1;
  }
  uint64_t local = j - counts_[2 * lo];
  uint64_t base = lo * kWordsPerSuper;
  for (uint64_t b = 0; b < kWordsPerSuper; ++b) {
    uint64_t w = word(base + b);
    uint64_t c = static_cast<uint64_t>(std::popcount(w));
    if (local <= c)
      return (base + b) * 64 + select_in_word(w, static_cast<unsigned>(local)) + 1;
    local -= c;
  }
  throw not_found_error("bitvector: select1 directory corrupt");
}

uint64_t bitvector::select0(uint64_t j) const {
  uint64_t zeros_total = n_ - ones_;
  if (j < 1 || j > zeros_total)
    throw not_found_error("bitvector: select0 ordinal " + std::to_string(j) +
                          " exceeds population " + std::to_string(zeros_total));
  uint64_t k = (j - 1) / kSelectSample;
  uint64_t super_count = counts_.size() / 2;
  uint64_t lo = hints0_[k];
  uint64_t hi = (k + 1 < hints0_.size()) ? hints0_[k + 1] : super_count - 1;
  auto abs0 = [&](uint64_t s) { return s * kBitsPerSuper - counts_[2 * s]; };
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo + 1) / 2;
    if (abs0(mid) < j)
      lo = mid;
    else
      hi = mid - 1;
  }
  uint64_t local = j - abs0(lo);
  uint64_t base = lo * kWordsPerSuper;
  for (uint64_t b = 0; b < kWordsPerSuper; ++b) {
    uint64_t w = ~word(base + b);
    uint64_t c = static_cast<uint64_t>(std::popcount(w));
    if (local <= c)
      return (base + b) * 64 + select_in_word(w, static_cast<unsigned>(local)) + 1;
    local -= c;
  }
  throw not_found_error("bitvector: select0 directory corrupt");
}

void bitvector::save(std::ostream& out) const {
  detail::put_u64(out, n_);
  detail::put_u64(out, ones_);
  for (uint64_t w : words_) detail::put_u64(out, w);
  detail::put_u64_vec(out, counts_);
  detail::put_u64_vec(out, hints1_);
  detail::put_u64_vec(out, hints0_);
}

bitvector bitvector::load(std::istream& in) {
  bitvector bv;
  bv.n_ = detail::get_u64(in);
  bv.ones_ = detail::get_u64(in);
  bv.words_.resize((bv.n_ + 63) / 64);
  for (auto& w : bv.words_) w = detail::get_u64(in);
  bv.counts_ = detail::get_u64_vec(in);
  bv.hints1_ = detail::get_u64_vec(in);
  bv.hints0_ = detail::get_u64_vec(in);
  uint64_t super_count = (bv.words_.size() + kWordsPerSuper - 1) / kWordsPerSuper;
  if (bv.counts_.size() != 2 * super_count)
    throw io_error("bitvector record: directory size mismatch");
  return bv;
}

uint64_t bitvector::serialized_bytes() const {
  return 16 + 8 * words_.size() + 8 + 8 * counts_.size() + 8 +
         8 * hints1_.size() + 8 + 8 * hints0_.size();
}

}  // namespace tripidx
