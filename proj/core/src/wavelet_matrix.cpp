#include "tripidx/wavelet_matrix.hpp"

#include <bit>
#include <string>

#include "tripidx/detail/io.hpp"
#include "tripidx/errors.hpp"

namespace tripidx {

wavelet_matrix wavelet_matrix::build(const std::vector<uint32_t>& codes,
                                     uint32_t sigma) {
  if (sigma < 1) throw build_error("alphabet size must be >= 1");
  for (uint32_t c : codes)
    if (c >= sigma)
      throw build_error("code " + std::to_string(c) +
                        " outside alphabet [0, " + std::to_string(sigma) +
                        ")");
  wavelet_matrix wm;
  wm.n_ = codes.size();
  wm.sigma_ = sigma;
  wm.levels_ = std::max<uint32_t>(1, std::bit_width(sigma - 1));

  std::vector<uint32_t> cur = codes;
  std::vector<uint32_t> next(cur.size());
  wm.rows_.reserve(wm.levels_);
  wm.zeros_.reserve(wm.levels_);
  for (uint32_t level = 0; level < wm.levels_; ++level) {
    const uint32_t shift = wm.levels_ - 1 - level;
    bit_builder bits;
    size_t nz = 0;
    for (uint32_t c : cur) {
      bool b = (c >> shift) & 1u;
      bits.push_back(b);
      if (!b) next[nz++] = c;
    }
    size_t at = nz;
    for (uint32_t c : cur)
      if ((c >> shift) & 1u) next[at++] = c;
    wm.rows_.emplace_back(std::move(bits));
    wm.zeros_.push_back(nz);
    cur.swap(next);
  }
  return wm;
}

uint32_t wavelet_matrix::access(uint64_t i) const {
  if (i < 1 || i > n_)
    throw range_error("position " + std::to_string(i) + " outside [1, " +
                      std::to_string(n_) + "]");
  uint32_t code = 0;
  for (uint32_t level = 0; level < levels_; ++level) {
    const bitvector& row = rows_[level];
    code <<= 1;
    if (row.bit(i)) {
      code |= 1u;
      i = zeros_[level] + row.rank1(i);
    } else {
      i = row.rank0(i);
    }
  }
  return code;
}

uint64_t wavelet_matrix::rank(uint32_t code, uint64_t i) const {
  if (code >= sigma_)
    throw usage_error("code " + std::to_string(code) +
                      " outside alphabet [0, " + std::to_string(sigma_) + ")");
  if (i > n_)
    throw range_error("position " + std::to_string(i) + " outside [0, " +
                      std::to_string(n_) + "]");
  uint64_t lo = 0, hi = i;  // prefix counts bounding the code's node
  for (uint32_t level = 0; level < levels_; ++level) {
    const bitvector& row = rows_[level];
    if ((code >> (levels_ - 1 - level)) & 1u) {
      lo = zeros_[level] + row.rank1(lo);
      hi = zeros_[level] + row.rank1(hi);
    } else {
      lo = row.rank0(lo);
      hi = row.rank0(hi);
    }
  }
  return hi - lo;
}

uint64_t wavelet_matrix::select(uint32_t code, uint64_t j) const {
  if (code >= sigma_)
    throw usage_error("code " + std::to_string(code) +
                      " outside alphabet [0, " + std::to_string(sigma_) + ")");
  if (j < 1) throw not_found_error("select ordinal must be >= 1");
  // descend to the code's bottom node, recording its start offset per level
  std::vector<uint64_t> starts(levels_ + 1);
  starts[0] = 0;
  for (uint32_t level = 0; level < levels_; ++level) {
    const bitvector& row = rows_[level];
    if ((code >> (levels_ - 1 - level)) & 1u)
      starts[level + 1] = zeros_[level] + row.rank1(starts[level]);
    else
      starts[level + 1] = row.rank0(starts[level]);
  }
  if (j > rank(code, n_))
    throw not_found_error("code " + std::to_string(code) +
                          " has no occurrence " + std::to_string(j));
  uint64_t pos = starts[levels_] + j;
  for (uint32_t level = levels_; level-- > 0;) {
    const bitvector& row = rows_[level];
    if ((code >> (levels_ - 1 - level)) & 1u)
      pos = row.select1(pos - zeros_[level]);
    else
      pos = row.select0(pos);
  }
  return pos;
}

void wavelet_matrix::check_box(uint64_t x1, uint64_t x2, uint32_t y1,
                               uint32_t y2) const {
  if (x1 < 1 || x1 > x2 || x2 > n_)
    throw usage_error("positions [" + std::to_string(x1) + ", " +
                      std::to_string(x2) + "] not within [1, " +
                      std::to_string(n_) + "]");
  if (y1 > y2 || y2 >= sigma_)
    throw usage_error("codes [" + std::to_string(y1) + ", " +
                      std::to_string(y2) + "] not within [0, " +
                      std::to_string(sigma_) + ")");
}

uint64_t wavelet_matrix::count(uint64_t x1, uint64_t x2, uint32_t y1,
                               uint32_t y2) const {
  check_box(x1, x2, y1, y2);
  struct frame {
    uint32_t level;
    uint64_t lo, hi;  // prefix counts: node occupies (lo, hi]
    uint32_t a, b;    // code interval of the node
  };
  uint64_t total = 0;
  std::vector<frame> stack;
  stack.push_back({0, x1 - 1, x2, 0,
                   static_cast<uint32_t>((uint64_t{1} << levels_) - 1)});
  while (!stack.empty()) {
    frame f = stack.back();
    stack.pop_back();
    if (f.hi <= f.lo || f.b < y1 || f.a > y2) continue;
    if (y1 <= f.a && f.b <= y2) {
      total += f.hi - f.lo;
      continue;
    }
    const bitvector& row = rows_[f.level];
    uint32_t mid = f.a + (f.b - f.a) / 2;
    stack.push_back({f.level + 1, row.rank0(f.lo), row.rank0(f.hi), f.a, mid});
    stack.push_back({f.level + 1, zeros_[f.level] + row.rank1(f.lo),
                     zeros_[f.level] + row.rank1(f.hi), mid + 1, f.b});
  }
  return total;
}

std::vector<std::pair<uint64_t, uint32_t>> wavelet_matrix::report(
    uint64_t x1, uint64_t x2, uint32_t y1, uint32_t y2) const {
  check_box(x1, x2, y1, y2);
  std::vector<std::pair<uint64_t, uint32_t>> out;
  struct frame {
    uint32_t level;
    uint64_t lo, hi;
    uint32_t a, b;
  };
  // recursive lambda via explicit stack, left child first for code order
  std::vector<frame> stack;
  stack.push_back({0, x1 - 1, x2, 0,
                   static_cast<uint32_t>((uint64_t{1} << levels_) - 1)});
  while (!stack.empty()) {
    frame f = stack.back();
    stack.pop_back();
    if (f.hi <= f.lo || f.b < y1 || f.a > y2) continue;
    if (f.level == levels_) {
      // bottom node: every entry is code f.a; walk each back to its position
      for (uint64_t p = f.lo + 1; p <= f.hi; ++p) {
        uint64_t pos = p;
        for (uint32_t level = levels_; level-- > 0;) {
          const bitvector& row = rows_[level];
          if ((f.a >> (levels_ - 1 - level)) & 1u)
            pos = row.select1(pos - zeros_[level]);
          else
            pos = row.select0(pos);
        }
        out.emplace_back(pos, f.a);
      }
      continue;
    }
    const bitvector& row = rows_[f.level];
    uint32_t mid = f.a + (f.b - f.a) / 2;
    stack.push_back({f.level + 1, zeros_[f.level] + row.rank1(f.lo),
                     zeros_[f.level] + row.rank1(f.hi), mid + 1, f.b});
    stack.push_back({f.level + 1, row.rank0(f.lo), row.rank0(f.hi), f.a, mid});
  }
  return out;
}

void wavelet_matrix::save(std::ostream& out) const {
  detail::put_u64(out, n_);
  detail::put_u32(out, sigma_);
  detail::put_u32(out, levels_);
  detail::put_u64_vec(out, zeros_);
  for (const bitvector& row : rows_) row.save(out);
}

wavelet_matrix wavelet_matrix::load(std::istream& in) {
  wavelet_matrix wm;
  wm.n_ = detail::get_u64(in);
  wm.sigma_ = detail::get_u32(in);
  wm.levels_ = detail::get_u32(in);
  if (wm.sigma_ < 1 ||
      wm.levels_ != std::max<uint32_t>(1, std::bit_width(wm.sigma_ - 1)))
    throw io_error("level count disagrees with alphabet size");
  wm.zeros_ = detail::get_u64_vec(in);
  if (wm.zeros_.size() != wm.levels_)
    throw io_error("zero-count record disagrees with level count");
  wm.rows_.reserve(wm.levels_);
  for (uint32_t level = 0; level < wm.levels_; ++level) {
    wm.rows_.push_back(bitvector::load(in));
    if (wm.rows_.back().size() != wm.n_)
      throw io_error("bitmap row disagrees with sequence length");
    if (wm.rows_.back().zeros() != wm.zeros_[level])
      throw io_error("bitmap row disagrees with zero counts");
  }
  return wm;
}

uint64_t wavelet_matrix::serialized_bytes() const {
  uint64_t bytes = 8 + 4 + 4 + 8 + 8 * zeros_.size();
  for (const bitvector& row : rows_) bytes += row.serialized_bytes();
  return bytes;
}

}  // namespace tripidx
