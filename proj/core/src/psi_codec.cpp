#include "tripidx/psi_codec.hpp"

#include <limits>
#include <string>

#include "tripidx/detail/io.hpp"
#include "tripidx/errors.hpp"

namespace tripidx {

namespace {

uint64_t zigzag(int64_t d) {
  return (static_cast<uint64_t>(d) << 1) ^ static_cast<uint64_t>(d >> 63);
}

int64_t unzigzag(uint64_t z) {
  return static_cast<int64_t>(z >> 1) ^ -static_cast<int64_t>(z & 1);
}

using detail::get_varbyte;
using detail::put_varbyte;

}  // namespace

psi_codec psi_codec::encode(const std::vector<uint32_t>& values,
                            uint32_t sample_rate) {
  if (sample_rate < 1)
    throw usage_error("psi codec: sample rate must be >= 1");
  psi_codec c;
  c.n_ = values.size();
  c.sample_rate_ = sample_rate;

  uint64_t pending_run = 0;
  auto flush_run = [&]() {
    if (pending_run == 0) return;
    if (pending_run == 1) {
      put_varbyte(c.stream_, zigzag(1));
    } else {
      c.stream_.push_back(0);
      put_varbyte(c.stream_, pending_run);
    }
    pending_run = 0;
  };

  for (uint64_t i = 0; i < c.n_; ++i) {
    if (i % sample_rate == 0) {
      flush_run();
      if (c.stream_.size() > std::numeric_limits<uint32_t>::max())
        throw build_error("psi codec: delta stream exceeds 4 GiB");
      c.sample_values_.push_back(values[i]);
      c.sample_offsets_.push_back(static_cast<uint32_t>(c.stream_.size()));
      continue;
    }
    int64_t d = static_cast<int64_t>(values[i]) - static_cast<int64_t>(values[i - 1]);
    if (d == 1) {
      ++pending_run;
    } else {
      flush_run();
      put_varbyte(c.stream_, zigzag(d));
    }
  }
  flush_run();
  return c;
}

uint32_t psi_codec::value_at(uint64_t i) const {
  if (i < 1 || i > n_)
    throw range_error("psi codec: index " + std::to_string(i) + " outside [1, " +
                      std::to_string(n_) + "]");
  uint64_t block = (i - 1) / sample_rate_;
  uint64_t remaining = (i - 1) % sample_rate_;
  int64_t v = sample_values_[block];
  uint64_t pos = sample_offsets_[block];
  while (remaining > 0) {
    uint64_t token = get_varbyte(stream_, pos);
    if (token == 0) {
      uint64_t run = get_varbyte(stream_, pos);
      uint64_t take = run < remaining ? run : remaining;
      v += static_cast<int64_t>(take);
      remaining -= take;
    } else {
      v += unzigzag(token);
      --remaining;
    }
  }
  return static_cast<uint32_t>(v);
}

psi_codec::run_stats psi_codec::stats() const {
  run_stats rs;
  rs.stream_bytes = stream_.size();
  rs.total_deltas = n_ == 0 ? 0 : n_ - sample_values_.size();
  uint64_t pos = 0;
  while (pos < stream_.size()) {
    uint64_t token = get_varbyte(stream_, pos);
    if (token == 0) rs.run_encoded += get_varbyte(stream_, pos);
  }
  return rs;
}

void psi_codec::save(std::ostream& out) const {
  detail::put_u64(out, n_);
  detail::put_u32(out, sample_rate_);
  detail::put_u64(out, sample_values_.size());
  for (size_t k = 0; k < sample_values_.size(); ++k) {
    detail::put_u32(out, sample_values_[k]);
    detail::put_u32(out, sample_offsets_[k]);
  }
  detail::put_bytes(out, stream_);
}

psi_codec psi_codec::load(std::istream& in) {
  psi_codec c;
  c.n_ = detail::get_u64(in);
  c.sample_rate_ = detail::get_u32(in);
  if (c.sample_rate_ < 1) throw io_error("psi codec record: zero sample rate");
  uint64_t samples = detail::get_u64(in);
  if (samples != (c.n_ + c.sample_rate_ - 1) / c.sample_rate_)
    throw io_error("psi codec record: sample count mismatch");
  c.sample_values_.resize(samples);
  c.sample_offsets_.resize(samples);
  for (uint64_t k = 0; k < samples; ++k) {
    c.sample_values_[k] = detail::get_u32(in);
    c.sample_offsets_[k] = detail::get_u32(in);
  }
  c.stream_ = detail::get_bytes(in);
  return c;
}

uint64_t psi_codec::serialized_bytes() const {
  return 8 + 4 + 8 + 8 * sample_values_.size() + 8 + stream_.size();
}

}  // namespace tripidx
