#pragma once

// Little-endian stream primitives shared by all serialized records.
// Byte-wise shifts keep the on-disk format independent of host endianness.

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "tripidx/errors.hpp"

namespace tripidx::detail {

inline void put_u8(std::ostream& out, uint8_t v) {
  out.put(static_cast<char>(v));
}

inline void put_u16(std::ostream& out, uint16_t v) {
  for (int i = 0; i < 2; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u32(std::ostream& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline void put_u64(std::ostream& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline uint8_t get_u8(std::istream& in) {
  int c = in.get();
  if (c == std::char_traits<char>::eof()) throw io_error("unexpected end of stream");
  return static_cast<uint8_t>(c);
}

inline uint16_t get_u16(std::istream& in) {
  uint16_t v = 0;
  for (int i = 0; i < 2; ++i) v |= static_cast<uint16_t>(get_u8(in)) << (8 * i);
  return v;
}

inline uint32_t get_u32(std::istream& in) {
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(get_u8(in)) << (8 * i);
  return v;
}

inline uint64_t get_u64(std::istream& in) {
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(get_u8(in)) << (8 * i);
  return v;
}

inline void put_u64_vec(std::ostream& out, const std::vector<uint64_t>& v) {
  put_u64(out, v.size());
  for (uint64_t x : v) put_u64(out, x);
}

inline std::vector<uint64_t> get_u64_vec(std::istream& in) {
  uint64_t len = get_u64(in);
  std::vector<uint64_t> v(len);
  for (uint64_t i = 0; i < len; ++i) v[i] = get_u64(in);
  return v;
}

inline void put_bytes(std::ostream& out, const std::vector<uint8_t>& v) {
  put_u64(out, v.size());
  out.write(reinterpret_cast<const char*>(v.data()),
            static_cast<std::streamsize>(v.size()));
}

inline std::vector<uint8_t> get_bytes(std::istream& in) {
  uint64_t len = get_u64(in);
  std::vector<uint8_t> v(len);
  in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(len));
  if (static_cast<uint64_t>(in.gcount()) != len)
    throw io_error("unexpected end of stream");
  return v;
}

inline void put_varbyte(std::vector<uint8_t>& out, uint64_t v) {
  while (v >= 0x80) {
    out.push_back(static_cast<uint8_t>(v) | 0x80);
    v >>= 7;
  }
  out.push_back(static_cast<uint8_t>(v));
}

inline uint64_t get_varbyte(const std::vector<uint8_t>& in, uint64_t& pos) {
  uint64_t v = 0;
  unsigned shift = 0;
  while (true) {
    if (pos >= in.size()) throw io_error("varbyte stream truncated");
    uint8_t b = in[pos++];
    if (shift >= 64) throw io_error("varbyte value overflows 64 bits");
    v |= static_cast<uint64_t>(b & 0x7f) << shift;
    if (!(b & 0x80)) return v;
    shift += 7;
  }
}

}  // namespace tripidx::detail
