#include "tripidx/container.hpp"

#include <bit>
#include <fstream>
#include <sstream>

#include "tripidx/detail/io.hpp"
#include "tripidx/errors.hpp"

namespace tripidx {

namespace {

constexpr char kMagic[5] = {'T', 'C', 'T', 'R', '1'};
constexpr uint16_t kVersion = 1;

std::vector<uint8_t> to_blob(const auto& part) {
  std::ostringstream buf(std::ios::binary);
  part.save(buf);
  std::string s = std::move(buf).str();
  return {s.begin(), s.end()};
}

template <typename Part>
Part from_blob(const std::vector<uint8_t>& blob, const char* what) {
  std::istringstream buf(std::string(blob.begin(), blob.end()),
                         std::ios::binary);
  Part part = Part::load(buf);
  if (static_cast<uint64_t>(buf.tellg()) != blob.size())
    throw io_error(std::string(what) + " section length mismatch");
  return part;
}

}  // namespace

void save_index(const trip_index& index, std::ostream& out) {
  out.write(kMagic, sizeof kMagic);
  detail::put_u16(out, kVersion);
  detail::put_u8(out, 1);  // little-endian payload
  detail::put_u8(out, 0);
  detail::put_u32(out, index.grid().slot_minutes);
  detail::put_u32(out, index.grid().day_type_count);
  detail::put_u32(out, index.grid().day_minutes);
  detail::put_bytes(out, to_blob(index.stops()));
  detail::put_bytes(out, to_blob(index.times()));
  if (!out) throw io_error("write failed");
}

trip_index load_index(std::istream& in) {
  char magic[5];
  in.read(magic, sizeof magic);
  if (in.gcount() != sizeof magic ||
      !std::equal(magic, magic + sizeof magic, kMagic))
    throw io_error("not an index container (bad magic)");
  uint16_t version = detail::get_u16(in);
  if (version != kVersion)
    throw io_error("unsupported container version " + std::to_string(version));
  uint8_t endian = detail::get_u8(in);
  if (endian != 1) throw io_error("unsupported payload endianness");
  detail::get_u8(in);  // reserved
  time_grid grid;
  grid.slot_minutes = detail::get_u32(in);
  grid.day_type_count = detail::get_u32(in);
  grid.day_minutes = detail::get_u32(in);
  tcsa stops = from_blob<tcsa>(detail::get_bytes(in), "stop index");
  wavelet_matrix times =
      from_blob<wavelet_matrix>(detail::get_bytes(in), "time index");
  return trip_index::from_parts(std::move(stops), std::move(times), grid);
}

void save_index_file(const trip_index& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open " + path + " for writing");
  save_index(index, out);
  out.flush();
  if (!out) throw io_error("write to " + path + " failed");
}

trip_index load_index_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  return load_index(in);
}

space_report measure(const trip_index& index) {
  space_report r;
  uint64_t occurrences =
      index.stops().size() - index.stops().trip_count() - 1;
  uint32_t width = std::max<uint32_t>(1, std::bit_width(index.stop_count()));
  r.plain_baseline_bytes = (occurrences * width + 7) / 8;
  r.stops_index_bytes = index.stops().serialized_bytes();
  r.time_index_bytes = index.times().serialized_bytes();
  return r;
}

}  // namespace tripidx
