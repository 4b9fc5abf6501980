#include "tripidx/time_grid.hpp"

#include <limits>
#include <string>

#include "tripidx/errors.hpp"

namespace tripidx {

void time_grid::validate() const {
  if (slot_minutes == 0) throw config_error("time grid: slot width must be positive");
  if (day_type_count == 0) throw config_error("time grid: need at least one day type");
  if (day_minutes == 0) throw config_error("time grid: day length must be positive");
  uint64_t codes = uint64_t(day_type_count) * slots_per_day();
  if (codes > std::numeric_limits<uint32_t>::max())
    throw config_error("time grid: code space does not fit in 32 bits");
}

uint32_t discretize(const time_grid& grid, uint32_t day_type,
                    uint32_t minute_of_day) {
  grid.validate();
  if (day_type >= grid.day_type_count)
    throw config_error("discretize: day type " + std::to_string(day_type) +
                       " not mapped by a grid with " +
                       std::to_string(grid.day_type_count) + " types");
  if (minute_of_day >= grid.day_minutes)
    throw usage_error("discretize: minute " + std::to_string(minute_of_day) +
                      " outside a " + std::to_string(grid.day_minutes) +
                      "-minute day");
  return day_type * grid.slots_per_day() + minute_of_day / grid.slot_minutes;
}

uint32_t discretize(const time_grid& grid, const day_classifier& classify,
                    const std::chrono::year_month_day& date,
                    uint32_t minute_of_day) {
  if (!classify) throw config_error("discretize: no day classifier configured");
  return discretize(grid, classify(date), minute_of_day);
}

uint32_t default_day_classifier(const std::chrono::year_month_day& date) {
  std::chrono::weekday wd{std::chrono::sys_days{date}};
  uint32_t base;
  if (wd == std::chrono::Saturday)
    base = 2;
  else if (wd == std::chrono::Sunday)
    base = 3;
  else if (wd == std::chrono::Friday)
    base = 1;
  else
    base = 0;
  unsigned month = static_cast<unsigned>(date.month());
  bool high_season = month == 7 || month == 8;
  return base + (high_season ? 4 : 0);
}

}  // namespace tripidx
