#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "tripidx/errors.hpp"
#include "tripidx/network.hpp"

using namespace tripidx;

namespace {

std::string demo_network_text() {
  std::string text = "# demo network\n";
  for (int s = 1; s <= 45; ++s)
    text += "stop " + std::to_string(s) + " s" + std::to_string(s) + "\n";
  text += "line 1";
  for (int s = 1; s <= 40; ++s) text += " " + std::to_string(s);
  text += "\nline 2 41 42 43 44 45\n";
  text += "window 2 360 1200\n";
  return text;
}

network_description demo_network() {
  std::istringstream in(demo_network_text());
  return parse_network(in);
}

}  // namespace

TEST_CASE("network: parsing") {
  network_description net = demo_network();
  CHECK(net.stops.size() == 45);
  REQUIRE(net.lines.size() == 2);
  CHECK(net.lines[0].stops.size() == 40);
  CHECK(net.lines[1].stops == std::vector<uint32_t>{41, 42, 43, 44, 45});
  CHECK(net.lines[0].window_begin == 0);
  CHECK(net.lines[0].window_end == 0);
  CHECK(net.lines[1].window_begin == 360);
  CHECK(net.lines[1].window_end == 1200);

  auto expect_parse_error = [](const std::string& text, const char* needle) {
    std::istringstream in(text);
    try {
      parse_network(in);
      FAIL_CHECK("expected parse_error, needle: " << needle);
    } catch (const parse_error& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("stop 1 a\nroute 1 1 2\n", "line 2");
  expect_parse_error("stop 1 a\nstop 1 b\n", "duplicate");
  expect_parse_error("stop 1 a\nstop 2 b\nline 9 1 3\n", "unknown stop");
  expect_parse_error("stop 1 a\nline 5 1\n", "at least 2");
  expect_parse_error("stop 1 a\nstop 2 b\nline 4 1 2\nwindow 4 700 600\n",
                     "window");
  expect_parse_error("line 1 1 2\n", "stop");
  expect_parse_error("# nothing\n", "no stops");
}

TEST_CASE("network: synthetic trips are deterministic per seed") {
  network_description net = demo_network();
  trip_corpus a = generate_synthetic(net, 200, 42);
  trip_corpus b = generate_synthetic(net, 200, 42);
  trip_corpus c = generate_synthetic(net, 200, 43);

  std::ostringstream wa, wb, wc;
  write_corpus(a, wa);
  write_corpus(b, wb);
  write_corpus(c, wc);
  CHECK(wa.str() == wb.str());
  CHECK(wa.str() != wc.str());
}

TEST_CASE("network: trips are contiguous line segments inside the window") {
  network_description net = demo_network();
  time_grid grid;  // default: 5-minute slots, 2304 codes
  trip_corpus c = generate_synthetic(net, 500, 7, grid);
  REQUIRE(c.trips.size() == 500);
  CHECK(c.grid == grid);

  for (const trip& t : c.trips) {
    REQUIRE(t.stops.size() >= 2);
    REQUIRE(t.stops.size() == t.times.size());
    bool contiguous = false;
    for (const network_line& line : net.lines) {
      if (line.stops.size() < t.stops.size()) continue;
      for (size_t off = 0; off + t.stops.size() <= line.stops.size(); ++off)
        if (std::equal(t.stops.begin(), t.stops.end(),
                       line.stops.begin() + off)) {
          contiguous = true;
          break;
        }
      if (contiguous) break;
    }
    CHECK(contiguous);
    for (size_t k = 0; k < t.times.size(); ++k) {
      REQUIRE(t.times[k] < grid.sigma());
      if (k > 0) REQUIRE(t.times[k] >= t.times[k - 1]);
    }
    // trips drawn from line 2 must run inside its service window; all of
    // a trip's codes share one day type, so slot-of-day is code mod slots
    if (t.stops.front() >= 41) {
      CHECK(t.times.front() % grid.slots_per_day() >=
            360 / grid.slot_minutes);
      CHECK(t.times.back() % grid.slots_per_day() <=
            1199 / grid.slot_minutes);
    }
  }
}

TEST_CASE("network: trip lengths track the requested mean") {
  network_description net = demo_network();
  trip_corpus c = generate_synthetic(net, 1000, 7);
  double total = 0;
  size_t longest = 0, shortest = 1u << 20;
  for (const trip& t : c.trips) {
    total += static_cast<double>(t.stops.size());
    longest = std::max(longest, t.stops.size());
    shortest = std::min(shortest, t.stops.size());
  }
  double mean = total / static_cast<double>(c.trips.size());
  CHECK(mean == doctest::Approx(11.81).epsilon(0.05));
  CHECK(shortest >= 2);
  CHECK(longest <= 31);
}

TEST_CASE("network: generator rejects impossible requests") {
  network_description net = demo_network();
  SUBCASE("mean outside [min, max]") {
    length_params bad{5, 10, 11.0};
    CHECK_THROWS_AS(generate_synthetic(net, 10, 1, {}, bad), config_error);
  }
  SUBCASE("min above max") {
    length_params bad{12, 10, 11.0};
    CHECK_THROWS_AS(generate_synthetic(net, 10, 1, {}, bad), config_error);
  }
  SUBCASE("min longer than the longest line") {
    length_params bad{41, 45, 42.0};
    CHECK_THROWS_AS(generate_synthetic(net, 10, 1, {}, bad), config_error);
  }
  SUBCASE("no lines") {
    network_description empty;
    empty.stops.push_back({1, "a"});
    CHECK_THROWS_AS(generate_synthetic(empty, 10, 1), config_error);
  }
}
