#include <chrono>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "support/corpus_e.hpp"
#include "tripidx/corpus.hpp"
#include "tripidx/errors.hpp"
#include "tripidx/time_grid.hpp"

using namespace tripidx;

TEST_CASE("time grid: code arithmetic under the default grid") {
  time_grid g;
  CHECK(g.slots_per_day() == 288);
  CHECK(g.sigma() == 2304);
  CHECK(discretize(g, 0, 0) == 0);
  CHECK(discretize(g, 0, 7) == 1);
  CHECK(discretize(g, 0, 1439) == 287);
  CHECK(discretize(g, 3, 555) == 975);
  CHECK(discretize(g, 7, 1439) == 2303);
  CHECK_THROWS_AS(discretize(g, 8, 0), config_error);
  CHECK_THROWS_AS(discretize(g, 0, 1440), usage_error);

  time_grid ragged{7, 2, 100};  // 100/7 rounds up
  CHECK(ragged.slots_per_day() == 15);
  CHECK(ragged.sigma() == 30);
  CHECK(discretize(ragged, 1, 99) == 15 + 14);

  CHECK_THROWS_AS((time_grid{0, 8, 1440}.validate()), config_error);
  CHECK_THROWS_AS((time_grid{5, 0, 1440}.validate()), config_error);
  CHECK_THROWS_AS((time_grid{5, 8, 0}.validate()), config_error);
}

TEST_CASE("time grid: default day classifier") {
  using std::chrono::day;
  using std::chrono::month;
  using std::chrono::year;
  auto ymd = [](int y, unsigned m, unsigned d) {
    return std::chrono::year_month_day{year{y}, month{m}, day{d}};
  };
  CHECK(default_day_classifier(ymd(2026, 1, 5)) == 0);   // Monday
  CHECK(default_day_classifier(ymd(2026, 1, 8)) == 0);   // Thursday
  CHECK(default_day_classifier(ymd(2026, 1, 9)) == 1);   // Friday
  CHECK(default_day_classifier(ymd(2026, 1, 10)) == 2);  // Saturday
  CHECK(default_day_classifier(ymd(2026, 1, 11)) == 3);  // Sunday
  CHECK(default_day_classifier(ymd(2026, 7, 6)) == 4);   // high-season Monday
  CHECK(default_day_classifier(ymd(2026, 8, 15)) == 6);  // high-season Saturday

  time_grid g;
  CHECK(discretize(g, default_day_classifier, ymd(2026, 1, 10), 30) ==
        2 * 288 + 6);
}

TEST_CASE("corpus: canonical trip order on the worked example") {
  trip_corpus sorted = testsup::corpus_e_sorted();
  REQUIRE(sorted.trips.size() == 6);
  auto expect = [&](size_t rank, std::vector<uint32_t> stops,
                    std::vector<uint32_t> times) {
    CAPTURE(rank);
    CHECK(sorted.trips[rank - 1].stops == stops);
    CHECK(sorted.trips[rank - 1].times == times);
  };
  expect(1, {1, 2, 3}, {0, 1, 2});
  expect(2, {1, 2, 3}, {5, 6, 7});
  expect(3, {2, 3, 10, 6}, {10, 11, 12, 13});
  expect(4, {2, 3, 10, 4, 7}, {2, 3, 4, 5, 6});
  expect(5, {3, 10, 5}, {9, 10, 11});
  expect(6, {9, 8, 7}, {12, 13, 14});
}

TEST_CASE("corpus: ordering ties") {
  SUBCASE("singleton stays put") {
    trip_corpus c;
    c.stop_count = 2;
    c.trips.push_back({{1, 2}, {0, 1}, 1});
    trip_corpus s = sort_trips(c);
    CHECK(s.trips.size() == 1);
    CHECK(s.trips[0].stops == std::vector<uint32_t>{1, 2});
  }
  SUBCASE("identical trips keep input order") {
    trip_corpus c;
    c.stop_count = 3;
    c.trips.push_back({{1, 3}, {5, 6}, 1});
    c.trips.push_back({{1, 3}, {5, 6}, 2});
    c.trips.push_back({{1, 3}, {5, 6}, 3});
    trip_corpus s = sort_trips(c);
    CHECK(s.trips[0].input_ordinal == 1);
    CHECK(s.trips[1].input_ordinal == 2);
    CHECK(s.trips[2].input_ordinal == 3);
  }
  SUBCASE("inner stops break first/last/start ties") {
    trip_corpus c;
    c.stop_count = 9;
    c.trips.push_back({{1, 5, 9}, {0, 1, 2}, 1});
    c.trips.push_back({{1, 4, 9}, {0, 1, 2}, 2});
    trip_corpus s = sort_trips(c);
    CHECK(s.trips[0].stops[1] == 4);
    CHECK(s.trips[1].stops[1] == 5);
  }
  SUBCASE("when inner stops agree the shorter trip sorts first") {
    trip_corpus c;
    c.stop_count = 9;
    c.trips.push_back({{1, 5, 9, 9}, {0, 1, 2, 3}, 1});
    c.trips.push_back({{1, 5, 9}, {0, 1, 2}, 2});
    trip_corpus s = sort_trips(c);
    CHECK(s.trips[0].stops.size() == 3);
    CHECK(s.trips[1].stops.size() == 4);
  }
}

TEST_CASE("corpus: text parsing") {
  SUBCASE("happy path with comments and blanks") {
    std::istringstream in(
        "# header comment\n"
        "\n"
        "2:2 3:3 10:4 4:5 7:6\n"
        "1:0 2:1 3:2\n");
    trip_corpus c = parse_corpus(in);
    REQUIRE(c.trips.size() == 2);
    CHECK(c.stop_count == 10);
    CHECK(c.trips[0].stops == std::vector<uint32_t>{2, 3, 10, 4, 7});
    CHECK(c.trips[0].times == std::vector<uint32_t>{2, 3, 4, 5, 6});
    CHECK(c.trips[0].input_ordinal == 1);
    CHECK(c.trips[1].input_ordinal == 2);
  }
  SUBCASE("errors name the line") {
    auto expect_parse_error = [](const char* text, const char* needle) {
      std::istringstream in(text);
      try {
        parse_corpus(in);
        FAIL_CHECK("expected parse_error for: " << text);
      } catch (const parse_error& e) {
        CHECK(std::string(e.what()).find(needle) != std::string::npos);
      }
    };
    expect_parse_error("1:0 2:x\n", "line 1");
    expect_parse_error("1:0 2:1\n\n3:4 bogus\n", "line 3");
    expect_parse_error("0:5 1:6\n", "line 1");
    expect_parse_error("3:5 4:4\n", "line 1");
    expect_parse_error("5:1\n", "line 1");
  }
  SUBCASE("write/parse round trip") {
    trip_corpus c = testsup::corpus_e_sorted();
    std::stringstream buf;
    write_corpus(c, buf);
    trip_corpus back = parse_corpus(buf, c.grid);
    REQUIRE(back.trips.size() == c.trips.size());
    for (size_t i = 0; i < c.trips.size(); ++i) {
      CHECK(back.trips[i].stops == c.trips[i].stops);
      CHECK(back.trips[i].times == c.trips[i].times);
    }
    CHECK(back.stop_count == c.stop_count);
  }
}

TEST_CASE("corpus: structural validation") {
  trip_corpus c = testsup::corpus_e();
  CHECK_NOTHROW(validate_corpus(c));

  SUBCASE("empty corpus") {
    trip_corpus empty;
    empty.stop_count = 3;
    CHECK_THROWS_AS(validate_corpus(empty), build_error);
  }
  SUBCASE("stop outside the declared range") {
    c.trips[0].stops[1] = 11;
    CHECK_THROWS_AS(validate_corpus(c), build_error);
  }
  SUBCASE("time code outside the grid") {
    c.trips[2].times[2] = c.grid.sigma();
    CHECK_THROWS_AS(validate_corpus(c), build_error);
  }
  SUBCASE("decreasing times") {
    c.trips[0].times[1] = 0;
    CHECK_THROWS_AS(validate_corpus(c), build_error);
  }
  SUBCASE("too short") {
    c.trips[0].stops = {2};
    c.trips[0].times = {2};
    CHECK_THROWS_AS(validate_corpus(c), build_error);
  }
}
