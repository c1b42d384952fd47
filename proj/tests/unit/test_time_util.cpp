#include <catch2/catch_amalgamated.hpp>

#include "lognarrator/time_util.hpp"

using namespace lognar;

TEST_CASE("civil round trip") {
  CivilTime c{2018, 1, 5, 10, 30, 0};
  Instant t = instant_from_civil(c);
  CivilTime back = civil_from_instant(t);
  CHECK(back.year == 2018);
  CHECK(back.month == 1);
  CHECK(back.day == 5);
  CHECK(back.hour == 10);
  CHECK(back.minute == 30);
  CHECK(format_iso_utc(t) == "2018-01-05T10:30:00Z");
}

TEST_CASE("default pattern parses RFC 3339 shapes") {
  auto t1 = try_parse_timestamp("2018-01-05T10:00:00Z", kDefaultTimestampPattern);
  REQUIRE(t1);
  CHECK(format_iso_utc(*t1) == "2018-01-05T10:00:00Z");

  SECTION("fraction is accepted and dropped") {
    auto t2 = try_parse_timestamp("2018-01-05T10:00:00.250Z", kDefaultTimestampPattern);
    REQUIRE(t2);
    CHECK(*t2 == *t1);
  }
  SECTION("offsets are normalized to UTC") {
    auto t3 = try_parse_timestamp("2018-01-05T12:00:00+02:00", kDefaultTimestampPattern);
    REQUIRE(t3);
    CHECK(*t3 == *t1);
    auto t4 = try_parse_timestamp("2018-01-05T08:00:00-0200", kDefaultTimestampPattern);
    REQUIRE(t4);
    CHECK(*t4 == *t1);
  }
  SECTION("naive timestamps use the default zone") {
    auto naive = try_parse_timestamp("2018-01-05T10:00:00", kDefaultTimestampPattern);
    REQUIRE(naive);
    CHECK(*naive == *t1);
    auto shifted = try_parse_timestamp("2018-01-05T12:00:00", kDefaultTimestampPattern,
                                       2 * kHour);
    REQUIRE(shifted);
    CHECK(*shifted == *t1);
  }
}

TEST_CASE("custom patterns") {
  auto t = try_parse_timestamp("05/01/2018 10:00", "%d/%m/%Y %H:%M");
  REQUIRE(t);
  CHECK(format_iso_utc(*t) == "2018-01-05T10:00:00Z");

  CHECK_FALSE(try_parse_timestamp("2018-13-05T10:00:00Z", kDefaultTimestampPattern));
  CHECK_FALSE(try_parse_timestamp("2018-02-30T10:00:00Z", kDefaultTimestampPattern));
  CHECK_FALSE(try_parse_timestamp("2018-01-05T25:00:00Z", kDefaultTimestampPattern));
  CHECK_FALSE(try_parse_timestamp("garbage", kDefaultTimestampPattern));
  CHECK_FALSE(try_parse_timestamp("2018-01-05T10:00:00Z junk", kDefaultTimestampPattern));

  CHECK_THROWS_AS(validate_timestamp_pattern("%Y-%q"), ConfigError);
  CHECK_NOTHROW(validate_timestamp_pattern(kDefaultTimestampPattern));
}

TEST_CASE("windows are half-open") {
  auto w = try_parse_window("2018-01-01..2018-07-01");
  REQUIRE(w);
  CHECK(w->contains(instant_from_civil({2018, 1, 1})));
  CHECK(w->contains(instant_from_civil({2018, 6, 30, 23, 59, 59})));
  CHECK_FALSE(w->contains(instant_from_civil({2018, 7, 1})));

  auto adjacent = try_parse_window("2018-07-01..2019-01-01");
  REQUIRE(adjacent);
  CHECK_FALSE(w->overlaps(*adjacent));

  CHECK_FALSE(try_parse_window("2018-07-01..2018-01-01"));  // reversed
  CHECK_FALSE(try_parse_window("2018-07-01"));              // no '..'
}
