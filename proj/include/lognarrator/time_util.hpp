#pragma once

// Calendar and timestamp helpers. Every instant in the library is UTC,
// stored as whole seconds since the Unix epoch; durations are integer
// seconds. Humanization into weeks/days/... happens only at realization.

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "lognarrator/errors.hpp"

namespace lognar {

using Instant = std::int64_t;  // seconds since 1970-01-01T00:00:00Z
using Seconds = std::int64_t;

inline constexpr Seconds kMinute = 60;
inline constexpr Seconds kHour = 3600;
inline constexpr Seconds kDay = 86400;
inline constexpr Seconds kWeek = 7 * kDay;

struct CivilTime {
  int year = 1970;
  int month = 1;
  int day = 1;
  int hour = 0;
  int minute = 0;
  int second = 0;
};

inline bool civil_date_valid(int y, int m, int d) {
  return (std::chrono::year{y} / m / d).ok();
}

inline std::int64_t days_from_civil(int y, int m, int d) {
  using namespace std::chrono;
  return sys_days(year{y} / m / d).time_since_epoch().count();
}

inline void civil_from_days(std::int64_t days, int& y, int& m, int& d) {
  using namespace std::chrono;
  year_month_day ymd{sys_days(std::chrono::days(days))};
  y = static_cast<int>(ymd.year());
  m = static_cast<int>(static_cast<unsigned>(ymd.month()));
  d = static_cast<int>(static_cast<unsigned>(ymd.day()));
}

// zone_offset is the UTC offset of the civil reading (east positive).
inline Instant instant_from_civil(const CivilTime& c, Seconds zone_offset = 0) {
  return days_from_civil(c.year, c.month, c.day) * kDay + c.hour * kHour +
         c.minute * kMinute + c.second - zone_offset;
}

inline CivilTime civil_from_instant(Instant t) {
  std::int64_t days = t >= 0 ? t / kDay : (t - (kDay - 1)) / kDay;  // floor
  std::int64_t sod = t - days * kDay;
  CivilTime c;
  civil_from_days(days, c.year, c.month, c.day);
  c.hour = static_cast<int>(sod / kHour);
  c.minute = static_cast<int>((sod % kHour) / kMinute);
  c.second = static_cast<int>(sod % kMinute);
  return c;
}

inline std::string format_iso_utc(Instant t) {
  CivilTime c = civil_from_instant(t);
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month,
                c.day, c.hour, c.minute, c.second);
  return buf;
}

inline std::string format_iso_date(Instant t) {
  CivilTime c = civil_from_instant(t);
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", c.year, c.month, c.day);
  return buf;
}

// ---------------------------------------------------------------------------
// Timestamp pattern grammar.
//
// A pattern is a literal string with embedded tokens:
//   %Y  four-digit year            %m  month (1-2 digits)
//   %d  day of month (1-2 digits)  %H  hour (1-2 digits)
//   %M  minute (1-2 digits)        %S  second (1-2 digits)
//   %f  optional fractional seconds (".digits"; the fraction is dropped)
//   %z  optional zone: "Z", +HH:MM, +HHMM or +HH; when absent the
//       timestamp is naive and the configured default zone applies
//   %%  a literal percent sign
// Everything else must match the input exactly.
// The default pattern accepts RFC 3339 timestamps.
inline constexpr std::string_view kDefaultTimestampPattern = "%Y-%m-%dT%H:%M:%S%f%z";

// Throws ConfigError on an unknown token so bad formats surface before a run.
inline void validate_timestamp_pattern(std::string_view pattern) {
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '%') continue;
    if (i + 1 >= pattern.size())
      throw ConfigError("timestamp-format: dangling '%' at end of pattern");
    char t = pattern[++i];
    if (t != 'Y' && t != 'm' && t != 'd' && t != 'H' && t != 'M' && t != 'S' &&
        t != 'f' && t != 'z' && t != '%')
      throw ConfigError(std::string("timestamp-format: unknown token '%") + t + "'");
  }
}

namespace detail {

inline bool read_digits(std::string_view s, std::size_t& i, int min_d, int max_d, int& out) {
  int value = 0;
  int count = 0;
  while (count < max_d && i < s.size() && s[i] >= '0' && s[i] <= '9') {
    value = value * 10 + (s[i] - '0');
    ++i;
    ++count;
  }
  if (count < min_d) return false;
  out = value;
  return true;
}

}  // namespace detail

// Parses `text` against `pattern`; returns nothing on any mismatch.
// Naive timestamps (no %z match) are interpreted at `default_zone_offset`.
inline std::optional<Instant> try_parse_timestamp(std::string_view text,
                                                  std::string_view pattern,
                                                  Seconds default_zone_offset = 0) {
  // Trim surrounding ASCII whitespace.
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);

  CivilTime c{};
  bool have_zone = false;
  Seconds zone = 0;
  std::size_t i = 0;
  for (std::size_t p = 0; p < pattern.size(); ++p) {
    char ch = pattern[p];
    if (ch != '%') {
      if (i >= text.size() || text[i] != ch) return std::nullopt;
      ++i;
      continue;
    }
    if (++p >= pattern.size()) return std::nullopt;
    switch (pattern[p]) {
      case 'Y':
        if (!detail::read_digits(text, i, 4, 4, c.year)) return std::nullopt;
        break;
      case 'm':
        if (!detail::read_digits(text, i, 1, 2, c.month)) return std::nullopt;
        break;
      case 'd':
        if (!detail::read_digits(text, i, 1, 2, c.day)) return std::nullopt;
        break;
      case 'H':
        if (!detail::read_digits(text, i, 1, 2, c.hour)) return std::nullopt;
        break;
      case 'M':
        if (!detail::read_digits(text, i, 1, 2, c.minute)) return std::nullopt;
        break;
      case 'S':
        if (!detail::read_digits(text, i, 1, 2, c.second)) return std::nullopt;
        break;
      case 'f':
        if (i < text.size() && text[i] == '.') {
          ++i;
          int ignored = 0;
          if (!detail::read_digits(text, i, 1, 9, ignored)) return std::nullopt;
        }
        break;
      case 'z': {
        if (i >= text.size()) break;  // naive
        char z = text[i];
        if (z == 'Z' || z == 'z') {
          have_zone = true;
          zone = 0;
          ++i;
        } else if (z == '+' || z == '-') {
          ++i;
          int hh = 0, mm = 0;
          if (!detail::read_digits(text, i, 2, 2, hh)) return std::nullopt;
          if (i < text.size() && text[i] == ':') {
            ++i;
            if (!detail::read_digits(text, i, 2, 2, mm)) return std::nullopt;
          } else if (i + 1 < text.size() && std::isdigit((unsigned char)text[i]) &&
                     std::isdigit((unsigned char)text[i + 1])) {
            detail::read_digits(text, i, 2, 2, mm);
          }
          if (hh > 23 || mm > 59) return std::nullopt;
          have_zone = true;
          zone = (z == '-' ? -1 : 1) * (hh * kHour + mm * kMinute);
        }
        break;
      }
      case '%':
        if (i >= text.size() || text[i] != '%') return std::nullopt;
        ++i;
        break;
      default:
        return std::nullopt;  // unknown token; validate_timestamp_pattern catches earlier
    }
  }
  if (i != text.size()) return std::nullopt;
  if (c.month < 1 || c.month > 12 || !civil_date_valid(c.year, c.month, c.day))
    return std::nullopt;
  if (c.hour > 23 || c.minute > 59 || c.second > 59) return std::nullopt;
  return instant_from_civil(c, have_zone ? zone : default_zone_offset);
}

inline Instant parse_timestamp(std::string_view text, std::string_view pattern,
                               Seconds default_zone_offset = 0) {
  auto t = try_parse_timestamp(text, pattern, default_zone_offset);
  if (!t)
    throw StructuralError("unparseable timestamp '" + std::string(text) + "'");
  return *t;
}

// ---------------------------------------------------------------------------
// Half-open time windows [begin, end).

struct TimeWindow {
  Instant begin = 0;
  Instant end = 0;

  bool contains(Instant t) const { return t >= begin && t < end; }
  bool valid() const { return begin < end; }
  bool overlaps(const TimeWindow& o) const { return begin < o.end && o.begin < end; }
  bool operator==(const TimeWindow&) const = default;
};

// Accepts "YYYY-MM-DD" (midnight UTC) or a full default-pattern timestamp.
inline std::optional<Instant> try_parse_window_endpoint(std::string_view s) {
  if (auto t = try_parse_timestamp(s, "%Y-%m-%d")) return t;
  return try_parse_timestamp(s, kDefaultTimestampPattern);
}

// Window syntax: "<begin>..<end>", half-open.
inline std::optional<TimeWindow> try_parse_window(std::string_view spec) {
  auto dots = spec.find("..");
  if (dots == std::string_view::npos) return std::nullopt;
  auto a = try_parse_window_endpoint(spec.substr(0, dots));
  auto b = try_parse_window_endpoint(spec.substr(dots + 2));
  if (!a || !b || *a >= *b) return std::nullopt;
  return TimeWindow{*a, *b};
}

}  // namespace lognar
