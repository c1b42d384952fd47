#pragma once

// Canonical in-memory event log: a multiset of traces, each an ordered
// sequence of events. Immutable after construction; all readers may share it.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "lognarrator/errors.hpp"
#include "lognarrator/time_util.hpp"

namespace lognar {

enum class Lifecycle { start, complete };

inline std::string to_string(Lifecycle lc) {
  return lc == Lifecycle::start ? "start" : "complete";
}

// Distinct wrapper so instant-valued attributes do not collide with plain
// integers inside the variant.
struct InstantValue {
  Instant value = 0;
  bool operator==(const InstantValue&) const = default;
};

using AttrValue = std::variant<std::string, std::int64_t, double, bool, InstantValue>;

struct Event {
  std::string case_id;
  std::string activity;
  Instant timestamp = 0;
  Lifecycle lifecycle = Lifecycle::complete;
  std::optional<std::string> resource;
  std::map<std::string, AttrValue> attributes;

  bool operator==(const Event&) const = default;
};

struct Trace {
  std::string case_id;
  std::vector<Event> events;  // sorted by (timestamp, input order)

  bool operator==(const Trace&) const = default;
};

struct EventLog {
  std::vector<Trace> traces;  // sorted by case_id
  Instant span_begin = 0;
  Instant span_end = 0;
  std::set<std::string> activity_alphabet;

  std::int64_t total_events() const {
    std::int64_t n = 0;
    for (const auto& t : traces) n += static_cast<std::int64_t>(t.events.size());
    return n;
  }

  bool operator==(const EventLog&) const = default;
};

struct Diagnostic {
  std::string locator;  // row/line/trace reference
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

struct IngestDiagnostics {
  std::int64_t rows_read = 0;
  std::int64_t events_kept = 0;
  std::int64_t events_skipped = 0;
  std::map<std::string, std::int64_t> skip_reasons;
  std::int64_t traces_built = 0;
  std::vector<Diagnostic> warnings;
};

enum class ErrorPolicy { fail, skip };

// Groups kept events by case id, sorts each trace by timestamp (stable, so
// equal timestamps keep input order) and derives the alphabet and time span.
// Events must be passed in input order. Throws EmptyLogError when empty.
inline EventLog build_event_log(std::vector<Event> events) {
  if (events.empty()) throw EmptyLogError("event log contains no events");
  std::map<std::string, std::vector<Event>> by_case;
  for (auto& ev : events) by_case[ev.case_id].push_back(std::move(ev));

  EventLog log;
  log.span_begin = std::numeric_limits<Instant>::max();
  log.span_end = std::numeric_limits<Instant>::min();
  for (auto& [case_id, evs] : by_case) {
    std::stable_sort(evs.begin(), evs.end(),
                     [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
    for (const auto& ev : evs) {
      log.activity_alphabet.insert(ev.activity);
      log.span_begin = std::min(log.span_begin, ev.timestamp);
      log.span_end = std::max(log.span_end, ev.timestamp);
    }
    log.traces.push_back(Trace{case_id, std::move(evs)});
  }
  return log;
}

}  // namespace lognar
