#pragma once

// Log sanity checks. Pure report: never mutates the log, never throws.

#include <map>
#include <string>
#include <vector>

#include "lognarrator/event_log.hpp"
#include "lognarrator/lifecycle.hpp"

namespace lognar {

inline std::vector<Diagnostic> validate_log(const EventLog& log) {
  std::vector<Diagnostic> out;
  if (log.activity_alphabet.size() == 1)
    out.push_back({"log", "activity alphabet has a single label '" +
                              *log.activity_alphabet.begin() + "'"});
  for (const auto& trace : log.traces) {
    if (trace.events.size() == 1)
      out.push_back({"trace " + trace.case_id, "single-event trace " + trace.case_id});

    std::map<std::pair<std::string, Instant>, int> seen;
    for (const auto& ev : trace.events) ++seen[{ev.activity, ev.timestamp}];
    for (const auto& [key, count] : seen)
      if (count > 1)
        out.push_back({"trace " + trace.case_id,
                       "duplicate event: '" + key.first + "' at " +
                           format_iso_utc(key.second) + " occurs " +
                           std::to_string(count) + " times"});

    auto te = executions_of(trace, LifecycleAbstraction::collapse_pairs);
    for (auto& d : te.diagnostics) out.push_back(std::move(d));
  }
  return out;
}

}  // namespace lognar
