#pragma once

// Lifecycle abstraction: turning raw events into logical activity executions.
//
// complete_only  : start events are dropped, every remaining event is one
//                  execution (instantaneous).
// collapse_pairs : each start is paired with the next complete of the same
//                  activity in the case (first match); the pair is one
//                  execution with a duration. Leftover events become
//                  instantaneous executions; dangling starts are reported.

#include <deque>
#include <map>
#include <string>
#include <vector>

#include "lognarrator/event_log.hpp"

namespace lognar {

enum class LifecycleAbstraction { complete_only, collapse_pairs };

struct Execution {
  std::string activity;
  Instant start = 0;
  Instant complete = 0;
  bool paired = false;  // true only for a real start/complete pair

  Seconds duration() const { return complete - start; }
};

struct TraceExecutions {
  std::vector<Execution> executions;  // ordered by start position in the trace
  std::vector<Diagnostic> diagnostics;
};

inline TraceExecutions executions_of(const Trace& trace, LifecycleAbstraction mode) {
  TraceExecutions out;
  if (mode == LifecycleAbstraction::complete_only) {
    for (const auto& ev : trace.events)
      if (ev.lifecycle == Lifecycle::complete)
        out.executions.push_back({ev.activity, ev.timestamp, ev.timestamp, false});
    return out;
  }

  std::map<std::string, std::deque<std::size_t>> open_starts;
  std::vector<bool> pending;
  for (const auto& ev : trace.events) {
    if (ev.lifecycle == Lifecycle::start) {
      out.executions.push_back({ev.activity, ev.timestamp, ev.timestamp, false});
      pending.push_back(true);
      open_starts[ev.activity].push_back(out.executions.size() - 1);
    } else {
      auto it = open_starts.find(ev.activity);
      if (it != open_starts.end() && !it->second.empty()) {
        std::size_t idx = it->second.front();
        it->second.pop_front();
        out.executions[idx].complete = ev.timestamp;
        out.executions[idx].paired = true;
        pending[idx] = false;
      } else {
        out.executions.push_back({ev.activity, ev.timestamp, ev.timestamp, false});
        pending.push_back(false);
      }
    }
  }
  for (std::size_t i = 0; i < out.executions.size(); ++i) {
    if (pending[i])
      out.diagnostics.push_back(
          {"trace " + trace.case_id,
           "unpaired lifecycle: start of '" + out.executions[i].activity + "' at " +
               format_iso_utc(out.executions[i].start) + " has no complete"});
  }
  return out;
}

struct DurationPairing {
  std::vector<std::pair<std::string, Seconds>> durations;  // (activity, seconds)
  std::vector<Diagnostic> diagnostics;
};

// Durations of start/complete pairs in one trace (collapse_pairs semantics).
// Complete-only traces yield an empty list.
inline DurationPairing activity_durations(const Trace& trace) {
  auto te = executions_of(trace, LifecycleAbstraction::collapse_pairs);
  DurationPairing out;
  out.diagnostics = std::move(te.diagnostics);
  for (const auto& ex : te.executions)
    if (ex.paired) out.durations.emplace_back(ex.activity, ex.duration());
  return out;
}

}  // namespace lognar
