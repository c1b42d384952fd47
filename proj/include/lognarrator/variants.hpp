#pragma once

// Variant (path) mining: traces grouped by their activity-label sequence.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lognarrator/event_log.hpp"
#include "lognarrator/lifecycle.hpp"

namespace lognar {

struct Variant {
  std::vector<std::string> path;
  std::int64_t trace_count = 0;
  std::vector<std::string> case_ids;

  bool operator==(const Variant&) const = default;
};

// Groups traces by identical activity sequence (after the lifecycle
// abstraction). Sorted by (trace_count desc, path lexicographic asc).
inline std::vector<Variant> extract_variants(
    const EventLog& log, LifecycleAbstraction abstraction = LifecycleAbstraction::complete_only) {
  if (log.traces.empty()) throw EmptyLogError("cannot extract variants from an empty log");
  std::map<std::vector<std::string>, Variant> groups;
  for (const auto& trace : log.traces) {
    auto te = executions_of(trace, abstraction);
    std::vector<std::string> path;
    path.reserve(te.executions.size());
    for (const auto& e : te.executions) path.push_back(e.activity);
    auto& v = groups[path];
    if (v.trace_count == 0) v.path = path;
    ++v.trace_count;
    v.case_ids.push_back(trace.case_id);
  }
  std::vector<Variant> out;
  out.reserve(groups.size());
  for (auto& [path, v] : groups) out.push_back(std::move(v));
  std::sort(out.begin(), out.end(), [](const Variant& a, const Variant& b) {
    if (a.trace_count != b.trace_count) return a.trace_count > b.trace_count;
    return a.path < b.path;
  });
  return out;
}

inline std::vector<Variant> top_k_variants(const std::vector<Variant>& variants,
                                           std::int64_t k) {
  if (k < 1) throw InvalidArgumentError("top_k_variants: k must be >= 1");
  std::int64_t n = std::min<std::int64_t>(k, static_cast<std::int64_t>(variants.size()));
  return {variants.begin(), variants.begin() + n};
}

}  // namespace lognar
