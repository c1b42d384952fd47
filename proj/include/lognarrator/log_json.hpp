#pragma once

// Debug dump of an event log as canonical JSON, and the inverse loader.
// Byte-deterministic for a given log: traces are already ordered by case id,
// object keys are emitted sorted, instants are ISO-8601 UTC. Instant-valued
// attributes are tagged objects {"$instant": "..."} so load can restore the
// exact attribute type.

#include <string>

#include <nlohmann/json.hpp>

#include "lognarrator/event_log.hpp"

namespace lognar {

inline nlohmann::json event_log_to_json(const EventLog& log) {
  nlohmann::json traces = nlohmann::json::array();
  for (const auto& trace : log.traces) {
    nlohmann::json events = nlohmann::json::array();
    for (const auto& ev : trace.events) {
      nlohmann::json e;
      e["activity"] = ev.activity;
      e["timestamp"] = format_iso_utc(ev.timestamp);
      if (ev.lifecycle != Lifecycle::complete) e["lifecycle"] = to_string(ev.lifecycle);
      if (ev.resource) e["resource"] = *ev.resource;
      if (!ev.attributes.empty()) {
        nlohmann::json attrs;
        for (const auto& [key, value] : ev.attributes) {
          std::visit(
              [&, k = key](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, InstantValue>)
                  attrs[k] = nlohmann::json{{"$instant", format_iso_utc(v.value)}};
                else
                  attrs[k] = v;
              },
              value);
        }
        e["attributes"] = std::move(attrs);
      }
      events.push_back(std::move(e));
    }
    traces.push_back({{"case_id", trace.case_id}, {"events", std::move(events)}});
  }
  return {{"schema", "lognarrator-eventlog-v1"},
          {"time_span",
           {{"begin", format_iso_utc(log.span_begin)}, {"end", format_iso_utc(log.span_end)}}},
          {"traces", std::move(traces)}};
}

inline std::string event_log_to_json_text(const EventLog& log) {
  return event_log_to_json(log).dump(2) + "\n";
}

inline EventLog event_log_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("traces") || !j["traces"].is_array())
    throw StructuralError("event-log JSON: missing 'traces' array");
  std::vector<Event> events;
  for (const auto& trace : j["traces"]) {
    if (!trace.contains("case_id") || !trace.contains("events"))
      throw StructuralError("event-log JSON: trace needs 'case_id' and 'events'");
    std::string case_id = trace["case_id"].get<std::string>();
    for (const auto& e : trace["events"]) {
      Event ev;
      ev.case_id = case_id;
      ev.activity = e.at("activity").get<std::string>();
      ev.timestamp = parse_timestamp(e.at("timestamp").get<std::string>(),
                                     kDefaultTimestampPattern);
      if (e.contains("lifecycle"))
        ev.lifecycle = e["lifecycle"].get<std::string>() == "start" ? Lifecycle::start
                                                                    : Lifecycle::complete;
      if (e.contains("resource")) ev.resource = e["resource"].get<std::string>();
      if (e.contains("attributes")) {
        for (const auto& [key, value] : e["attributes"].items()) {
          if (value.is_object() && value.contains("$instant"))
            ev.attributes[key] = InstantValue{
                parse_timestamp(value["$instant"].get<std::string>(), kDefaultTimestampPattern)};
          else if (value.is_string())
            ev.attributes[key] = value.get<std::string>();
          else if (value.is_number_integer())
            ev.attributes[key] = value.get<std::int64_t>();
          else if (value.is_number_float())
            ev.attributes[key] = value.get<double>();
          else if (value.is_boolean())
            ev.attributes[key] = value.get<bool>();
          else
            throw StructuralError("event-log JSON: unsupported attribute type for '" + key + "'");
        }
      }
      events.push_back(std::move(ev));
    }
  }
  return build_event_log(std::move(events));
}

inline EventLog event_log_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, true);
  return event_log_from_json(j);
}

}  // namespace lognar
