#pragma once

// CSV event-log ingestion. UTF-8, header row required, configurable
// delimiter, RFC 4180 quoting (embedded delimiters, quotes and newlines).

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "lognarrator/event_log.hpp"
#include "lognarrator/time_util.hpp"

namespace lognar {

struct ColumnMapping {
  std::string case_col;
  std::string activity_col;
  std::string timestamp_col;
  std::string timestamp_format = std::string(kDefaultTimestampPattern);
  std::optional<std::string> lifecycle_col;
  std::optional<std::string> resource_col;
  char delimiter = ',';
  Seconds default_zone_offset = 0;  // applied to naive timestamps
};

namespace csv_detail {

// Reads one CSV record; empty optional at end of input.
inline std::optional<std::vector<std::string>> read_record(std::istream& in, char delim) {
  if (in.peek() == std::char_traits<char>::eof()) return std::nullopt;
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool any = false;
  int ch;
  while ((ch = in.get()) != std::char_traits<char>::eof()) {
    char c = static_cast<char>(ch);
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          field.push_back('"');
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty()) {
      quoted = true;
    } else if (c == delim) {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      fields.push_back(std::move(field));
      return fields;
    } else {
      field.push_back(c);
    }
  }
  if (!any) return std::nullopt;
  if (!field.empty() && field.back() == '\r') field.pop_back();
  fields.push_back(std::move(field));
  return fields;
}

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace csv_detail

// Parses a CSV byte stream into an event log. Unmapped columns land in
// Event::attributes as strings. `policy` decides whether a malformed row
// aborts the run or is skipped with a warning.
inline std::pair<EventLog, IngestDiagnostics> parse_csv(std::istream& in,
                                                        const ColumnMapping& mapping,
                                                        ErrorPolicy policy) {
  using namespace csv_detail;
  validate_timestamp_pattern(mapping.timestamp_format);

  auto header = read_record(in, mapping.delimiter);
  if (!header) throw EmptyLogError("CSV input is empty");

  auto col_index = [&](const std::string& name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header->size(); ++i)
      if (trim((*header)[i]) == name) return i;
    return std::nullopt;
  };
  auto require = [&](const std::string& name) -> std::size_t {
    auto idx = col_index(name);
    if (!idx) throw StructuralError("CSV header is missing mapped column '" + name + "'");
    return *idx;
  };

  const std::size_t case_idx = require(mapping.case_col);
  const std::size_t act_idx = require(mapping.activity_col);
  const std::size_t ts_idx = require(mapping.timestamp_col);
  std::optional<std::size_t> lc_idx, res_idx;
  if (mapping.lifecycle_col) lc_idx = require(*mapping.lifecycle_col);
  if (mapping.resource_col) res_idx = require(*mapping.resource_col);

  std::vector<bool> mapped(header->size(), false);
  mapped[case_idx] = mapped[act_idx] = mapped[ts_idx] = true;
  if (lc_idx) mapped[*lc_idx] = true;
  if (res_idx) mapped[*res_idx] = true;

  IngestDiagnostics diag;
  std::vector<Event> events;
  auto skip_or_fail = [&](const std::string& row, const std::string& reason,
                          const std::string& message) {
    if (policy == ErrorPolicy::fail) throw StructuralError(row + ": " + message);
    ++diag.events_skipped;
    ++diag.skip_reasons[reason];
    diag.warnings.push_back({row, message});
  };

  while (auto rec = read_record(in, mapping.delimiter)) {
    ++diag.rows_read;
    const std::string row = "row " + std::to_string(diag.rows_read);
    if (rec->size() != header->size()) {
      skip_or_fail(row, "malformed_row",
                   "expected " + std::to_string(header->size()) + " fields, got " +
                       std::to_string(rec->size()));
      continue;
    }
    Event ev;
    ev.case_id = trim((*rec)[case_idx]);
    ev.activity = trim((*rec)[act_idx]);
    if (ev.activity.empty()) {
      skip_or_fail(row, "empty_activity", "activity is empty");
      continue;
    }
    auto ts = try_parse_timestamp(trim((*rec)[ts_idx]), mapping.timestamp_format,
                                  mapping.default_zone_offset);
    if (!ts) {
      skip_or_fail(row, "bad_timestamp",
                   "unparseable timestamp '" + trim((*rec)[ts_idx]) + "'");
      continue;
    }
    ev.timestamp = *ts;
    if (lc_idx) {
      std::string lc = lower(trim((*rec)[*lc_idx]));
      if (lc == "start") {
        ev.lifecycle = Lifecycle::start;
      } else if (lc == "complete" || lc.empty()) {
        ev.lifecycle = Lifecycle::complete;
      } else {
        ev.lifecycle = Lifecycle::complete;
        diag.warnings.push_back({row, "unknown lifecycle '" + lc + "', treated as complete"});
      }
    }
    if (res_idx) {
      std::string r = trim((*rec)[*res_idx]);
      if (!r.empty()) ev.resource = r;
    }
    for (std::size_t i = 0; i < rec->size(); ++i) {
      if (mapped[i]) continue;
      std::string v = trim((*rec)[i]);
      if (!v.empty()) ev.attributes[trim((*header)[i])] = v;
    }
    ++diag.events_kept;
    events.push_back(std::move(ev));
  }

  if (diag.rows_read == 0) throw EmptyLogError("CSV input has no data rows");
  if (events.empty()) throw EmptyLogError("CSV input has no usable rows");
  EventLog log = build_event_log(std::move(events));
  diag.traces_built = static_cast<std::int64_t>(log.traces.size());
  return {std::move(log), std::move(diag)};
}

}  // namespace lognar
