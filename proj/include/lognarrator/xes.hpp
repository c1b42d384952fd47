#pragma once

// Minimal XES reader: log > trace > event with typed attribute children
// (string/date/int/float/boolean). Extensions, globals and classifiers are
// ignored with a warning. Backed by a small strict XML subset parser that
// tracks line numbers for error messages.

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lognarrator/event_log.hpp"
#include "lognarrator/time_util.hpp"

namespace lognar {
namespace xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Element> children;
  int line = 0;

  const std::string* attr(std::string_view key) const {
    for (const auto& [k, v] : attrs)
      if (k == key) return &v;
    return nullptr;
  }
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Element parse_document() {
    skip_prolog();
    if (eof()) fail("document has no root element");
    Element root = parse_element();
    skip_misc();
    if (!eof()) fail("content after root element");
    return root;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw StructuralError("XML error at line " + std::to_string(line_) + ": " + msg);
  }
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  char get() {
    char c = text_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }
  bool starts_with(std::string_view s) const {
    return text_.compare(pos_, s.size(), s) == 0;
  }
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) get();
  }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
      get();
  }
  void skip_until(std::string_view close) {
    while (!eof() && !starts_with(close)) get();
    if (eof()) fail("unterminated construct, expected '" + std::string(close) + "'");
    advance(close.size());
  }
  void skip_prolog() {
    skip_misc();
  }
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (starts_with("<?")) {
        skip_until("?>");
      } else if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<!")) {
        skip_until(">");
      } else {
        return;
      }
    }
  }
  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == ':' || c == '_' ||
           c == '-' || c == '.';
  }
  std::string parse_name() {
    std::string n;
    while (!eof() && name_char(peek())) n.push_back(get());
    if (n.empty()) fail("expected a name");
    return n;
  }
  std::string decode_entities(std::string_view raw) {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] != '&') {
        out.push_back(raw[i]);
        continue;
      }
      auto semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity");
      std::string_view ent = raw.substr(i + 1, semi - i - 1);
      if (ent == "amp") out.push_back('&');
      else if (ent == "lt") out.push_back('<');
      else if (ent == "gt") out.push_back('>');
      else if (ent == "quot") out.push_back('"');
      else if (ent == "apos") out.push_back('\'');
      else if (!ent.empty() && ent[0] == '#') {
        int code = 0;
        if (ent.size() > 2 && (ent[1] == 'x' || ent[1] == 'X'))
          code = std::stoi(std::string(ent.substr(2)), nullptr, 16);
        else
          code = std::stoi(std::string(ent.substr(1)));
        if (code < 0x80) out.push_back(static_cast<char>(code));
        else fail("non-ASCII character reference not supported");
      } else {
        fail("unknown entity '&" + std::string(ent) + ";'");
      }
      i = semi;
    }
    return out;
  }
  Element parse_element() {
    if (eof() || peek() != '<') fail("expected '<'");
    get();
    Element el;
    el.line = line_;
    el.name = parse_name();
    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag <" + el.name + ">");
      if (peek() == '>') {
        get();
        break;
      }
      if (starts_with("/>")) {
        advance(2);
        return el;
      }
      std::string key = parse_name();
      skip_ws();
      if (eof() || peek() != '=') fail("expected '=' after attribute '" + key + "'");
      get();
      skip_ws();
      if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
      char quote = get();
      std::size_t start = pos_;
      while (!eof() && peek() != quote) get();
      if (eof()) fail("unterminated attribute value");
      std::string_view raw = text_.substr(start, pos_ - start);
      get();
      el.attrs.emplace_back(std::move(key), decode_entities(raw));
    }
    // Content: child elements; character data is ignored.
    for (;;) {
      while (!eof() && peek() != '<') get();
      if (eof()) fail("unterminated element <" + el.name + ">");
      if (starts_with("</")) {
        advance(2);
        std::string close = parse_name();
        if (close != el.name)
          fail("mismatched close tag </" + close + ">, expected </" + el.name + ">");
        skip_ws();
        if (eof() || peek() != '>') fail("malformed close tag");
        get();
        return el;
      }
      if (starts_with("<!--")) {
        skip_until("-->");
        continue;
      }
      if (starts_with("<![CDATA[")) {
        skip_until("]]>");
        continue;
      }
      if (starts_with("<?")) {
        skip_until("?>");
        continue;
      }
      el.children.push_back(parse_element());
    }
  }
};

}  // namespace xml

namespace xes_detail {

inline std::optional<AttrValue> typed_attr_value(const xml::Element& child,
                                                 const std::string& value) {
  if (child.name == "string") return AttrValue{value};
  if (child.name == "int") {
    try {
      return AttrValue{static_cast<std::int64_t>(std::stoll(value))};
    } catch (...) {
      return std::nullopt;
    }
  }
  if (child.name == "float") {
    try {
      return AttrValue{std::stod(value)};
    } catch (...) {
      return std::nullopt;
    }
  }
  if (child.name == "boolean") return AttrValue{value == "true"};
  if (child.name == "date") {
    auto t = try_parse_timestamp(value, kDefaultTimestampPattern);
    if (!t) return std::nullopt;
    return AttrValue{InstantValue{*t}};
  }
  return std::nullopt;
}

}  // namespace xes_detail

inline std::pair<EventLog, IngestDiagnostics> parse_xes(std::istream& in, ErrorPolicy policy) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  xml::Parser parser(text);
  xml::Element root = parser.parse_document();
  if (root.name != "log")
    throw StructuralError("expected <log> root element, found <" + root.name + ">");

  IngestDiagnostics diag;
  std::vector<Event> events;
  bool warned_ext = false, warned_global = false, warned_classifier = false;

  auto skip_or_fail = [&](const std::string& where, const std::string& message) {
    if (policy == ErrorPolicy::fail) throw StructuralError(where + ": " + message);
    ++diag.events_skipped;
    ++diag.skip_reasons["missing_required_attribute"];
    diag.warnings.push_back({where, message});
  };

  int trace_number = 0;
  for (const auto& node : root.children) {
    if (node.name == "extension") {
      if (!warned_ext) diag.warnings.push_back({"log", "extension declarations ignored"});
      warned_ext = true;
      continue;
    }
    if (node.name == "global") {
      if (!warned_global) diag.warnings.push_back({"log", "global attributes ignored"});
      warned_global = true;
      continue;
    }
    if (node.name == "classifier") {
      if (!warned_classifier) diag.warnings.push_back({"log", "classifiers ignored"});
      warned_classifier = true;
      continue;
    }
    if (node.name != "trace") continue;
    ++trace_number;

    std::string case_id = "case_" + std::to_string(trace_number);
    for (const auto& child : node.children) {
      if (child.name == "string" && child.attr("key") && *child.attr("key") == "concept:name" &&
          child.attr("value")) {
        case_id = *child.attr("value");
        break;
      }
    }

    int event_number = 0;
    for (const auto& child : node.children) {
      if (child.name != "event") continue;
      ++event_number;
      ++diag.rows_read;
      const std::string where =
          "trace " + case_id + " event " + std::to_string(event_number);

      Event ev;
      ev.case_id = case_id;
      bool bad = false;
      for (const auto& attr_el : child.children) {
        const std::string* key = attr_el.attr("key");
        const std::string* value = attr_el.attr("value");
        if (!key || !value) continue;
        if (*key == "concept:name") {
          ev.activity = *value;
        } else if (*key == "time:timestamp") {
          auto t = try_parse_timestamp(*value, kDefaultTimestampPattern);
          if (!t) {
            skip_or_fail(where, "unparseable time:timestamp '" + *value + "'");
            bad = true;
            break;
          }
          ev.timestamp = *t;
          ev.attributes["__has_ts"] = true;  // marker, removed below
        } else if (*key == "lifecycle:transition") {
          std::string lc = *value;
          for (auto& c : lc) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          if (lc == "start") {
            ev.lifecycle = Lifecycle::start;
          } else if (lc == "complete") {
            ev.lifecycle = Lifecycle::complete;
          } else {
            diag.warnings.push_back({where, "unknown lifecycle '" + *value +
                                                "', treated as complete"});
          }
        } else if (*key == "org:resource") {
          ev.resource = *value;
        } else if (auto tv = xes_detail::typed_attr_value(attr_el, *value)) {
          ev.attributes[*key] = *tv;
        }
      }
      if (bad) continue;
      if (ev.activity.empty()) {
        skip_or_fail(where, "event has no concept:name");
        continue;
      }
      if (!ev.attributes.count("__has_ts")) {
        skip_or_fail(where, "event has no time:timestamp");
        continue;
      }
      ev.attributes.erase("__has_ts");
      ++diag.events_kept;
      events.push_back(std::move(ev));
    }
  }

  if (events.empty()) throw EmptyLogError("XES input has no usable events");
  EventLog log = build_event_log(std::move(events));
  diag.traces_built = static_cast<std::int64_t>(log.traces.size());
  return {std::move(log), std::move(diag)};
}

}  // namespace lognar
