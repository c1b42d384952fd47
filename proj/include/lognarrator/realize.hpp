#pragma once

// Surface realization: humanized durations and percentages, slot-filling
// templates, document planning and the report emitters.

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lognarrator/protoforms.hpp"
#include "lognarrator/summary_config.hpp"
#include "lognarrator/vocab.hpp"

namespace lognar {

// ---------------------------------------------------------------------------
// Humanizers.

namespace realize_detail {
inline std::string unit_phrase(std::int64_t n, const char* singular, const char* plural) {
  return std::to_string(n) + " " + (n == 1 ? singular : plural);
}
}  // namespace realize_detail

// Two adjacent units, coarsest first: weeks+days for >= 3 days (rounded to
// days), days+hours for >= 3 hours, hours+minutes below that. A zero-valued
// trailing unit is omitted.
inline std::string humanize_duration(Seconds d) {
  using realize_detail::unit_phrase;
  if (d < 0) throw InvalidArgumentError("cannot humanize a negative duration");
  if (d >= 3 * kDay) {
    std::int64_t days = round_to_unit(d, kDay);
    std::int64_t weeks = days / 7;
    std::int64_t rest = days % 7;
    if (weeks == 0) return unit_phrase(rest, "day", "days");
    if (rest == 0) return unit_phrase(weeks, "week", "weeks");
    return unit_phrase(weeks, "week", "weeks") + " and " + unit_phrase(rest, "day", "days");
  }
  if (d >= 3 * kHour) {
    std::int64_t hours = round_to_unit(d, kHour);
    std::int64_t days = hours / 24;
    std::int64_t rest = hours % 24;
    if (days == 0) return unit_phrase(rest, "hour", "hours");
    if (rest == 0) return unit_phrase(days, "day", "days");
    return unit_phrase(days, "day", "days") + " and " + unit_phrase(rest, "hour", "hours");
  }
  std::int64_t minutes = round_to_unit(d, kMinute);
  std::int64_t hours = minutes / 60;
  std::int64_t rest = minutes % 60;
  if (hours == 0) return unit_phrase(rest, "minute", "minutes");
  if (rest == 0) return unit_phrase(hours, "hour", "hours");
  return unit_phrase(hours, "hour", "hours") + " and " + unit_phrase(rest, "minute", "minutes");
}

// "N% less" / "N% more" / "about the same number of". rc = value_a/value_b - 1.
inline std::string humanize_relative_change(double rc) {
  if (rc <= -1.0)
    throw InvalidArgumentError("relative change must be greater than -1");
  std::int64_t pct = std::llround(std::fabs(rc) * 100.0);
  if (pct == 0) return "about the same number of";
  return std::to_string(pct) + "% " + (rc < 0 ? "less" : "more");
}

inline std::string percent_text(double ratio) {
  return std::to_string(std::llround(ratio * 100.0)) + "%";
}

// Friendly window descriptions; prefers calendar idioms over raw dates.
inline std::string describe_window(const TimeWindow& w) {
  CivilTime b = civil_from_instant(w.begin);
  CivilTime e = civil_from_instant(w.end);
  auto midnight = [](const CivilTime& c) { return c.hour == 0 && c.minute == 0 && c.second == 0; };
  static const char* kMonths[] = {"January", "February", "March",     "April",   "May",
                                  "June",    "July",     "August",    "September",
                                  "October", "November", "December"};
  if (midnight(b) && midnight(e) && b.day == 1 && e.day == 1) {
    if (b.month == 1 && e.month == 7 && b.year == e.year)
      return "the first half of year " + std::to_string(b.year);
    if (b.month == 7 && e.month == 1 && e.year == b.year + 1)
      return "the second half of year " + std::to_string(b.year);
    if (b.month == 1 && e.month == 1 && e.year == b.year + 1)
      return "year " + std::to_string(b.year);
    if ((e.year == b.year && e.month == b.month + 1) ||
        (e.year == b.year + 1 && b.month == 12 && e.month == 1))
      return std::string(kMonths[b.month - 1]) + " " + std::to_string(b.year);
  }
  return "the period from " + format_iso_date(w.begin) + " to " + format_iso_date(w.end);
}

// ---------------------------------------------------------------------------
// Default templates.

inline std::vector<TemplateDef> default_templates() {
  return {
      {"period_count", SchemaKind::period, "en",
       "During {window_a}, {pct} {subject_plural} were registered compared to {window_b}."},
      {"period_totals", SchemaKind::period, "en",
       "In the process, {pct} {a_plural} than {b_plural} were registered."},
      {"period_duration", SchemaKind::period, "en",
       "During {window_a}, executions of {subject} took {pct} time in average than during "
       "{window_b}."},
      {"period_waiting", SchemaKind::period, "en",
       "During {window_a}, waiting time between {from_article} and {to_article} was {pct} than "
       "during {window_b}."},
      {"activity", SchemaKind::activity, "en",
       "{quantifier} executions of {activity} last around {duration} in average."},
      {"activity_compare", SchemaKind::activity, "en",
       "{quantifier} executions of {a} last around {delta} in average more than those of {b}."},
      {"arc", SchemaKind::arc, "en",
       "Waiting time between {from_article} and {to_article} is around {duration} in average."},
      {"arc_self", SchemaKind::arc, "en",
       "Waiting time between {from_plural} is around {duration} in average."},
      {"arc_followup", SchemaKind::arc, "en",
       "Around {duration} after the {from} a case undergoes {to}."},
      {"pattern_branch", SchemaKind::pattern, "en",
       "{freq1} of times, after the {from}, {to1_article} follows around {d1} later. On the "
       "contrary, {freq2} of times, {to2_article} follows around {d2} later."},
      {"pattern_chain", SchemaKind::pattern, "en", "{chain}."},
      {"variant", SchemaKind::variant, "en",
       "The path {path} is followed in {freq} of cases and takes around {duration} in average."},
      {"variant_milestone", SchemaKind::variant, "en",
       "Cases that go through {path} stay for {days} days in average."},
  };
}

// Slots each schema kind may use; config-supplied templates are validated
// against this so a bad slot fails at load time, not at realization.
inline const std::map<SchemaKind, std::vector<std::string>>& declared_slots() {
  static const std::map<SchemaKind, std::vector<std::string>> slots = {
      {SchemaKind::period,
       {"window_a", "window_b", "pct", "subject", "subject_plural", "a", "b", "a_plural",
        "b_plural", "from", "to", "from_article", "to_article"}},
      {SchemaKind::activity,
       {"quantifier", "activity", "activity_plural", "duration", "a", "b", "a_plural",
        "b_plural", "delta"}},
      {SchemaKind::arc,
       {"quantifier", "from", "to", "from_plural", "to_plural", "from_article", "to_article",
        "duration"}},
      {SchemaKind::pattern,
       {"from", "from_article", "to1", "to2", "to1_article", "to2_article", "freq1", "freq2",
        "d1", "d2", "chain", "path"}},
      {SchemaKind::variant, {"quantifier", "path", "freq", "duration", "days"}},
  };
  return slots;
}

// ---------------------------------------------------------------------------
// Slot resolution and sentence assembly.

struct RealizationContext {
  std::vector<TemplateDef> templates = default_templates();
  Lexicon lexicon;
  std::set<std::pair<std::string, std::string>> followup_arcs;
  std::string language = "en";
};

namespace realize_detail {

inline const TemplateDef* find_template(const std::vector<TemplateDef>& templates,
                                        SchemaKind kind, const std::string& form,
                                        const std::string& lang) {
  const TemplateDef* english = nullptr;
  for (const auto& t : templates) {
    if (t.kind != kind || t.form != form) continue;
    if (t.language == lang) return &t;
    if (t.language == "en") english = &t;
  }
  return english;
}

inline std::string select_form(const ProtoformInstance& inst, const RealizationContext& ctx) {
  if (inst.schema.kind == SchemaKind::arc) {
    const auto* from = std::get_if<std::string>(&inst.bindings.at("from"));
    const auto* to = std::get_if<std::string>(&inst.bindings.at("to"));
    if (from && to) {
      if (*from == *to) return "arc_self";
      if (ctx.followup_arcs.count({*from, *to})) return "arc_followup";
    }
  }
  return inst.form;
}

inline const std::string& label_binding(const ProtoformInstance& inst, const std::string& key) {
  auto it = inst.bindings.find(key);
  if (it == inst.bindings.end())
    throw TemplateSlotError("instance '" + inst.id + "' has no binding for slot '" + key + "'");
  const auto* s = std::get_if<std::string>(&it->second);
  if (!s)
    throw TemplateSlotError("binding '" + key + "' of instance '" + inst.id +
                            "' is not a label");
  return *s;
}

inline std::int64_t seconds_binding(const ProtoformInstance& inst, const std::string& key) {
  auto it = inst.bindings.find(key);
  if (it == inst.bindings.end())
    throw TemplateSlotError("instance '" + inst.id + "' has no binding for slot '" + key + "'");
  const auto* v = std::get_if<std::int64_t>(&it->second);
  if (!v)
    throw TemplateSlotError("binding '" + key + "' of instance '" + inst.id +
                            "' is not a duration");
  return *v;
}

inline double ratio_binding(const ProtoformInstance& inst, const std::string& key) {
  auto it = inst.bindings.find(key);
  if (it == inst.bindings.end())
    throw TemplateSlotError("instance '" + inst.id + "' has no binding for slot '" + key + "'");
  const auto* v = std::get_if<double>(&it->second);
  if (!v)
    throw TemplateSlotError("binding '" + key + "' of instance '" + inst.id +
                            "' is not numeric");
  return *v;
}

inline std::string path_text(const std::vector<std::string>& path, const Lexicon& lexicon,
                             bool* fallback) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    bool fb = false;
    LexEntry e = lexicon.lookup(path[i], &fb);
    if (fb && fallback) *fallback = true;
    if (i) out += (i + 1 == path.size()) ? " and " : ", ";
    out += e.singular;
  }
  return out;
}

inline std::string chain_text(const ProtoformInstance& inst, const Lexicon& lexicon,
                              bool* fallback) {
  // "After A, B follows around x later, then C around y later"
  if (inst.children.size() < 2)
    throw TemplateSlotError("chain instance '" + inst.id + "' has fewer than 2 arcs");
  auto surface = [&](const ProtoformInstance& arc, const char* key) {
    bool fb = false;
    LexEntry e = lexicon.lookup(label_binding(arc, key), &fb);
    if (fb && fallback) *fallback = true;
    return e.singular;
  };
  std::string out = "After " + surface(inst.children[0], "from");
  for (std::size_t i = 0; i < inst.children.size(); ++i) {
    const auto& arc = inst.children[i];
    std::string dur = humanize_duration(seconds_binding(arc, "duration"));
    if (i == 0)
      out += ", " + surface(arc, "to") + " follows around " + dur + " later";
    else
      out += ", then " + surface(arc, "to") + " around " + dur + " later";
  }
  return out;
}

}  // namespace realize_detail

// Fills every slot of the instance's template. Throws MissingTemplateError /
// TemplateSlotError; `lexicon_fallback` reports raw-label fallbacks.
inline std::string realize_instance(const ProtoformInstance& inst,
                                    const RealizationContext& ctx,
                                    bool* lexicon_fallback = nullptr) {
  using namespace realize_detail;
  bool fallback = false;
  const std::string form = select_form(inst, ctx);
  const TemplateDef* tmpl = find_template(ctx.templates, inst.schema.kind, form, ctx.language);
  if (!tmpl)
    throw MissingTemplateError("no template for schema kind '" + to_string(inst.schema.kind) +
                               "' (form '" + form + "', language '" + ctx.language + "')");

  auto lex = [&](const std::string& key) {
    bool fb = false;
    LexEntry e = ctx.lexicon.lookup(label_binding(inst, key), &fb);
    fallback |= fb;
    return e;
  };

  auto resolve = [&](const std::string& slot) -> std::string {
    // Label slots with _plural/_article decorations.
    static const std::vector<std::string> label_slots = {"from", "to",  "to1", "to2", "a",
                                                         "b",    "subject", "activity"};
    for (const auto& base : label_slots) {
      if (slot == base) return lex(base).singular;
      if (slot == base + "_plural") return lex(base).plural;
      if (slot == base + "_article") {
        LexEntry e = lex(base);
        return e.article + " " + e.singular;
      }
    }
    if (slot == "duration" || slot == "delta" || slot == "d1" || slot == "d2")
      return humanize_duration(seconds_binding(inst, slot));
    if (slot == "days")
      return std::to_string(round_to_unit(seconds_binding(inst, "duration"), kDay));
    if (slot == "pct")
      return humanize_relative_change(ratio_binding(inst, "relative_change"));
    if (slot == "freq" || slot == "freq1" || slot == "freq2")
      return percent_text(ratio_binding(inst, slot));
    if (slot == "quantifier") return label_binding(inst, "quantifier");
    if (slot == "window_a") return describe_window(std::get<TimeWindow>(inst.bindings.at("window_a")));
    if (slot == "window_b") {
      TimeWindow wa = std::get<TimeWindow>(inst.bindings.at("window_a"));
      TimeWindow wb = std::get<TimeWindow>(inst.bindings.at("window_b"));
      std::string a_text = describe_window(wa);
      std::string b_text = describe_window(wb);
      // "the first half of year Y" vs "the second half of year Y" reads
      // better as "the second half of that same year".
      CivilTime ba = civil_from_instant(wa.begin), bb = civil_from_instant(wb.begin);
      if (ba.year == bb.year && a_text == "the first half of year " + std::to_string(ba.year) &&
          b_text == "the second half of year " + std::to_string(bb.year))
        return "the second half of that same year";
      return b_text;
    }
    if (slot == "path") {
      const auto& path = std::get<std::vector<std::string>>(inst.bindings.at("path"));
      return path_text(path, ctx.lexicon, &fallback);
    }
    if (slot == "chain") return chain_text(inst, ctx.lexicon, &fallback);
    throw TemplateSlotError("template '" + tmpl->form + "': slot '{" + slot +
                            "}' cannot be filled");
  };

  std::string text;
  const std::string& pattern = tmpl->pattern;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] != '{') {
      text.push_back(pattern[i]);
      continue;
    }
    auto close = pattern.find('}', i);
    if (close == std::string::npos)
      throw TemplateSlotError("template '" + tmpl->form + "': unterminated '{'");
    text += resolve(pattern.substr(i + 1, close - i - 1));
    i = close;
  }

  // Sentence hygiene: capitalize the first letter, terminate with a period.
  for (auto& c : text) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) break;
  }
  if (!text.empty() && text.back() != '.') text.push_back('.');
  if (lexicon_fallback) *lexicon_fallback = fallback;
  return text;
}

// ---------------------------------------------------------------------------
// Document planning.

struct Sentence {
  std::string text;
  std::string instance_id;
  SchemaKind kind = SchemaKind::arc;
  double truth_degree = 0.0;
  bool lexicon_fallback = false;
};

struct ReportHeader {
  std::string log_name;
  TimeWindow time_span;
  std::int64_t trace_count = 0;
  std::int64_t variant_count = 0;
};

struct Report {
  ReportHeader header;
  std::vector<Sentence> sentences;
};

// Realizes the selected instances in the deterministic report order:
// category (period, activity, arc, pattern, variant), truth desc, text asc.
// Duplicate sentence texts keep the higher-truth instance.
inline Report plan_document(const std::vector<ProtoformInstance>& instances,
                            const RealizationContext& ctx, ReportHeader header) {
  Report report;
  report.header = std::move(header);
  for (const auto& inst : instances) {
    bool fallback = false;
    std::string text;
    try {
      text = realize_instance(inst, ctx, &fallback);
    } catch (const Error& e) {
      throw Error(e.category(), "instance '" + inst.id + "': " + e.what());
    }
    report.sentences.push_back(
        {std::move(text), inst.id, inst.schema.kind, inst.truth_degree, fallback});
  }
  std::sort(report.sentences.begin(), report.sentences.end(),
            [](const Sentence& a, const Sentence& b) {
              int ca = category_order(a.kind), cb = category_order(b.kind);
              if (ca != cb) return ca < cb;
              if (a.truth_degree != b.truth_degree) return a.truth_degree > b.truth_degree;
              if (a.text != b.text) return a.text < b.text;
              return a.instance_id < b.instance_id;
            });
  // Dedup identical texts; after the sort the first occurrence has the
  // highest truth within its category, and categories are ordered anyway.
  std::map<std::string, double> best;
  for (const auto& s : report.sentences) {
    auto [it, inserted] = best.emplace(s.text, s.truth_degree);
    if (!inserted) it->second = std::max(it->second, s.truth_degree);
  }
  std::vector<Sentence> kept;
  std::set<std::string> seen;
  for (auto& s : report.sentences)
    if (s.truth_degree >= best[s.text] && seen.insert(s.text).second)
      kept.push_back(std::move(s));
  report.sentences = std::move(kept);
  return report;
}

inline std::string report_to_text(const Report& report) {
  std::ostringstream os;
  os << "Process report for " << report.header.log_name << "\n";
  os << "Time span: " << format_iso_utc(report.header.time_span.begin) << " to "
     << format_iso_utc(report.header.time_span.end) << "\n";
  os << "Traces: " << report.header.trace_count
     << " | Variants: " << report.header.variant_count << "\n\n";
  if (report.sentences.empty()) {
    os << "(no statements passed the selection thresholds)\n";
    return os.str();
  }
  for (const auto& s : report.sentences) os << "- " << s.text << "\n";
  return os.str();
}

inline nlohmann::json binding_to_json(const BindingValue& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, TimeWindow>)
          return {{"begin", format_iso_utc(x.begin)}, {"end", format_iso_utc(x.end)}};
        else
          return x;
      },
      v);
}

inline nlohmann::json report_to_json(const Report& report,
                                     const std::vector<ProtoformInstance>& instances) {
  std::map<std::string, const ProtoformInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.id] = &inst;

  nlohmann::json sentences = nlohmann::json::array();
  for (const auto& s : report.sentences) {
    nlohmann::json j;
    j["text"] = s.text;
    j["instance"] = s.instance_id;
    j["kind"] = to_string(s.kind);
    j["truth_degree"] = s.truth_degree;
    j["lexicon_fallback"] = s.lexicon_fallback;
    if (auto it = by_id.find(s.instance_id); it != by_id.end()) {
      nlohmann::json bindings;
      for (const auto& [key, value] : it->second->bindings)
        bindings[key] = binding_to_json(value);
      j["bindings"] = std::move(bindings);
      j["support_size"] = it->second->support_size;
    }
    sentences.push_back(std::move(j));
  }
  return {{"schema", "lognarrator-report-v1"},
          {"header",
           {{"log", report.header.log_name},
            {"time_span",
             {{"begin", format_iso_utc(report.header.time_span.begin)},
              {"end", format_iso_utc(report.header.time_span.end)}}},
            {"traces", report.header.trace_count},
            {"variants", report.header.variant_count}}},
          {"sentences", std::move(sentences)}};
}

}  // namespace lognar
