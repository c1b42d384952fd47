#pragma once

// Surface vocabulary: sentence templates and the activity lexicon
// (the "expert knowledge" channel of the realizer).

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lognar {

enum class SchemaKind { period, activity, arc, pattern, variant };

inline std::string to_string(SchemaKind k) {
  switch (k) {
    case SchemaKind::period: return "period";
    case SchemaKind::activity: return "activity";
    case SchemaKind::arc: return "arc";
    case SchemaKind::pattern: return "pattern";
    case SchemaKind::variant: return "variant";
  }
  return "?";
}

// Report ordering: period facts first, trace-level facts last.
inline int category_order(SchemaKind k) { return static_cast<int>(k); }

struct TemplateDef {
  std::string form;  // e.g. "arc", "arc_self", "pattern_branch"
  SchemaKind kind = SchemaKind::arc;
  std::string language = "en";
  std::string pattern;  // text with {slot} placeholders
};

struct LexEntry {
  std::string singular;
  std::string plural;
  std::string article;  // "a"/"an"/... empty = derive from the first letter
};

namespace lex_detail {

inline std::string default_plural(const std::string& label) {
  if (label.empty()) return label;
  auto ends_with = [&](const char* suffix) {
    std::string s(suffix);
    return label.size() >= s.size() && label.compare(label.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with("s") || ends_with("x") || ends_with("z") || ends_with("ch") || ends_with("sh"))
    return label + "es";
  if (label.size() >= 2 && label.back() == 'y') {
    char prev = static_cast<char>(std::tolower(static_cast<unsigned char>(label[label.size() - 2])));
    if (prev != 'a' && prev != 'e' && prev != 'i' && prev != 'o' && prev != 'u')
      return label.substr(0, label.size() - 1) + "ies";
  }
  return label + "s";
}

inline std::string default_article(const std::string& word) {
  if (word.empty()) return "a";
  char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word[0])));
  return (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ? "an" : "a";
}

}  // namespace lex_detail

struct Lexicon {
  std::map<std::string, LexEntry> entries;

  // Unknown labels fall back to the raw label with default pluralization;
  // `fallback` reports whether that happened (flagged in sentence provenance).
  LexEntry lookup(const std::string& label, bool* fallback = nullptr) const {
    auto it = entries.find(label);
    if (it != entries.end()) {
      if (fallback) *fallback = false;
      LexEntry e = it->second;
      if (e.singular.empty()) e.singular = label;
      if (e.plural.empty()) e.plural = lex_detail::default_plural(e.singular);
      if (e.article.empty()) e.article = lex_detail::default_article(e.singular);
      return e;
    }
    if (fallback) *fallback = true;
    return LexEntry{label, lex_detail::default_plural(label), lex_detail::default_article(label)};
  }
};

}  // namespace lognar
