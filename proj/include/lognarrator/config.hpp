#pragma once

// Declarative config format shared by the run, vocabulary/quantifier and
// template configuration. Line oriented:
//
//   # comment
//   [section name...]
//   key = value
//
// Sections: [run], [quantifier <label>], [variable <name>], [schemas],
// [milestone <name>], [template <form>], [lexicon <label>].
// Validation errors name the offending line.

#include <charconv>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lognarrator/realize.hpp"
#include "lognarrator/summary_config.hpp"

namespace lognar {

struct ConfigEntry {
  int line = 0;
  std::string key;
  std::string value;
};

struct ConfigSection {
  int line = 0;
  std::string kind;  // first word of the header
  std::string name;  // remainder of the header (may contain spaces)
  std::vector<ConfigEntry> entries;
};

namespace config_detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(trim(cur));
  return out;
}

inline double parse_number(const std::string& where, const std::string& text) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (...) {
    throw ConfigError(where + ": expected a number, got '" + text + "'");
  }
}

// Shortest round-trip decimal form; integers drop the decimal point.
inline std::string format_number(double v) {
  if (v == static_cast<std::int64_t>(v) && std::fabs(v) < 1e15)
    return std::to_string(static_cast<std::int64_t>(v));
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace config_detail

// Tokenizes a config file into sections; structural errors name line numbers.
inline std::vector<ConfigSection> parse_config_sections(const std::string& text,
                                                        const std::string& source_name) {
  using config_detail::trim;
  std::vector<ConfigSection> sections;
  std::istringstream is(text);
  std::string raw;
  int line_no = 0;
  auto loc = [&](int n) { return source_name + ":" + std::to_string(n); };
  while (std::getline(is, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError(loc(line_no) + ": unterminated section header");
      std::string header = trim(line.substr(1, line.size() - 2));
      if (header.empty()) throw ConfigError(loc(line_no) + ": empty section header");
      auto space = header.find(' ');
      ConfigSection sec;
      sec.line = line_no;
      sec.kind = space == std::string::npos ? header : header.substr(0, space);
      sec.name = space == std::string::npos ? "" : trim(header.substr(space + 1));
      sections.push_back(std::move(sec));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(loc(line_no) + ": expected 'key = value'");
    if (sections.empty())
      throw ConfigError(loc(line_no) + ": entry before any section header");
    sections.back().entries.push_back(
        {line_no, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
  }
  return sections;
}

// ---------------------------------------------------------------------------
// SummaryConfig: apply config sections over an existing configuration
// (defaults or the result of a previous file).

inline void apply_summary_sections(SummaryConfig& cfg,
                                   const std::vector<ConfigSection>& sections,
                                   const std::string& source_name) {
  using namespace config_detail;
  auto loc = [&](int n) { return source_name + ":" + std::to_string(n); };

  for (const auto& sec : sections) {
    if (sec.kind == "run") continue;  // consumed by the CLI layer
    if (sec.kind == "quantifier") {
      if (sec.name.empty()) throw ConfigError(loc(sec.line) + ": quantifier needs a label");
      std::optional<Quantifier> q;
      for (const auto& e : sec.entries) {
        if (e.key == "shape") {
          auto parts = split_ws(e.value);
          if (parts.size() != 4)
            throw ConfigError(loc(e.line) + ": shape needs four numbers 'a b c d'");
          double a = parse_number(loc(e.line), parts[0]);
          double b = parse_number(loc(e.line), parts[1]);
          double c = parse_number(loc(e.line), parts[2]);
          double d = parse_number(loc(e.line), parts[3]);
          try {
            q = make_relative_quantifier(sec.name, a, b, c, d);
          } catch (const Error& err) {
            throw ConfigError(loc(e.line) + ": " + err.what());
          }
        } else {
          throw ConfigError(loc(e.line) + ": unknown quantifier key '" + e.key + "'");
        }
      }
      if (!q) throw ConfigError(loc(sec.line) + ": quantifier '" + sec.name + "' needs a shape");
      bool replaced = false;
      for (auto& existing : cfg.quantifiers)
        if (existing.label == sec.name) {
          existing = *q;
          replaced = true;
        }
      if (!replaced) cfg.quantifiers.push_back(*q);
    } else if (sec.kind == "variable") {
      if (sec.name.empty()) throw ConfigError(loc(sec.line) + ": variable needs a name");
      DomainUnits units = DomainUnits::seconds;
      std::vector<FuzzySet> terms;
      for (const auto& e : sec.entries) {
        if (e.key == "units") {
          if (e.value == "seconds") units = DomainUnits::seconds;
          else if (e.value == "ratio") units = DomainUnits::ratio;
          else if (e.value == "count") units = DomainUnits::count;
          else throw ConfigError(loc(e.line) + ": unknown units '" + e.value + "'");
        } else if (e.key.rfind("term ", 0) == 0) {
          std::string label = trim(e.key.substr(5));
          auto parts = split_ws(e.value);
          if (parts.size() != 4)
            throw ConfigError(loc(e.line) + ": term needs four numbers 'a b c d'");
          try {
            terms.push_back(make_trapezoid(label, parse_number(loc(e.line), parts[0]),
                                           parse_number(loc(e.line), parts[1]),
                                           parse_number(loc(e.line), parts[2]),
                                           parse_number(loc(e.line), parts[3]), units));
          } catch (const Error& err) {
            throw ConfigError(loc(e.line) + ": " + err.what());
          }
        } else {
          throw ConfigError(loc(e.line) + ": unknown variable key '" + e.key + "'");
        }
      }
      for (auto& t : terms) t.units = units;
      LinguisticVariable var;
      try {
        var = make_linguistic_variable(sec.name, units, std::move(terms));
      } catch (const Error& err) {
        throw ConfigError(loc(sec.line) + ": " + err.what());
      }
      bool replaced = false;
      for (auto& existing : cfg.variables)
        if (existing.name == sec.name) {
          existing = var;
          replaced = true;
        }
      if (!replaced) cfg.variables.push_back(std::move(var));
    } else if (sec.kind == "schemas") {
      for (const auto& e : sec.entries) {
        if (e.key == "support-floor") {
          cfg.support_floor = parse_number(loc(e.line), e.value);
          if (cfg.support_floor < 0.0 || cfg.support_floor > 1.0)
            throw ConfigError(loc(e.line) + ": support-floor must be in [0,1]");
        } else if (e.key == "default-quantifier") {
          cfg.default_quantifier = e.value;
        } else if (e.key == "chain-variants") {
          cfg.chain_variants = static_cast<int>(parse_number(loc(e.line), e.value));
          if (cfg.chain_variants < 0)
            throw ConfigError(loc(e.line) + ": chain-variants must be >= 0");
        } else if (e.key == "max-branch") {
          cfg.max_branch_successors = static_cast<int>(parse_number(loc(e.line), e.value));
          if (cfg.max_branch_successors < 2)
            throw ConfigError(loc(e.line) + ": max-branch must be >= 2");
        } else if (e.key == "arc-followup") {
          auto parts = split_list(e.value, '>');
          if (parts.size() != 2 || parts[0].empty() || parts[1].empty())
            throw ConfigError(loc(e.line) + ": arc-followup expects 'From -> To'");
          std::string from = trim(parts[0]);
          if (!from.empty() && from.back() == '-') from = trim(from.substr(0, from.size() - 1));
          cfg.followup_arcs.insert({from, trim(parts[1])});
        } else {
          bool known = false;
          for (const auto& n : default_schema_names()) known |= (n == e.key);
          if (!known)
            throw ConfigError(loc(e.line) + ": unknown schema '" + e.key + "'");
          if (e.value == "on") cfg.enabled_schemas.insert(e.key);
          else if (e.value == "off") cfg.enabled_schemas.erase(e.key);
          else throw ConfigError(loc(e.line) + ": expected 'on' or 'off'");
        }
      }
    } else if (sec.kind == "milestone") {
      if (sec.name.empty()) throw ConfigError(loc(sec.line) + ": milestone needs a name");
      MilestoneRequest req;
      req.name = sec.name;
      for (const auto& e : sec.entries) {
        if (e.key == "path") {
          req.path = split_list(e.value, ',');
          for (const auto& p : req.path)
            if (p.empty()) throw ConfigError(loc(e.line) + ": empty activity in path");
        } else if (e.key == "mode") {
          if (e.value == "subsequence") req.subsequence = true;
          else if (e.value == "exact") req.subsequence = false;
          else throw ConfigError(loc(e.line) + ": mode must be 'subsequence' or 'exact'");
        } else {
          throw ConfigError(loc(e.line) + ": unknown milestone key '" + e.key + "'");
        }
      }
      if (req.path.empty())
        throw ConfigError(loc(sec.line) + ": milestone '" + sec.name + "' needs a path");
      bool replaced = false;
      for (auto& existing : cfg.milestones)
        if (existing.name == req.name) {
          existing = req;
          replaced = true;
        }
      if (!replaced) cfg.milestones.push_back(std::move(req));
    } else if (sec.kind == "template") {
      if (sec.name.empty()) throw ConfigError(loc(sec.line) + ": template needs a form name");
      SchemaKind kind = SchemaKind::arc;
      bool known = false;
      for (const auto& t : default_templates())
        if (t.form == sec.name) {
          kind = t.kind;
          known = true;
          break;
        }
      if (!known)
        throw ConfigError(loc(sec.line) + ": unknown template form '" + sec.name + "'");
      TemplateDef def;
      def.form = sec.name;
      def.kind = kind;
      for (const auto& e : sec.entries) {
        if (e.key == "lang") def.language = e.value;
        else if (e.key == "pattern") def.pattern = e.value;
        else throw ConfigError(loc(e.line) + ": unknown template key '" + e.key + "'");
      }
      if (def.pattern.empty())
        throw ConfigError(loc(sec.line) + ": template '" + sec.name + "' needs a pattern");
      // Validate slots against the declared vocabulary for the kind.
      const auto& allowed = declared_slots().at(kind);
      for (std::size_t i = 0; i < def.pattern.size(); ++i) {
        if (def.pattern[i] != '{') continue;
        auto close = def.pattern.find('}', i);
        if (close == std::string::npos)
          throw ConfigError(loc(sec.line) + ": template '" + sec.name + "': unterminated '{'");
        std::string slot = def.pattern.substr(i + 1, close - i - 1);
        bool ok = false;
        for (const auto& s : allowed) ok |= (s == slot);
        if (!ok)
          throw ConfigError(loc(sec.line) + ": template '" + sec.name +
                            "': undeclared slot '{" + slot + "}'");
        i = close;
      }
      bool replaced = false;
      for (auto& existing : cfg.templates)
        if (existing.form == def.form && existing.language == def.language) {
          existing = def;
          replaced = true;
        }
      if (!replaced) cfg.templates.push_back(std::move(def));
    } else if (sec.kind == "lexicon") {
      if (sec.name.empty()) throw ConfigError(loc(sec.line) + ": lexicon needs an activity label");
      LexEntry entry;
      for (const auto& e : sec.entries) {
        if (e.key == "singular") entry.singular = e.value;
        else if (e.key == "plural") entry.plural = e.value;
        else if (e.key == "article") entry.article = e.value;
        else throw ConfigError(loc(e.line) + ": unknown lexicon key '" + e.key + "'");
      }
      cfg.lexicon.entries[sec.name] = entry;
    } else {
      throw ConfigError(loc(sec.line) + ": unknown section '" + sec.kind + "'");
    }
  }
}

inline SummaryConfig parse_summary_config(const std::string& text,
                                          const std::string& source_name,
                                          SummaryConfig base = default_summary_config()) {
  apply_summary_sections(base, parse_config_sections(text, source_name), source_name);
  return base;
}

// Canonical dump; parse(dump(cfg)) reproduces cfg and dumping again is a
// byte-level fixed point.
inline std::string dump_summary_config(const SummaryConfig& cfg) {
  using config_detail::format_number;
  std::ostringstream os;
  os << "# lognarrator summary configuration\n";
  os << "# quantifiers and terms are trapezoids 'a b c d' (rise [a,b], plateau [b,c],"
        " fall [c,d])\n";
  for (const auto& q : cfg.quantifiers) {
    os << "\n[quantifier " << q.label << "]\n";
    os << "shape = " << format_number(q.shape.a) << " " << format_number(q.shape.b) << " "
       << format_number(q.shape.c) << " " << format_number(q.shape.d) << "\n";
  }
  for (const auto& v : cfg.variables) {
    os << "\n[variable " << v.name << "]\n";
    os << "units = " << to_string(v.units) << "\n";
    for (const auto& t : v.terms)
      os << "term " << t.label << " = " << format_number(t.a) << " " << format_number(t.b)
         << " " << format_number(t.c) << " " << format_number(t.d) << "\n";
  }
  os << "\n[schemas]\n";
  os << "chain-variants = " << cfg.chain_variants << "\n";
  os << "default-quantifier = " << cfg.default_quantifier << "\n";
  os << "max-branch = " << cfg.max_branch_successors << "\n";
  os << "support-floor = " << format_number(cfg.support_floor) << "\n";
  for (const auto& name : default_schema_names())
    os << name << " = " << (cfg.enabled_schemas.count(name) ? "on" : "off") << "\n";
  for (const auto& [from, to] : cfg.followup_arcs)
    os << "arc-followup = " << from << " -> " << to << "\n";
  for (const auto& m : cfg.milestones) {
    os << "\n[milestone " << m.name << "]\n";
    os << "path = ";
    for (std::size_t i = 0; i < m.path.size(); ++i) os << (i ? ", " : "") << m.path[i];
    os << "\n";
    os << "mode = " << (m.subsequence ? "subsequence" : "exact") << "\n";
  }
  for (const auto& t : cfg.templates) {
    os << "\n[template " << t.form << "]\n";
    if (t.language != "en") os << "lang = " << t.language << "\n";
    os << "pattern = " << t.pattern << "\n";
  }
  for (const auto& [label, e] : cfg.lexicon.entries) {
    os << "\n[lexicon " << label << "]\n";
    if (!e.singular.empty()) os << "singular = " << e.singular << "\n";
    if (!e.plural.empty()) os << "plural = " << e.plural << "\n";
    if (!e.article.empty()) os << "article = " << e.article << "\n";
  }
  return os.str();
}

// The user-editable defaults: summary defaults plus the built-in templates
// spelled out so they can be tweaked in place.
inline std::string dump_default_config() {
  SummaryConfig cfg = default_summary_config();
  cfg.templates = default_templates();
  return dump_summary_config(cfg);
}

}  // namespace lognar
