#pragma once

// Summary-side configuration: quantifier library, linguistic vocabulary,
// schema toggles, milestones and surface templates. Built from defaults and
// overridden by config files (see config.hpp).

#include <set>
#include <string>
#include <vector>

#include "lognarrator/fuzzy.hpp"
#include "lognarrator/vocab.hpp"

namespace lognar {

struct MilestoneRequest {
  std::string name;
  std::vector<std::string> path;
  bool subsequence = true;
};

struct SummaryConfig {
  std::vector<Quantifier> quantifiers = default_quantifiers();
  // Optional user vocabularies; matched to indicators by variable name:
  // "waiting" (arcs), "duration" (activities), "cycle" (variants/milestones).
  // Indicators without a matching variable get an auto-centered "around the
  // mean" term.
  std::vector<LinguisticVariable> variables;
  // Enabled schema names; see default_schema_names().
  std::set<std::string> enabled_schemas;
  double support_floor = 0.05;  // minimum relative frequency for variant sentences
  std::string default_quantifier = "most";
  int chain_variants = 5;       // top variants considered for chain patterns
  int max_branch_successors = 4;
  std::vector<MilestoneRequest> milestones;
  std::vector<TemplateDef> templates;  // merged over the built-in defaults
  Lexicon lexicon;
  // Arcs realized with the "arc_followup" phrasing instead of "arc".
  std::set<std::pair<std::string, std::string>> followup_arcs;
};

inline const std::vector<std::string>& default_schema_names() {
  static const std::vector<std::string> names = {
      "period_change",  "activity_duration", "activity_duration_compare",
      "arc_waiting",    "pattern_branch",    "pattern_chain",
      "variant_share",  "variant_milestone"};
  return names;
}

inline const Quantifier& find_quantifier(const SummaryConfig& cfg, const std::string& label) {
  for (const auto& q : cfg.quantifiers)
    if (q.label == label) return q;
  throw ConfigError("unknown quantifier '" + label + "'");
}

inline const LinguisticVariable* find_variable(const SummaryConfig& cfg,
                                               const std::string& name) {
  for (const auto& v : cfg.variables)
    if (v.name == name) return &v;
  return nullptr;
}

inline SummaryConfig default_summary_config() {
  SummaryConfig cfg;
  for (const auto& name : default_schema_names()) cfg.enabled_schemas.insert(name);
  return cfg;
}

}  // namespace lognar
