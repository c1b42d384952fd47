#pragma once

// Protoform schemas and their instantiation over an indicator set.
//
// A protoform is an abstracted sentence schema ("Q B activity lasts A") with
// three abstraction levels:
//   level 2  schema with free slots (Protoform)
//   level 1  slots bound to concrete indicators, terms still symbolic
//            (BoundProtoform)
//   level 0  fully evaluated instance with a truth degree
//            (ProtoformInstance)
// Pattern schemas compose two or more arc schemas (branches out of one
// activity, or chains along a frequent path).

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lognarrator/fuzzy.hpp"
#include "lognarrator/indicators.hpp"
#include "lognarrator/summary_config.hpp"
#include "lognarrator/vocab.hpp"

namespace lognar {

struct Protoform {
  std::string name;
  SchemaKind kind = SchemaKind::arc;
  std::optional<std::string> quantifier;  // Q slot (label into the quantifier library)
  std::optional<std::string> qualifier;   // B slot, described symbolically
  std::string summarizer;                 // A slot, described symbolically
  int abstraction_level = 2;
};

inline std::vector<Protoform> default_schemas() {
  return {
      {"period_change", SchemaKind::period, std::nullopt, std::nullopt,
       "relative change of an indicator between two windows"},
      {"activity_duration", SchemaKind::activity, "most", "executions of the activity",
       "duration around the mean"},
      {"activity_duration_compare", SchemaKind::activity, "most", "executions of the activity",
       "exceeding the other activity's mean by about the observed difference"},
      {"arc_waiting", SchemaKind::arc, "most", "traversals of the arc",
       "waiting around the mean"},
      {"pattern_branch", SchemaKind::pattern, std::nullopt, std::nullopt,
       "composition of two alternative outgoing arcs"},
      {"pattern_chain", SchemaKind::pattern, std::nullopt, std::nullopt,
       "composition of the consecutive arcs of a frequent path"},
      {"variant_share", SchemaKind::variant, "most", "traces following the path",
       "cycle time around the mean"},
      {"variant_milestone", SchemaKind::variant, "most", "traces passing the milestones",
       "stay around the mean"},
  };
}

using BindingValue = std::variant<std::string, std::int64_t, double,
                                  std::vector<std::string>, TimeWindow>;

// Level 1: slots bound, fuzzy terms chosen but not yet evaluated.
struct BoundProtoform {
  Protoform schema;
  std::string form;  // realization form (template selector)
  std::string id;    // deterministic binding identifier
  std::map<std::string, BindingValue> bindings;
  std::vector<double> population;
  FuzzySet summarizer;
  std::optional<FuzzySet> qualifier;
  std::optional<Quantifier> quantifier;
  bool crisp = false;  // degenerate summarizer: truth 1.0 when defined
  int abstraction_level = 1;
  std::int64_t support = 0;
  std::vector<BoundProtoform> children;  // >= 2 for pattern kinds
};

// Level 0: fully evaluated.
struct ProtoformInstance {
  Protoform schema;
  std::string form;
  std::string id;
  std::map<std::string, BindingValue> bindings;
  double truth_degree = 0.0;
  std::int64_t support_size = 0;
  int abstraction_level = 0;
  std::vector<ProtoformInstance> children;
};

namespace proto_detail {

inline std::string join_path(const std::vector<std::string>& path, const char* sep = ">") {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += sep;
    out += path[i];
  }
  return out;
}

// Term candidates for a seconds-valued population: the matching user
// vocabulary if present, otherwise one auto-centered "around mean" term.
inline std::vector<FuzzySet> term_candidates(const SummaryConfig& cfg,
                                             const std::string& variable_name, double mean) {
  if (const LinguisticVariable* var = find_variable(cfg, variable_name)) return var->terms;
  return {around_value(mean, DomainUnits::seconds)};
}

inline BoundProtoform make_arc_bound(const Protoform& schema, const ArcStats& as,
                                     const FuzzySet& term, const Quantifier& q) {
  BoundProtoform bp;
  bp.schema = schema;
  bp.form = as.from == as.to ? "arc_self" : "arc";
  bp.id = "arc:" + as.from + "->" + as.to + ":" + term.label + ":" +
          std::to_string(static_cast<std::int64_t>(std::llround(term.b)));
  bp.bindings["from"] = as.from;
  bp.bindings["to"] = as.to;
  bp.bindings["duration"] = static_cast<std::int64_t>(std::llround(as.waiting.mean));
  bp.bindings["term"] = term.label;
  bp.population = as.waiting_samples;
  bp.summarizer = term;
  bp.quantifier = q;
  bp.support = as.traversal_count;
  return bp;
}

}  // namespace proto_detail

// Lowers schemas to level-1 bound forms against the indicator set.
inline std::vector<BoundProtoform> bind_schemas(const std::vector<Protoform>& schemas,
                                                const IndicatorSet& ind,
                                                const SummaryConfig& cfg) {
  using proto_detail::join_path;
  using proto_detail::make_arc_bound;
  using proto_detail::term_candidates;

  std::vector<BoundProtoform> out;
  const Quantifier& q_default = find_quantifier(cfg, cfg.default_quantifier);

  auto enabled = [&](const std::string& name) { return cfg.enabled_schemas.count(name) > 0; };

  for (const auto& schema : schemas) {
    if (!enabled(schema.name)) continue;
    const Quantifier& q =
        schema.quantifier ? find_quantifier(cfg, *schema.quantifier) : q_default;

    if (schema.name == "period_change") {
      for (const auto& pc : ind.period_comparisons) {
        // rc <= -1 (a zero numerator) has no "N% less" surface form; skip.
        if (pc.relative_change <= -1.0) continue;
        BoundProtoform bp;
        bp.schema = schema;
        bp.form = pc.whole_log_totals ? "period_totals"
                  : pc.metric == PeriodMetric::activity_count ? "period_count"
                  : pc.metric == PeriodMetric::activity_mean_duration ? "period_duration"
                                                                      : "period_waiting";
        bp.id = "period:" + to_string(pc.metric) + ":" + join_path(pc.subject, ",") + ":" +
                format_iso_utc(pc.window_a.begin) + ":" + format_iso_utc(pc.window_b.begin) +
                (pc.whole_log_totals ? ":totals" : "");
        bp.bindings["subject"] = pc.subject.front();
        if (pc.subject.size() > 1) {
          bp.bindings["a"] = pc.subject[0];
          bp.bindings["b"] = pc.subject[1];
          bp.bindings["from"] = pc.subject[0];
          bp.bindings["to"] = pc.subject[1];
        }
        bp.bindings["relative_change"] = pc.relative_change;
        bp.bindings["window_a"] = pc.window_a;
        bp.bindings["window_b"] = pc.window_b;
        bp.crisp = true;
        bp.summarizer = around_value(pc.relative_change, DomainUnits::ratio);
        bp.support = pc.samples_a + pc.samples_b;
        out.push_back(std::move(bp));
      }
    } else if (schema.name == "activity_duration") {
      for (const auto& [label, as] : ind.activities) {
        if (!as.duration) continue;
        for (const auto& term : term_candidates(cfg, "duration", as.duration->mean)) {
          BoundProtoform bp;
          bp.schema = schema;
          bp.form = "activity";
          bp.id = "activity:" + label + ":" + term.label;
          bp.bindings["activity"] = label;
          bp.bindings["duration"] =
              static_cast<std::int64_t>(std::llround(as.duration->mean));
          bp.bindings["term"] = term.label;
          bp.bindings["quantifier"] = q.label;
          bp.population = as.duration_samples;
          bp.summarizer = term;
          bp.quantifier = q;
          bp.support = as.duration->count;
          out.push_back(std::move(bp));
        }
      }
    } else if (schema.name == "activity_duration_compare") {
      // Flagship comparative form: population = the longer activity's
      // durations; summarizer = exceeding the other mean by about the
      // observed mean difference.
      for (const auto& [la, sa] : ind.activities) {
        if (!sa.duration) continue;
        for (const auto& [lb, sb] : ind.activities) {
          if (la == lb || !sb.duration) continue;
          double delta = sa.duration->mean - sb.duration->mean;
          if (delta <= 0) continue;
          BoundProtoform bp;
          bp.schema = schema;
          bp.form = "activity_compare";
          bp.id = "activity:compare:" + la + ">" + lb;
          bp.bindings["a"] = la;
          bp.bindings["b"] = lb;
          bp.bindings["delta"] = static_cast<std::int64_t>(std::llround(delta));
          bp.bindings["quantifier"] = q.label;
          bp.population.reserve(sa.duration_samples.size());
          for (double dsec : sa.duration_samples)
            bp.population.push_back(dsec - sb.duration->mean);
          bp.summarizer = around_value(delta, DomainUnits::seconds);
          bp.quantifier = q;
          bp.support = sa.duration->count;
          out.push_back(std::move(bp));
        }
      }
    } else if (schema.name == "arc_waiting") {
      for (const auto& [key, as] : ind.arcs) {
        if (as.waiting.count < 1) continue;
        for (const auto& term : term_candidates(cfg, "waiting", as.waiting.mean))
          out.push_back(make_arc_bound(schema, as, term, q));
      }
    } else if (schema.name == "pattern_branch") {
      // Alternative continuations out of one activity, pairwise, realized in
      // ascending frequency order ("6% of times ... on the contrary 33%").
      for (const auto& [label, as] : ind.activities) {
        if (as.execution_count < 1) continue;
        std::vector<const ArcStats*> successors;
        for (const auto& [key, arc] : ind.arcs)
          if (key.first == label && arc.waiting.count >= 1) successors.push_back(&arc);
        if (successors.size() < 2) continue;
        std::sort(successors.begin(), successors.end(), [](const ArcStats* x, const ArcStats* y) {
          if (x->traversal_count != y->traversal_count)
            return x->traversal_count > y->traversal_count;
          return x->to < y->to;
        });
        if (static_cast<int>(successors.size()) > cfg.max_branch_successors)
          successors.resize(cfg.max_branch_successors);
        for (std::size_t i = 0; i < successors.size(); ++i) {
          for (std::size_t j = i + 1; j < successors.size(); ++j) {
            const ArcStats* lo = successors[j];  // less frequent first
            const ArcStats* hi = successors[i];
            if (lo->traversal_count == hi->traversal_count && lo->to > hi->to)
              std::swap(lo, hi);
            BoundProtoform bp;
            bp.schema = schema;
            bp.form = "pattern_branch";
            bp.id = "pattern:branch:" + label + ">" + lo->to + "|" + hi->to;
            double denom = static_cast<double>(as.execution_count);
            bp.bindings["from"] = label;
            bp.bindings["to1"] = lo->to;
            bp.bindings["to2"] = hi->to;
            bp.bindings["freq1"] = static_cast<double>(lo->traversal_count) / denom;
            bp.bindings["freq2"] = static_cast<double>(hi->traversal_count) / denom;
            bp.bindings["d1"] = static_cast<std::int64_t>(std::llround(lo->waiting.mean));
            bp.bindings["d2"] = static_cast<std::int64_t>(std::llround(hi->waiting.mean));
            bp.children.push_back(
                make_arc_bound(schema, *lo, around_value(lo->waiting.mean), q));
            bp.children.back().schema.kind = SchemaKind::arc;
            bp.children.back().schema.name = "arc_waiting";
            bp.children.push_back(
                make_arc_bound(schema, *hi, around_value(hi->waiting.mean), q));
            bp.children.back().schema.kind = SchemaKind::arc;
            bp.children.back().schema.name = "arc_waiting";
            bp.support = lo->traversal_count + hi->traversal_count;
            out.push_back(std::move(bp));
          }
        }
      }
    } else if (schema.name == "pattern_chain") {
      int taken = 0;
      for (const auto& vs : ind.variants) {
        if (taken >= cfg.chain_variants) break;
        ++taken;
        const auto& path = vs.variant.path;
        if (path.size() < 3) continue;  // a chain composes >= 2 arcs
        BoundProtoform bp;
        bp.schema = schema;
        bp.form = "pattern_chain";
        bp.id = "pattern:chain:" + join_path(path);
        bool complete = true;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          auto it = ind.arcs.find({path[i], path[i + 1]});
          if (it == ind.arcs.end() || it->second.waiting.count < 1) {
            complete = false;
            break;
          }
          auto child =
              make_arc_bound(schema, it->second, around_value(it->second.waiting.mean), q);
          child.schema.kind = SchemaKind::arc;
          child.schema.name = "arc_waiting";
          bp.children.push_back(std::move(child));
        }
        if (!complete) continue;
        bp.bindings["path"] = path;
        bp.support = vs.variant.trace_count;
        out.push_back(std::move(bp));
      }
    } else if (schema.name == "variant_share") {
      for (const auto& vs : ind.variants) {
        if (vs.relative_frequency < cfg.support_floor) continue;
        for (const auto& term : term_candidates(cfg, "cycle", vs.cycle_time.mean)) {
          BoundProtoform bp;
          bp.schema = schema;
          bp.form = "variant";
          bp.id = "variant:path:" + join_path(vs.variant.path) + ":" + term.label;
          bp.bindings["path"] = vs.variant.path;
          bp.bindings["freq"] = vs.relative_frequency;
          bp.bindings["duration"] =
              static_cast<std::int64_t>(std::llround(vs.cycle_time.mean));
          bp.bindings["term"] = term.label;
          bp.population = vs.cycle_samples;
          bp.summarizer = term;
          bp.quantifier = q;
          bp.support = vs.variant.trace_count;
          out.push_back(std::move(bp));
        }
      }
    } else if (schema.name == "variant_milestone") {
      for (const auto& ms : ind.milestones) {
        if (ms.trace_count < 1 || !ms.cycle) continue;
        for (const auto& term : term_candidates(cfg, "cycle", ms.cycle->mean)) {
          BoundProtoform bp;
          bp.schema = schema;
          bp.form = "variant_milestone";
          bp.id = "variant:milestone:" + join_path(ms.path) + ":" + term.label;
          bp.bindings["path"] = ms.path;
          bp.bindings["duration"] = static_cast<std::int64_t>(std::llround(ms.cycle->mean));
          bp.bindings["term"] = term.label;
          bp.population = ms.cycle_samples;
          bp.summarizer = term;
          bp.quantifier = q;
          bp.support = ms.trace_count;
          out.push_back(std::move(bp));
        }
      }
    }
  }
  return out;
}

// Lowers a level-1 bound form to a level-0 evaluated instance. Pattern
// compositions take the minimum of their children's truth degrees.
inline std::optional<ProtoformInstance> evaluate_bound(const BoundProtoform& bp) {
  ProtoformInstance inst;
  inst.schema = bp.schema;
  inst.form = bp.form;
  inst.id = bp.id;
  inst.bindings = bp.bindings;
  inst.support_size = bp.support;
  inst.abstraction_level = 0;

  if (!bp.children.empty()) {
    double truth = 1.0;
    for (const auto& child : bp.children) {
      auto ci = evaluate_bound(child);
      if (!ci) return std::nullopt;
      truth = std::min(truth, ci->truth_degree);
      inst.children.push_back(std::move(*ci));
    }
    inst.truth_degree = truth;
    return inst;
  }
  if (bp.crisp) {
    inst.truth_degree = 1.0;
    return inst;
  }
  if (!bp.quantifier) return std::nullopt;
  try {
    inst.truth_degree =
        truth_degree(*bp.quantifier, bp.qualifier, bp.summarizer, bp.population);
  } catch (const UndefinedTruthError&) {
    return std::nullopt;  // unbindable: discarded upstream
  }
  return inst;
}

// Full instantiation: bind then evaluate; undefined instances are dropped.
inline std::vector<ProtoformInstance> instantiate(const std::vector<Protoform>& schemas,
                                                  const IndicatorSet& ind,
                                                  const SummaryConfig& cfg) {
  std::vector<ProtoformInstance> out;
  for (const auto& bp : bind_schemas(schemas, ind, cfg))
    if (auto inst = evaluate_bound(bp)) out.push_back(std::move(*inst));
  return out;
}

// Drops instances below min_truth, keeps the top `per_category_cap` per
// schema kind by (truth desc, support desc, id asc), and returns them in
// category order. Pure and order-insensitive.
inline std::vector<ProtoformInstance> rank_and_select(std::vector<ProtoformInstance> instances,
                                                      double min_truth,
                                                      std::int64_t per_category_cap) {
  if (min_truth < 0.0 || min_truth > 1.0)
    throw InvalidArgumentError("min_truth must be in [0,1]");
  if (per_category_cap < 1)
    throw InvalidArgumentError("per-category cap must be >= 1");

  std::erase_if(instances, [&](const ProtoformInstance& i) { return i.truth_degree < min_truth; });
  std::sort(instances.begin(), instances.end(),
            [](const ProtoformInstance& a, const ProtoformInstance& b) {
              int ca = category_order(a.schema.kind), cb = category_order(b.schema.kind);
              if (ca != cb) return ca < cb;
              if (a.truth_degree != b.truth_degree) return a.truth_degree > b.truth_degree;
              if (a.support_size != b.support_size) return a.support_size > b.support_size;
              return a.id < b.id;
            });
  std::vector<ProtoformInstance> out;
  std::map<SchemaKind, std::int64_t> taken;
  for (auto& inst : instances)
    if (taken[inst.schema.kind]++ < per_category_cap) out.push_back(std::move(inst));
  return out;
}

}  // namespace lognar
