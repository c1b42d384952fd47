// lognarrator CLI: describe | discover | stats | dump-defaults
//
// Exit codes: 0 success, 2 configuration, 3 ingest, 4 pipeline, 5 output I/O.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lognarrator/lognarrator.hpp"

namespace {

using lognar::RunConfig;

struct FlagValues {
  std::string log;
  std::string format = "csv";
  std::string case_col = "case";
  std::string activity_col = "activity";
  std::string timestamp_col = "timestamp";
  std::string timestamp_format = std::string(lognar::kDefaultTimestampPattern);
  std::string lifecycle_col;
  std::string abstraction = "complete_only";
  double min_dependency = 0.0;
  std::int64_t min_arc_count = 1;
  std::int64_t min_activity_count = 1;
  std::vector<std::string> compares;
  double min_truth = 0.6;
  std::int64_t cap = 5;
  std::int64_t top_variants = 20;
  std::string out = "text";
  std::string dot;
  std::string lang = "en";
  std::string config;
};

void add_flags(CLI::App* cmd, FlagValues& v) {
  cmd->add_option("--log", v.log, "Input event log path");
  cmd->add_option("--format", v.format, "Input format: csv or xes");
  cmd->add_option("--case-col", v.case_col, "CSV column holding the case id");
  cmd->add_option("--activity-col", v.activity_col, "CSV column holding the activity label");
  cmd->add_option("--timestamp-col", v.timestamp_col, "CSV column holding the timestamp");
  cmd->add_option("--timestamp-format", v.timestamp_format,
                  "Timestamp pattern (%Y %m %d %H %M %S %f %z tokens)");
  cmd->add_option("--lifecycle-col", v.lifecycle_col, "Optional CSV lifecycle column");
  cmd->add_option("--abstraction", v.abstraction,
                  "Lifecycle abstraction: complete_only or collapse_pairs");
  cmd->add_option("--min-dependency", v.min_dependency, "Arc dependency floor in [-1,1]");
  cmd->add_option("--min-arc-count", v.min_arc_count, "Arc frequency floor");
  cmd->add_option("--min-activity-count", v.min_activity_count, "Activity frequency floor");
  cmd->add_option("--compare", v.compares,
                  "Period comparison 'metric:subject:startA..endA:startB..endB' "
                  "or totals 'activity_count:A,B' (repeatable)");
  cmd->add_option("--min-truth", v.min_truth, "Minimum truth degree for report sentences");
  cmd->add_option("--cap", v.cap, "Maximum sentences per category");
  cmd->add_option("--top-variants", v.top_variants, "Number of top variants to report");
  cmd->add_option("--out", v.out, "Report mode: text or json");
  cmd->add_option("--dot", v.dot, "Write the process model as DOT to this path");
  cmd->add_option("--lang", v.lang, "Report language tag");
  cmd->add_option("--config", v.config, "Config file ([run] plus summary sections)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw lognar::ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// [run] file entries; flags given on the command line win.
void apply_run_entry(RunConfig& cfg, const lognar::ConfigEntry& e, const std::string& where) {
  auto num = [&](const std::string& text) {
    return lognar::config_detail::parse_number(where + ":" + std::to_string(e.line), text);
  };
  if (e.key == "log") cfg.log_path = e.value;
  else if (e.key == "format") cfg.format = e.value;
  else if (e.key == "case-col") cfg.case_col = e.value;
  else if (e.key == "activity-col") cfg.activity_col = e.value;
  else if (e.key == "timestamp-col") cfg.timestamp_col = e.value;
  else if (e.key == "timestamp-format") cfg.timestamp_format = e.value;
  else if (e.key == "lifecycle-col") cfg.lifecycle_col = e.value;
  else if (e.key == "abstraction") cfg.abstraction = e.value;
  else if (e.key == "min-dependency") cfg.min_dependency = num(e.value);
  else if (e.key == "min-arc-count") cfg.min_arc_count = static_cast<std::int64_t>(num(e.value));
  else if (e.key == "min-activity-count")
    cfg.min_activity_count = static_cast<std::int64_t>(num(e.value));
  else if (e.key == "compare") cfg.compares.push_back(lognar::parse_compare_request(e.value));
  else if (e.key == "min-truth") cfg.min_truth = num(e.value);
  else if (e.key == "cap") cfg.per_category_cap = static_cast<std::int64_t>(num(e.value));
  else if (e.key == "top-variants") cfg.top_variants = static_cast<std::int64_t>(num(e.value));
  else if (e.key == "out") cfg.out = e.value;
  else if (e.key == "dot") cfg.dot_path = e.value;
  else if (e.key == "lang") cfg.language = e.value;
  else if (e.key == "policy") {
    if (e.value == "skip") cfg.error_policy = lognar::ErrorPolicy::skip;
    else if (e.value == "fail") cfg.error_policy = lognar::ErrorPolicy::fail;
    else
      throw lognar::ConfigError(where + ":" + std::to_string(e.line) +
                                ": policy must be 'skip' or 'fail'");
  } else if (e.key == "protoform-config" || e.key == "template-config") {
    std::string text = read_file(e.value);
    lognar::apply_summary_sections(cfg.summary, lognar::parse_config_sections(text, e.value),
                                   e.value);
  } else {
    throw lognar::ConfigError(where + ":" + std::to_string(e.line) + ": unknown [run] key '" +
                              e.key + "'");
  }
}

RunConfig build_run_config(const CLI::App* cmd, const FlagValues& v) {
  RunConfig cfg;
  if (!v.config.empty()) {
    std::string text = read_file(v.config);
    auto sections = lognar::parse_config_sections(text, v.config);
    for (const auto& sec : sections)
      if (sec.kind == "run")
        for (const auto& e : sec.entries) apply_run_entry(cfg, e, v.config);
    lognar::apply_summary_sections(cfg.summary, sections, v.config);
    cfg.config_path = v.config;
  }
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--log")) cfg.log_path = v.log;
  if (given("--format")) cfg.format = v.format;
  if (given("--case-col")) cfg.case_col = v.case_col;
  if (given("--activity-col")) cfg.activity_col = v.activity_col;
  if (given("--timestamp-col")) cfg.timestamp_col = v.timestamp_col;
  if (given("--timestamp-format")) cfg.timestamp_format = v.timestamp_format;
  if (given("--lifecycle-col")) cfg.lifecycle_col = v.lifecycle_col;
  if (given("--abstraction")) cfg.abstraction = v.abstraction;
  if (given("--min-dependency")) cfg.min_dependency = v.min_dependency;
  if (given("--min-arc-count")) cfg.min_arc_count = v.min_arc_count;
  if (given("--min-activity-count")) cfg.min_activity_count = v.min_activity_count;
  if (given("--compare")) {
    cfg.compares.clear();
    for (const auto& spec : v.compares)
      cfg.compares.push_back(lognar::parse_compare_request(spec));
  }
  if (given("--min-truth")) cfg.min_truth = v.min_truth;
  if (given("--cap")) cfg.per_category_cap = v.cap;
  if (given("--top-variants")) cfg.top_variants = v.top_variants;
  if (given("--out")) cfg.out = v.out;
  if (given("--dot")) cfg.dot_path = v.dot;
  if (given("--lang")) cfg.language = v.lang;
  return cfg;
}

int dispatch(const std::string& command, const CLI::App* cmd, const FlagValues& flags) {
  RunConfig cfg = build_run_config(cmd, flags);
  if (command == "describe") {
    auto result = lognar::run_describe(cfg);
    if (cfg.dot_path) lognar::write_file_or_throw(*cfg.dot_path, result.dot);
    if (cfg.out == "json")
      std::cout << result.report_json.dump(2) << "\n";
    else
      std::cout << result.report_text;
    return 0;
  }
  if (command == "discover") {
    auto result = lognar::run_discover(cfg);
    if (cfg.dot_path) lognar::write_file_or_throw(*cfg.dot_path, result.dot);
    if (cfg.out == "json")
      std::cout << result.model_json.dump(2) << "\n";
    else
      std::cout << result.dot;
    return 0;
  }
  if (command == "stats") {
    auto ind = lognar::run_stats(cfg);
    std::cout << lognar::indicator_set_to_json_text(ind);
    return 0;
  }
  return 4;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Narrates event logs: discovers a process model, replays the log for "
               "timing and frequency indicators, scores fuzzy linguistic summaries and "
               "writes a plain-language report."};
  app.require_subcommand(1);

  FlagValues flags;
  CLI::App* describe = app.add_subcommand("describe", "Full pipeline: log to report");
  CLI::App* discover = app.add_subcommand("discover", "Discover the process model only");
  CLI::App* stats = app.add_subcommand("stats", "Replay the log and dump indicators as JSON");
  CLI::App* dump_defaults =
      app.add_subcommand("dump-defaults", "Print the editable default configuration");
  add_flags(describe, flags);
  add_flags(discover, flags);
  add_flags(stats, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (dump_defaults->parsed()) {
      std::cout << lognar::dump_default_config();
      return 0;
    }
    for (CLI::App* cmd : {describe, discover, stats})
      if (cmd->parsed()) return dispatch(cmd->get_name(), cmd, flags);
    return 2;
  } catch (const lognar::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.category());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
