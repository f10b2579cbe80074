#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stgraph/aggregate.hpp"
#include "stgraph/csv.hpp"
#include "stgraph/export.hpp"
#include "stgraph/features.hpp"
#include "stgraph/ingest.hpp"
#include "stgraph/jsonio.hpp"
#include "stgraph/model.hpp"
#include "stgraph/path_builder.hpp"
#include "stgraph/stats.hpp"
#include "stgraph/synth.hpp"

namespace {

using namespace stgraph;

void emit(const std::string& output_path, const std::string& content) {
  if (output_path.empty() || output_path == "-") {
    std::cout << content;
  } else {
    write_file_atomic(output_path, content);
  }
}

std::set<std::string> split_leaves(const std::string& csv) {
  std::set<std::string> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

// Leaves whose token path mentions "kick"; the natural default for the
// kick-pass counter when no explicit leaf list is given.
std::set<std::string> default_kick_leaves(const ModelConfig& cfg) {
  std::set<std::string> out;
  for (const TaxonomyLeaf& leaf : cfg.taxonomy.leaves) {
    for (const std::string& token : leaf.tokens) {
      if (token == "kick") {
        out.insert(leaf.id);
        break;
      }
    }
  }
  return out;
}

std::string default_zone(const ModelConfig& cfg) {
  if (cfg.absolute.index_of("Middle") >= 0) return "Middle";
  const int fallback = cfg.absolute.zone_count() >= 2 ? 1 : 0;
  return cfg.absolute.zone_names.at(static_cast<std::size_t>(fallback));
}

int run_validate(const std::string& dataset_path) {
  Dataset ds = load_dataset_file(dataset_path, /*enforce_invariants=*/false);
  ValidationReport report = validate_dataset(ds);
  if (report.ok()) {
    std::cout << "ok: " << ds.plays.size() << " plays\n";
    return 0;
  }
  std::cout << report.to_string();
  return 2;
}

int run_build(const std::string& dataset_path, const std::string& out, int workers,
              bool lenient) {
  Dataset ds = load_dataset_file(dataset_path, /*enforce_invariants=*/!lenient);
  BuildOutcome outcome = build_all(ds, workers, lenient);
  for (const BuildFailure& f : outcome.failures) {
    std::cerr << "skipped " << f.play_id << ": " << f.message << "\n";
  }
  emit(out, serialize_paths(outcome.paths, ds.config));
  return 0;
}

int run_features(const std::string& paths_path, const std::string& out, int k,
                 const std::string& kick_leaves, const std::string& zone) {
  PathsFile file = load_paths_file(paths_path);
  const std::set<std::string> leaves =
      kick_leaves.empty() ? default_kick_leaves(file.config) : split_leaves(kick_leaves);
  const std::string target = zone.empty() ? default_zone(file.config) : zone;
  FeatureTable table = feature_table(file.paths, file.config, k, leaves, target);
  emit(out, feature_table_csv(table));
  return 0;
}

int run_aggregate(const std::string& paths_path, const std::string& out,
                  const std::vector<std::string>& filters, bool include_initial_time) {
  PathsFile file = load_paths_file(paths_path);
  std::vector<LabeledPath> paths = file.paths;
  if (!filters.empty()) {
    paths = filter_paths(paths, MetaPredicate::parse(filters));
  }
  const SkeletonGraph skel = build_skeleton(file.config);
  AggregateGraph agg =
      union_weighted(paths, skel, AggregateOptions{!include_initial_time});
  emit(out, serialize_aggregate(agg, skel, file.config));
  return 0;
}

double feature_value(const FeatureRow& row, const std::string& feature) {
  if (feature == "max_shift_right") return row.max_shift_right;
  if (feature == "crossing_rank") return row.crossing_rank.as_value();
  if (feature == "kick_pass_count") return row.kick_pass_count;
  if (feature == "path_length") return row.path_length;
  throw usage_error("unknown feature '" + feature + "'");
}

int run_compare(const std::string& table_path, const std::string& out,
                const std::string& feature, const std::string& group_by,
                const std::string& test, const std::string& pairwise, double alpha,
                const std::string& format) {
  if (test != "kruskal" && test != "chi2") {
    throw usage_error("--test must be kruskal or chi2");
  }
  if (format != "table" && format != "structured") {
    throw usage_error("--format must be table or structured");
  }
  if (!pairwise.empty() && pairwise != "dunn-holm") {
    throw usage_error("--pairwise only supports dunn-holm");
  }
  if (!pairwise.empty() && test == "chi2") {
    throw usage_error("--pairwise applies to the kruskal test only");
  }

  FeatureTable table = parse_feature_csv(read_file(table_path));
  std::map<std::string, std::vector<double>> grouped;
  for (const FeatureRow& row : table.rows) {
    auto it = row.meta.find(group_by);
    if (it == row.meta.end()) {
      throw invariant_error("play '" + row.play_id + "' has no tag '" + group_by + "'");
    }
    grouped[it->second].push_back(feature_value(row, feature));
  }
  if (grouped.size() < 2) {
    throw invariant_error("group-by tag '" + group_by + "' yields fewer than 2 groups");
  }

  stats::TestReport report;
  if (test == "kruskal") {
    std::vector<stats::Group> groups;
    for (auto& [label, values] : grouped) groups.push_back({label, std::move(values)});
    report = stats::kruskal_wallis(groups);
    if (!pairwise.empty() && report.p_value < alpha) {
      report.pairwise = stats::dunn_pairwise(groups);
    }
  } else {
    stats::ContingencyTable ct;
    ct.col_labels = {"absent", "present"};
    for (const auto& [label, values] : grouped) {
      std::int64_t present = 0;
      for (double v : values) present += v > 0.0 ? 1 : 0;
      ct.row_labels.push_back(label);
      ct.counts.push_back({static_cast<std::int64_t>(values.size()) - present, present});
    }
    report = stats::chi_square_independence(ct);
  }

  emit(out, format == "structured" ? stats::report_json(report) : stats::report_csv(report));
  return 0;
}

int run_export(const std::string& input_path, const std::string& out,
               const std::string& format) {
  if (format != "dot" && format != "structured" && format != "table") {
    throw usage_error("--format must be dot, structured, or table");
  }
  const std::string text = read_file(input_path);
  const json j = parse_json(text, input_path);
  if (!j.is_object()) throw schema_error(input_path + ": expected a json object");

  std::string kind;
  if (j.contains("kind")) kind = require_string(j.at("kind"), "kind");
  else if (j.contains("plays")) kind = "dataset";
  else if (j.contains("n_players")) kind = "config";
  else throw schema_error(input_path + ": cannot determine object kind");

  std::string rendered;
  if (kind == "paths") {
    PathsFile file = parse_paths(text);
    const SkeletonGraph skel = build_skeleton(file.config);
    if (format == "dot") rendered = paths_overlay_dot(file.paths, skel);
    else if (format == "table") rendered = paths_table(file.paths);
    else rendered = serialize_paths(file.paths, file.config);
  } else if (kind == "aggregate") {
    AggregateFile file = parse_aggregate(text);
    const SkeletonGraph skel = build_skeleton(file.config);
    if (format == "dot") rendered = aggregate_dot(file.aggregate, skel);
    else if (format == "table") rendered = aggregate_table(file.aggregate, skel);
    else rendered = serialize_aggregate(file.aggregate, skel, file.config);
  } else if (kind == "dataset") {
    Dataset ds = load_dataset_file(input_path);
    if (format == "dot") {
      rendered = skeleton_dot(build_skeleton(ds.config));
    } else if (format == "table") {
      std::ostringstream summary;
      summary << "play_id,result,frames,events\n";
      for (const PlayRecord& p : ds.plays) {
        summary << csv_row({p.play_id, p.result, std::to_string(p.frames.size()),
                            std::to_string(p.events.size())});
      }
      rendered = summary.str();
    } else {
      rendered = serialize_dataset(ds);
    }
  } else if (kind == "config") {
    ModelConfig cfg = config_from_json(j);
    const SkeletonGraph skel = build_skeleton(cfg);
    if (format == "dot") rendered = skeleton_dot(skel);
    else if (format == "table") rendered = skeleton_table(skel);
    else rendered = write_canonical(config_to_json(cfg));
  } else {
    throw schema_error(input_path + ": unknown kind '" + kind + "'");
  }
  emit(out, rendered);
  return 0;
}

// One preset gives a homogeneous dataset; several presets give a mixed
// dataset of `plays` plays each, distinguished by the scenario tag.
int run_synth(std::vector<std::string> preset_names, std::uint64_t seed, int plays,
              const std::string& config_path, const std::vector<std::string>& meta,
              const std::string& out) {
  ModelConfig cfg = config_path.empty() ? rugby_preset() : load_config_file(config_path);
  if (preset_names.empty()) preset_names.push_back("open-like");

  Dataset ds;
  ds.config = cfg;
  synth::SplitMix64 seeds(seed);
  for (const std::string& name : preset_names) {
    synth::ScenarioParams params = synth::preset(name);
    params.seed = preset_names.size() == 1 ? seed : seeds.next();
    params.plays = plays;
    for (const std::string& spec : meta) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos || eq == 0) {
        throw usage_error("--meta expects tag=value, got '" + spec + "'");
      }
      params.meta[spec.substr(0, eq)] = spec.substr(eq + 1);
    }
    Dataset part = synth::generate(cfg, params);
    for (PlayRecord& play : part.plays) {
      if (preset_names.size() > 1) play.play_id = name + "-" + play.play_id;
      ds.plays.push_back(std::move(play));
    }
  }
  emit(out, serialize_dataset(ds));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spatio-temporal graph encoding and analysis of team-sport attacking plays"};
  app.require_subcommand(1);

  std::string dataset_path, paths_path, table_path, input_path, out;
  int workers = 1;
  bool lenient = false;
  int k = 5;
  std::string kick_leaves, zone;
  std::vector<std::string> filters;
  bool include_initial_time = false;
  std::string feature, group_by, test_name = "kruskal", pairwise, format = "table";
  double alpha = 0.05;
  std::vector<std::string> preset_names;
  std::uint64_t seed = 42;
  int plays = 10;
  std::string config_path;
  std::vector<std::string> meta;

  auto* validate_cmd = app.add_subcommand("validate", "check a dataset file");
  validate_cmd->add_option("dataset", dataset_path)->required();

  auto* build_cmd = app.add_subcommand("build", "encode plays as labeled paths");
  build_cmd->add_option("dataset", dataset_path)->required();
  build_cmd->add_option("-o,--output", out)->required();
  build_cmd->add_option("--workers", workers)->check(CLI::PositiveNumber);
  build_cmd->add_flag("--lenient", lenient, "skip invalid plays instead of failing");

  auto* features_cmd = app.add_subcommand("features", "per-play feature table");
  features_cmd->add_option("paths", paths_path)->required();
  features_cmd->add_option("-o,--output", out)->required();
  features_cmd->add_option("--k", k, "prefix length in vertices")->check(CLI::PositiveNumber);
  features_cmd->add_option("--kick-leaves", kick_leaves, "comma-separated leaf ids");
  features_cmd->add_option("--zone", zone, "crossing-rank target zone");

  auto* aggregate_cmd = app.add_subcommand("aggregate", "weighted union of paths");
  aggregate_cmd->add_option("paths", paths_path)->required();
  aggregate_cmd->add_option("-o,--output", out)->required();
  aggregate_cmd->add_option("--filter", filters, "tag=value, repeatable (conjunction)");
  aggregate_cmd->add_flag("--include-initial-time", include_initial_time,
                          "count the initial vertex in time-spent");

  auto* compare_cmd = app.add_subcommand("compare", "group comparison tests");
  compare_cmd->add_option("table", table_path)->required();
  compare_cmd->add_option("--feature", feature)->required();
  compare_cmd->add_option("--group-by", group_by)->required();
  compare_cmd->add_option("--test", test_name, "kruskal or chi2");
  compare_cmd->add_option("--pairwise", pairwise, "dunn-holm");
  compare_cmd->add_option("--alpha", alpha, "omnibus threshold gating pairwise tests");
  compare_cmd->add_option("--format", format, "table or structured");
  compare_cmd->add_option("-o,--output", out);

  auto* export_cmd = app.add_subcommand("export", "render an artifact");
  export_cmd->add_option("input", input_path)->required();
  export_cmd->add_option("--format", format, "dot, structured, or table")->required();
  export_cmd->add_option("-o,--output", out);

  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic dataset");
  synth_cmd->add_option("--preset", preset_names,
                        "tight-like, open-like, kick-like; repeat for a mixed dataset");
  synth_cmd->add_option("--seed", seed);
  synth_cmd->add_option("--plays", plays)->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--config", config_path, "model config (default: bundled rugby 6v6)");
  synth_cmd->add_option("--meta", meta, "extra tag=value stamped on every play");
  synth_cmd->add_option("-o,--output", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 4;
  }

  try {
    if (app.got_subcommand(validate_cmd)) return run_validate(dataset_path);
    if (app.got_subcommand(build_cmd)) return run_build(dataset_path, out, workers, lenient);
    if (app.got_subcommand(features_cmd))
      return run_features(paths_path, out, k, kick_leaves, zone);
    if (app.got_subcommand(aggregate_cmd))
      return run_aggregate(paths_path, out, filters, include_initial_time);
    if (app.got_subcommand(compare_cmd))
      return run_compare(table_path, out, feature, group_by, test_name, pairwise, alpha, format);
    if (app.got_subcommand(export_cmd)) return run_export(input_path, out, format);
    if (app.got_subcommand(synth_cmd))
      return run_synth(preset_names, seed, plays, config_path, meta, out);
  } catch (const Error& e) {
    std::cerr << "error: [" << e.category_name() << "] " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: [internal] " << e.what() << "\n";
    return 1;
  }
  return 0;
}
