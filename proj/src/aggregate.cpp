#include "stgraph/aggregate.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "stgraph/features.hpp"

namespace stgraph {

std::int64_t AggregateGraph::total_arc_weight() const {
  std::int64_t total = 0;
  for (const auto& [pair, w] : arc_weights) total += w;
  return total;
}

std::string arc_label_key(const ArcLabel& label) {
  std::string key;
  if (label.spatial.abs) key += "abs";
  if (label.spatial.rel) {
    if (!key.empty()) key += ',';
    key += "rel";
  }
  key += '+';
  std::vector<std::string> thematic = label.thematic;
  std::sort(thematic.begin(), thematic.end());
  for (std::size_t i = 0; i < thematic.size(); ++i) {
    if (i) key += ',';
    key += thematic[i];
  }
  return key;
}

AggregateGraph union_weighted(std::span<const LabeledPath> paths, const SkeletonGraph& skel,
                              AggregateOptions options) {
  AggregateGraph agg;
  agg.options = options;
  for (const LabeledPath& path : paths) {
    agg.play_count += 1;
    for (std::size_t i = 0; i < path.arcs.size(); ++i) {
      const int src = skel.index_of(path.vertices[i].state);
      const bool terminal = (i + 1 == path.arcs.size());
      const int dst = terminal ? skel.result_index(path.result)
                               : skel.index_of(path.vertices[i + 1].state);
      if (src < 0 || dst < 0) {
        throw invariant_error("path '" + path.play_id + "' leaves the skeleton graph");
      }
      agg.arc_weights[{src, dst}] += 1;
      agg.label_weights[{src, dst, arc_label_key(path.arcs[i])}] += 1;
    }
    const std::size_t first_counted = options.exclude_initial_time ? 1 : 0;
    for (std::size_t i = first_counted; i < path.vertices.size(); ++i) {
      const int v = skel.index_of(path.vertices[i].state);
      agg.vertex_time[v] += path.vertices[i].duration();
    }
  }
  return agg;
}

AggregateGraph merge(const AggregateGraph& a, const AggregateGraph& b) {
  if (a.options.exclude_initial_time != b.options.exclude_initial_time) {
    throw usage_error("cannot merge aggregates with different time options");
  }
  AggregateGraph out = a;
  for (const auto& [pair, w] : b.arc_weights) out.arc_weights[pair] += w;
  for (const auto& [v, secs] : b.vertex_time) out.vertex_time[v] += secs;
  for (const auto& [key, w] : b.label_weights) out.label_weights[key] += w;
  out.play_count += b.play_count;
  return out;
}

bool MetaPredicate::matches(const std::map<std::string, std::string>& meta) const {
  for (const auto& [key, value] : required) {
    auto it = meta.find(key);
    if (it == meta.end() || it->second != value) return false;
  }
  return true;
}

MetaPredicate MetaPredicate::parse(const std::vector<std::string>& tag_eq_value) {
  MetaPredicate pred;
  for (const std::string& spec : tag_eq_value) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw usage_error("filter must look like tag=value, got '" + spec + "'");
    }
    pred.required.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
  }
  return pred;
}

namespace {

template <typename Item>
void check_known_tags(const MetaPredicate& predicate, const std::vector<Item>& items) {
  for (const auto& [key, value] : predicate.required) {
    const bool known = std::any_of(items.begin(), items.end(),
                                   [&](const Item& it) { return it.meta.count(key) > 0; });
    if (!known) throw usage_error("filter tag '" + key + "' appears in no play");
  }
}

}  // namespace

Dataset filter_plays(const Dataset& ds, const MetaPredicate& predicate) {
  check_known_tags(predicate, ds.plays);
  Dataset out;
  out.config = ds.config;
  for (const PlayRecord& play : ds.plays) {
    if (predicate.matches(play.meta)) out.plays.push_back(play);
  }
  return out;
}

std::vector<LabeledPath> filter_paths(std::span<const LabeledPath> paths,
                                      const MetaPredicate& predicate) {
  std::vector<LabeledPath> items(paths.begin(), paths.end());
  check_known_tags(predicate, items);
  std::vector<LabeledPath> out;
  for (LabeledPath& path : items) {
    if (predicate.matches(path.meta)) out.push_back(std::move(path));
  }
  return out;
}

double average_path_length(std::span<const LabeledPath> paths) {
  if (paths.empty()) throw usage_error("average path length of an empty set");
  std::size_t total = 0;
  for (const LabeledPath& p : paths) total += p.arcs.size();
  return static_cast<double>(total) / static_cast<double>(paths.size());
}

std::string serialize_aggregate(const AggregateGraph& agg, const SkeletonGraph& skel,
                                const ModelConfig& cfg) {
  json j;
  j["kind"] = "aggregate";
  j["config"] = config_to_json(cfg);
  j["play_count"] = agg.play_count;
  j["exclude_initial_time"] = agg.options.exclude_initial_time;
  json arcs = json::array();
  for (const auto& [pair, w] : agg.arc_weights) {
    arcs.push_back({skel.vertex_id(pair.first), skel.vertex_id(pair.second), w});
  }
  j["arcs"] = std::move(arcs);
  json times = json::array();
  for (const auto& [v, secs] : agg.vertex_time) {
    times.push_back({skel.vertex_id(v), secs});
  }
  j["vertex_seconds"] = std::move(times);
  json labels = json::array();
  for (const auto& [key, w] : agg.label_weights) {
    labels.push_back({skel.vertex_id(std::get<0>(key)), skel.vertex_id(std::get<1>(key)),
                      std::get<2>(key), w});
  }
  j["arc_labels"] = std::move(labels);
  return write_canonical(j);
}

namespace {

int vertex_index_from_id(const SkeletonGraph& skel, const std::string& id) {
  const int res = skel.result_index(id);
  if (res >= 0) return res;
  for (std::size_t i = 0; i < skel.spatial.size(); ++i) {
    if (skel.vertex_id(static_cast<int>(i)) == id) return static_cast<int>(i);
  }
  throw schema_error("aggregate references unknown vertex '" + id + "'");
}

}  // namespace

AggregateFile parse_aggregate(const std::string& text) {
  const json j = parse_json(text, "aggregate");
  expect_keys(j, "aggregate file",
              {"kind", "config", "play_count", "exclude_initial_time", "arcs", "vertex_seconds",
               "arc_labels"});
  if (require_string(j.at("kind"), "aggregate.kind") != "aggregate") {
    throw schema_error("aggregate file: kind is not 'aggregate'");
  }
  AggregateFile file;
  file.config = config_from_json(j.at("config"));
  const SkeletonGraph skel = build_skeleton(file.config);
  file.aggregate.play_count = require_integer(j.at("play_count"), "aggregate.play_count");
  file.aggregate.options.exclude_initial_time =
      require_bool(j.at("exclude_initial_time"), "aggregate.exclude_initial_time");
  for (const auto& a : require_array(j.at("arcs"), "aggregate.arcs")) {
    if (!a.is_array() || a.size() != 3) throw schema_error("aggregate arc must be [src, dst, w]");
    const int src = vertex_index_from_id(skel, require_string(a[0], "aggregate.arc.src"));
    const int dst = vertex_index_from_id(skel, require_string(a[1], "aggregate.arc.dst"));
    file.aggregate.arc_weights[{src, dst}] = require_integer(a[2], "aggregate.arc.weight");
  }
  for (const auto& t : require_array(j.at("vertex_seconds"), "aggregate.vertex_seconds")) {
    if (!t.is_array() || t.size() != 2) {
      throw schema_error("aggregate vertex entry must be [vertex, seconds]");
    }
    const int v = vertex_index_from_id(skel, require_string(t[0], "aggregate.vertex"));
    file.aggregate.vertex_time[v] = require_number(t[1], "aggregate.seconds");
  }
  for (const auto& l : require_array(j.at("arc_labels"), "aggregate.arc_labels")) {
    if (!l.is_array() || l.size() != 4) {
      throw schema_error("aggregate label entry must be [src, dst, label, w]");
    }
    const int src = vertex_index_from_id(skel, require_string(l[0], "aggregate.label.src"));
    const int dst = vertex_index_from_id(skel, require_string(l[1], "aggregate.label.dst"));
    file.aggregate.label_weights[{src, dst, require_string(l[2], "aggregate.label.key")}] =
        require_integer(l[3], "aggregate.label.weight");
  }
  return file;
}

AggregateFile load_aggregate_file(const std::string& path) {
  return parse_aggregate(read_file(path));
}

}  // namespace stgraph
