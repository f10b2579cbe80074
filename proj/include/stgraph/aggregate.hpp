#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "stgraph/ingest.hpp"
#include "stgraph/model.hpp"
#include "stgraph/path_builder.hpp"

namespace stgraph {

struct AggregateOptions {
  // Drop each path's initial vertex from the time-spent totals (the
  // shared kickoff position carries no tactical information).
  bool exclude_initial_time = true;
};

// Weighted union of a path set over a skeleton. Vertex indices follow
// the skeleton enumeration; result vertices are offset by
// spatial_count(). Merging aggregates is a commutative monoid fold.
struct AggregateGraph {
  std::map<std::pair<int, int>, std::int64_t> arc_weights;  // ordered pair -> multiplicity
  std::map<int, double> vertex_time;                        // spatial vertex -> seconds
  // Per-label diagnostics: (src, dst, label key) -> multiplicity, where
  // the label key is "abs,rel+leaf1,leaf2" (spatial part + thematic part).
  std::map<std::tuple<int, int, std::string>, std::int64_t> label_weights;
  std::int64_t play_count = 0;
  AggregateOptions options;

  std::int64_t total_arc_weight() const;
  bool operator==(const AggregateGraph&) const = default;
};

std::string arc_label_key(const ArcLabel& label);

AggregateGraph union_weighted(std::span<const LabeledPath> paths, const SkeletonGraph& skel,
                              AggregateOptions options = {});

// Elementwise sum; options must agree.
AggregateGraph merge(const AggregateGraph& a, const AggregateGraph& b);

// Conjunction of required tag=value pairs over play/path metadata.
struct MetaPredicate {
  std::vector<std::pair<std::string, std::string>> required;

  bool matches(const std::map<std::string, std::string>& meta) const;
  static MetaPredicate parse(const std::vector<std::string>& tag_eq_value);
};

// Keeps plays whose tags satisfy the predicate, order preserved. Throws
// Error{Usage} if a predicate key appears in no play at all.
Dataset filter_plays(const Dataset& ds, const MetaPredicate& predicate);
std::vector<LabeledPath> filter_paths(std::span<const LabeledPath> paths,
                                      const MetaPredicate& predicate);

double average_path_length(std::span<const LabeledPath> paths);

std::string serialize_aggregate(const AggregateGraph& agg, const SkeletonGraph& skel,
                                const ModelConfig& cfg);
struct AggregateFile {
  ModelConfig config;
  AggregateGraph aggregate;
};
AggregateFile parse_aggregate(const std::string& text);
AggregateFile load_aggregate_file(const std::string& path);

}  // namespace stgraph
