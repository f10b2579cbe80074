#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "stgraph/model.hpp"
#include "stgraph/path_builder.hpp"

namespace stgraph {

// Rank of the first vertex in the target zone, or the censored ">=k"
// bucket when the zone is not reached within the k-vertex prefix.
struct CrossingRank {
  int rank = 0;  // 1-based, meaningful when !censored
  int k = 0;
  bool censored = false;

  std::string to_string() const {
    return censored ? ">=" + std::to_string(k) : std::to_string(rank);
  }
  // Order-preserving numeric encoding: censored plays sit above every
  // attained rank, all tied at k + 1.
  double as_value() const { return censored ? k + 1 : rank; }
  bool operator==(const CrossingRank&) const = default;
};

// Largest (n-1) - r over the first min(k, |vertices|) vertices, where r
// is the last rel component (players to the carrier's right).
int max_shift_right(const LabeledPath& path, int k);

CrossingRank crossing_rank(const LabeledPath& path, int k, int target_zone);

// Arcs departing the first min(k, |vertices|) vertices whose thematic
// label intersects `leaves`.
int count_thematic(const LabeledPath& path, int k, const std::set<std::string>& leaves);

// Number of arcs, terminal arc included.
int path_length(const LabeledPath& path);

// Distinct ordered (source, target) vertex pairs traversed by the set,
// labels collapsed, result arcs included, over the full arc universe.
double subgraph_density(std::span<const LabeledPath> paths, const SkeletonGraph& skel);

struct FeatureRow {
  std::string play_id;
  std::map<std::string, std::string> meta;
  int max_shift_right = 0;
  CrossingRank crossing_rank;
  int kick_pass_count = 0;
  int path_length = 0;
};

struct FeatureTable {
  std::vector<FeatureRow> rows;
  int k = 5;
  std::string target_zone;
  std::set<std::string> kick_leaves;
  std::vector<std::string> tag_columns;  // union of meta keys, sorted
};

FeatureTable feature_table(std::span<const LabeledPath> paths, const ModelConfig& cfg, int k,
                           const std::set<std::string>& kick_leaves,
                           const std::string& target_zone);

// Delimited export: comment line with the parameters, then
// play_id, <tags...>, max_shift_right, crossing_rank, kick_pass_count,
// path_length.
std::string feature_table_csv(const FeatureTable& table);
FeatureTable parse_feature_csv(const std::string& text);

}  // namespace stgraph
