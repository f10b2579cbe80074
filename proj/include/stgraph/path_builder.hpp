#pragma once

#include <map>
#include <string>
#include <vector>

#include "stgraph/ingest.hpp"
#include "stgraph/model.hpp"

namespace stgraph {

// Spatial state valid over [t_start, t_end). Every interval is
// non-empty except possibly the last one (play ending the instant the
// final event resolves).
struct PathVertex {
  SpatialState state;
  double t_start = 0.0;
  double t_end = 0.0;

  double duration() const { return t_end - t_start; }
  bool operator==(const PathVertex&) const = default;
};

// An attacking play as a labeled path on the skeleton graph. arcs[i]
// connects vertices[i] to vertices[i+1]; the final arc is the unlabeled
// terminal arc into the result vertex, so |arcs| == |vertices|.
struct LabeledPath {
  std::string play_id;
  std::map<std::string, std::string> meta;
  std::vector<PathVertex> vertices;
  std::vector<ArcLabel> arcs;
  std::string result;

  int n_players() const {
    if (vertices.empty()) return 0;
    int sum = 1;
    for (int c : vertices.front().state.rel) sum += c;
    return sum;
  }
  bool operator==(const LabeledPath&) const = default;
};

SpatialState state_at(const Frame& frame, const ModelConfig& cfg);

// Scans frames in time order; a state change detected at a frame closes
// the current vertex there. Within an event window [t_start, t_end)
// state changes are suppressed; the event contributes one arc labeled
// with its leaf plus the pre/post spatial relation, the post vertex
// opening at t_end. Ends with the terminal arc to the play's result.
LabeledPath build_path(const PlayRecord& play, const ModelConfig& cfg);

struct BuildFailure {
  std::string play_id;
  std::string message;
};

struct BuildOutcome {
  std::vector<LabeledPath> paths;  // dataset order
  std::vector<BuildFailure> failures;
};

// Normalizes orientation, then builds every play. Fan-out across
// `workers` threads; output order is the dataset order regardless of
// worker count. Strict mode throws on the first failing play; lenient
// mode collects failures and keeps the rest.
BuildOutcome build_all(const Dataset& ds, int workers = 1, bool lenient = false);

struct PathsFile {
  ModelConfig config;
  std::vector<LabeledPath> paths;
};

std::string serialize_paths(const std::vector<LabeledPath>& paths, const ModelConfig& cfg);
PathsFile parse_paths(const std::string& text);
PathsFile load_paths_file(const std::string& path);

}  // namespace stgraph
