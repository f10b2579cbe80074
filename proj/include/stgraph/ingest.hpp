#pragma once

#include <map>
#include <string>
#include <vector>

#include "stgraph/model.hpp"

namespace stgraph {

struct Frame {
  double t = 0.0;
  int carrier = 0;               // attacker index in [0, n)
  std::vector<Point> positions;  // n points, field coordinates
};

// Thematic event annotation. t_start == t_end marks an instantaneous
// event; events are treated as closed intervals for overlap purposes.
struct EventRecord {
  std::string event_type;  // taxonomy leaf id
  double t_start = 0.0;
  double t_end = 0.0;
};

struct PlayRecord {
  std::string play_id;
  std::vector<Frame> frames;        // strictly increasing t
  std::vector<EventRecord> events;  // ordered by t_start
  std::string result;
  std::map<std::string, std::string> meta;  // free tags, e.g. scenario=tight
  // In-memory orientation marker (not serialized): true once coordinates
  // follow the canonical attack-toward-increasing-y convention.
  bool oriented = true;
};

struct Dataset {
  ModelConfig config;
  std::vector<PlayRecord> plays;
};

// Strict parse of the dataset file format; throws Error{Syntax|Schema|
// Invariant}. `base_dir` resolves a config given as a path reference.
// enforce_invariants=false still applies the strict schema but defers
// play invariants to validate_dataset (used by the validate command to
// report every violation instead of the first).
Dataset parse_dataset(const std::string& text, const std::string& base_dir = ".",
                      bool enforce_invariants = true);
Dataset load_dataset_file(const std::string& path, bool enforce_invariants = true);

// Canonical bytes: sorted keys, 6-fractional-digit numbers, stable
// array shapes. parse(serialize(ds)) reproduces ds exactly.
std::string serialize_dataset(const Dataset& ds);

json play_to_json(const PlayRecord& play);

// Reflects coordinates along the attack axis when the config declares
// attack_axis_positive = false and the play is not yet oriented.
// Idempotent; carrier indices and event times are untouched.
PlayRecord normalize_orientation(PlayRecord play, const ModelConfig& cfg);

// All PlayRecord invariants plus carrier-change/event bracketing.
ValidationReport validate_play(const PlayRecord& play, const ModelConfig& cfg);
ValidationReport validate_dataset(const Dataset& ds);

}  // namespace stgraph
