#pragma once

#include <string>

#include "stgraph/ingest.hpp"
#include "stgraph/model.hpp"

namespace testutil {

inline std::string data_path(const std::string& name) {
  return std::string(STGRAPH_DATA_DIR) + "/" + name;
}

// Two-band, three-player configuration matching the bundled worked
// example (generic taxonomy th_1..th_4, Success/Failure results).
inline stgraph::ModelConfig fig3_config() {
  stgraph::ModelConfig cfg;
  cfg.n_players = 3;
  cfg.field = {20.0, 20.0, true};
  cfg.absolute.zone_names = {"A1", "A2"};
  cfg.absolute.boundaries_m = {10.0};
  cfg.taxonomy.leaves = {
      {"th_1", {"th_1"}}, {"th_2", {"th_2"}}, {"th_3", {"th_3"}}, {"th_4", {"th_4"}}};
  cfg.results.names = {"Success", "Failure"};
  return cfg;
}

// A straight-line play: constant state, no events.
inline stgraph::PlayRecord constant_play(const stgraph::ModelConfig& cfg,
                                         const std::string& id = "const",
                                         const std::string& result = "Failure") {
  stgraph::PlayRecord play;
  play.play_id = id;
  play.result = result;
  const int n = cfg.n_players;
  for (int f = 0; f < 3; ++f) {
    stgraph::Frame frame;
    frame.t = f;
    frame.carrier = 0;
    for (int i = 0; i < n; ++i) {
      frame.positions.push_back({2.0 + 2.0 * i, 2.0});
    }
    play.frames.push_back(frame);
  }
  return play;
}

}  // namespace testutil
