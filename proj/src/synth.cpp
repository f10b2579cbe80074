#include "stgraph/synth.hpp"

#include <algorithm>
#include <cmath>

#include "stgraph/error.hpp"

namespace stgraph::synth {

namespace {

constexpr int kFrameDs = 1;  // frame step, deciseconds (0.1 s sampling)

// All geometry runs on an integer centimeter grid; doubles are produced
// once per emitted value so serialized numbers stay on the 6-digit grid.
struct Grid {
  int width_cm;
  int length_cm;

  int clamp_x(int x) const { return std::clamp(x, 0, width_cm); }
  int clamp_y(int y) const { return std::clamp(y, 0, length_cm); }
};

struct PendingEvent {
  int start_ds;
  int end_ds;
  std::string leaf;
  int receiver;  // carrier after the event resolves
};

std::string pick_leaf(SplitMix64& rng, const std::map<std::string, double>& mix) {
  double total = 0.0;
  for (const auto& [leaf, w] : mix) total += w;
  double draw = rng.unit() * total;
  for (const auto& [leaf, w] : mix) {
    draw -= w;
    if (draw <= 0.0) return leaf;
  }
  return mix.rbegin()->first;
}

}  // namespace

ScenarioParams preset(const std::string& name) {
  ScenarioParams p;
  p.meta["scenario"] = name;
  if (name == "tight-like") {
    p.event_rate = 0.35;
    p.lateral_bias = 1.2;
    p.advance_bias = 0.5;
    p.leaf_mix = {{"hand_no_contact", 0.72},
                  {"hand_contact", 0.24},
                  {"kick_diagonal", 0.02},
                  {"kick_straight", 0.02}};
  } else if (name == "open-like") {
    p.event_rate = 0.15;
    p.lateral_bias = 0.1;
    p.advance_bias = 1.6;
    p.leaf_mix = {{"hand_no_contact", 0.8},
                  {"hand_contact", 0.14},
                  {"kick_diagonal", 0.03},
                  {"kick_straight", 0.03}};
  } else if (name == "kick-like") {
    p.event_rate = 0.3;
    p.lateral_bias = 0.4;
    p.advance_bias = 0.8;
    p.leaf_mix = {{"hand_no_contact", 0.35},
                  {"hand_contact", 0.15},
                  {"kick_diagonal", 0.25},
                  {"kick_straight", 0.25}};
  } else {
    throw usage_error("unknown preset '" + name + "'");
  }
  return p;
}

std::vector<std::string> preset_names() { return {"tight-like", "open-like", "kick-like"}; }

Dataset generate(const ModelConfig& cfg, const ScenarioParams& params) {
  ValidationReport cfg_report = validate_config(cfg);
  if (!cfg_report.ok()) {
    throw invariant_error("synth config invalid: " + cfg_report.violations.front().rule);
  }
  if (params.plays < 0 || params.frames_min < 2 || params.frames_max < params.frames_min) {
    throw usage_error("bad scenario parameters");
  }
  std::map<std::string, double> mix = params.leaf_mix;
  if (mix.empty()) {
    for (const TaxonomyLeaf& leaf : cfg.taxonomy.leaves) mix[leaf.id] = 1.0;
  }
  for (const auto& [leaf, w] : mix) {
    if (!cfg.taxonomy.has_leaf(leaf)) throw usage_error("leaf mix names unknown leaf '" + leaf + "'");
    if (w < 0.0) throw usage_error("negative leaf weight");
  }

  const Grid grid{static_cast<int>(cfg.field.width_m * 100.0),
                  static_cast<int>(cfg.field.length_m * 100.0)};
  const int n = cfg.n_players;

  Dataset ds;
  ds.config = cfg;
  ds.plays.reserve(static_cast<std::size_t>(params.plays));

  for (int play_index = 0; play_index < params.plays; ++play_index) {
    // Per-play sub-seed, passed through the output mixer so play streams
    // do not overlap (seeding with seed + i*gamma would make each play's
    // stream a one-step shift of its neighbor's).
    SplitMix64 rng(SplitMix64(params.seed +
                              0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(play_index))
                       .next());

    PlayRecord play;
    play.play_id = "p" + std::to_string(play_index);
    play.meta = params.meta;
    play.oriented = true;

    const int frame_count = rng.range(params.frames_min, params.frames_max);
    const int last_ds = (frame_count - 1) * kFrameDs;

    // Starting shape: ball low and left, teammates fanned to the right.
    std::vector<int> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
    int carrier = 0;
    px[0] = grid.clamp_x(grid.width_cm / 10 + rng.range(-50, 50));
    py[0] = grid.clamp_y(grid.length_cm / 10 + rng.range(-80, 80));
    for (int i = 1; i < n; ++i) {
      px[static_cast<std::size_t>(i)] =
          grid.clamp_x(px[0] + i * (grid.width_cm * 8 / (10 * n)) + rng.range(-60, 60));
      py[static_cast<std::size_t>(i)] = grid.clamp_y(py[0] + rng.range(-150, 150));
    }

    // Event schedule first: non-overlapping closed intervals, never at
    // the first frame, resolved by the last frame.
    std::vector<PendingEvent> schedule;
    const double per_frame = params.event_rate * 0.1 * kFrameDs;
    int ds_cursor = 2 * kFrameDs;
    while (ds_cursor < last_ds) {
      if (rng.chance(per_frame)) {
        PendingEvent ev;
        ev.start_ds = ds_cursor;
        ev.end_ds = std::min(last_ds, ds_cursor + rng.range(2, 8));
        ev.leaf = pick_leaf(rng, mix);
        // Rightward pass bias: strong lateral drift prefers the
        // rightmost teammate as the receiver.
        if (params.lateral_bias > 0.6 && rng.chance(0.7)) {
          int best = carrier;
          for (int i = 0; i < n; ++i) {
            if (i != carrier && (best == carrier || px[static_cast<std::size_t>(i)] >
                                                        px[static_cast<std::size_t>(best)])) {
              best = i;
            }
          }
          ev.receiver = best;
        } else {
          int pick = rng.range(0, n - 2);
          ev.receiver = pick >= carrier ? pick + 1 : pick;
        }
        schedule.push_back(ev);
        carrier = ev.receiver;  // shape the rest of the schedule
        ds_cursor = ev.end_ds + 2 * kFrameDs;
      } else {
        ds_cursor += kFrameDs;
      }
    }

    carrier = 0;
    const int advance_cm = static_cast<int>(params.advance_bias * 10.0);  // per 0.1 s
    const int lateral_cm = static_cast<int>(params.lateral_bias * 10.0);
    std::size_t next_event = 0;

    for (int f = 0; f < frame_count; ++f) {
      const int ds = f * kFrameDs;
      // Resolve any event that ended at or before this frame.
      while (next_event < schedule.size() && schedule[next_event].end_ds <= ds) {
        carrier = schedule[next_event].receiver;
        ++next_event;
      }

      if (f > 0) {
        for (int i = 0; i < n; ++i) {
          const std::size_t si = static_cast<std::size_t>(i);
          int dx = rng.range(-25, 25);
          int dy = rng.range(-20, 20);
          if (i == carrier) {
            dx += lateral_cm;
            dy += advance_cm;
          } else {
            // Supports loosely track the carrier's progress.
            dy += advance_cm / 2 + rng.range(0, advance_cm > 0 ? advance_cm / 2 + 1 : 1);
          }
          px[si] = grid.clamp_x(px[si] + dx);
          py[si] = grid.clamp_y(py[si] + dy);
        }
      }

      Frame frame;
      frame.t = static_cast<double>(ds) / 10.0;
      frame.carrier = carrier;
      frame.positions.reserve(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        frame.positions.push_back(Point{static_cast<double>(px[static_cast<std::size_t>(i)]) / 100.0,
                                        static_cast<double>(py[static_cast<std::size_t>(i)]) / 100.0});
      }
      play.frames.push_back(std::move(frame));
    }

    for (const PendingEvent& ev : schedule) {
      play.events.push_back(EventRecord{ev.leaf, static_cast<double>(ev.start_ds) / 10.0,
                                        static_cast<double>(ev.end_ds) / 10.0});
    }

    const std::size_t primary = 0;
    play.result = rng.chance(params.first_result_odds)
                      ? cfg.results.names.at(primary)
                      : cfg.results.names.at(std::min<std::size_t>(1, cfg.results.names.size() - 1));
    ds.plays.push_back(std::move(play));
  }
  return ds;
}

}  // namespace stgraph::synth
