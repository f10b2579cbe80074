#include "stgraph/ingest.hpp"

#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>

namespace stgraph {

namespace {

PlayRecord play_from_json(const json& j, const ModelConfig& cfg) {
  expect_keys(j, "play", {"id", "result", "meta", "frames", "events"});
  PlayRecord play;
  play.play_id = require_string(j.at("id"), "play.id");
  const std::string where = "play '" + play.play_id + "'";
  play.result = require_string(j.at("result"), where + ".result");

  for (auto it = require_object(j.at("meta"), where + ".meta").begin(); it != j.at("meta").end();
       ++it) {
    play.meta[it.key()] = require_string(it.value(), where + ".meta." + it.key());
  }

  for (const auto& fj : require_array(j.at("frames"), where + ".frames")) {
    if (!fj.is_array() || fj.size() != 3) {
      throw schema_error(where + ": frame must be [t, carrier, positions]");
    }
    Frame frame;
    frame.t = require_canonical_number(fj[0], where + ".frames[].t");
    frame.carrier = static_cast<int>(require_integer(fj[1], where + ".frames[].carrier"));
    const json& pts = require_array(fj[2], where + ".frames[].positions");
    for (const auto& pj : pts) {
      if (!pj.is_array() || pj.size() != 2) {
        throw schema_error(where + ": position must be [x, y]");
      }
      frame.positions.push_back(Point{require_canonical_number(pj[0], where + ".frames[].x"),
                                      require_canonical_number(pj[1], where + ".frames[].y")});
    }
    play.frames.push_back(std::move(frame));
  }

  for (const auto& ej : require_array(j.at("events"), where + ".events")) {
    if (!ej.is_array() || ej.size() != 3) {
      throw schema_error(where + ": event must be [leaf_id, t_start, t_end]");
    }
    EventRecord ev;
    ev.event_type = require_string(ej[0], where + ".events[].leaf_id");
    ev.t_start = require_canonical_number(ej[1], where + ".events[].t_start");
    ev.t_end = require_canonical_number(ej[2], where + ".events[].t_end");
    if (!cfg.taxonomy.has_leaf(ev.event_type)) {
      throw schema_error(where + ": event references unknown leaf '" + ev.event_type + "'");
    }
    play.events.push_back(std::move(ev));
  }

  play.oriented = cfg.field.attack_axis_positive;
  return play;
}

}  // namespace

Dataset parse_dataset(const std::string& text, const std::string& base_dir,
                      bool enforce_invariants) {
  const json j = parse_json(text, "dataset");
  expect_keys(j, "dataset", {"config", "plays"});

  Dataset ds;
  if (j.at("config").is_string()) {
    const auto ref = std::filesystem::path(base_dir) / j.at("config").get<std::string>();
    ds.config = load_config_file(ref.string());
  } else {
    ds.config = config_from_json(j.at("config"));
    ValidationReport cfg_report = validate_config(ds.config);
    if (!cfg_report.ok()) {
      throw invariant_error("config: " + cfg_report.violations.front().rule);
    }
  }

  for (const auto& pj : require_array(j.at("plays"), "dataset.plays")) {
    ds.plays.push_back(play_from_json(pj, ds.config));
  }
  if (!enforce_invariants) return ds;

  std::set<std::string> ids;
  for (const auto& play : ds.plays) {
    if (!ids.insert(play.play_id).second) {
      throw invariant_error("duplicate play id '" + play.play_id + "'");
    }
    ValidationReport report = validate_play(play, ds.config);
    if (!report.ok()) {
      const Violation& v = report.violations.front();
      throw invariant_error("play '" + play.play_id + "': " + v.rule);
    }
  }
  return ds;
}

Dataset load_dataset_file(const std::string& path, bool enforce_invariants) {
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_dataset(read_file(path), dir.empty() ? "." : dir.string(), enforce_invariants);
}

json play_to_json(const PlayRecord& play) {
  json frames = json::array();
  for (const Frame& f : play.frames) {
    json pts = json::array();
    for (const Point& p : f.positions) pts.push_back({p.x, p.y});
    frames.push_back({f.t, f.carrier, std::move(pts)});
  }
  json events = json::array();
  for (const EventRecord& e : play.events) {
    events.push_back({e.event_type, e.t_start, e.t_end});
  }
  return json{{"id", play.play_id},
              {"result", play.result},
              {"meta", play.meta},
              {"frames", std::move(frames)},
              {"events", std::move(events)}};
}

std::string serialize_dataset(const Dataset& ds) {
  json plays = json::array();
  for (const PlayRecord& play : ds.plays) plays.push_back(play_to_json(play));
  return write_canonical(json{{"config", config_to_json(ds.config)}, {"plays", std::move(plays)}});
}

PlayRecord normalize_orientation(PlayRecord play, const ModelConfig& cfg) {
  if (cfg.field.attack_axis_positive || play.oriented) {
    play.oriented = true;
    return play;
  }
  for (Frame& f : play.frames) {
    for (Point& p : f.positions) p.y = cfg.field.length_m - p.y;
  }
  play.oriented = true;
  return play;
}

ValidationReport validate_play(const PlayRecord& play, const ModelConfig& cfg) {
  ValidationReport report;
  const std::string& id = play.play_id;

  if (play.frames.empty()) {
    report.add("play has no frames", id);
    return report;
  }

  for (std::size_t i = 0; i < play.frames.size(); ++i) {
    const Frame& f = play.frames[i];
    if (i > 0 && !(play.frames[i - 1].t < f.t)) {
      report.add("frames not strictly increasing", id);
      break;
    }
  }
  for (const Frame& f : play.frames) {
    if (static_cast<int>(f.positions.size()) != cfg.n_players) {
      report.add("frame position count != n_players", id);
      break;
    }
    if (f.carrier < 0 || f.carrier >= cfg.n_players) {
      report.add("carrier index out of range", id);
      break;
    }
    bool inside = true;
    for (const Point& p : f.positions) {
      if (p.x < 0.0 || p.x > cfg.field.width_m || p.y < 0.0 || p.y > cfg.field.length_m) {
        inside = false;
        break;
      }
    }
    if (!inside) {
      report.add("position outside field", id);
      break;
    }
  }

  if (cfg.results.index_of(play.result) < 0) {
    report.add("result '" + play.result + "' not in result set", id);
  }

  const double t_first = play.frames.front().t;
  const double t_last = play.frames.back().t;
  for (const EventRecord& e : play.events) {
    if (!cfg.taxonomy.has_leaf(e.event_type)) {
      report.add("event references unknown leaf '" + e.event_type + "'", id);
    }
    if (e.t_start > e.t_end) {
      report.add("event t_start > t_end", id);
    }
    if (e.t_start < t_first || e.t_end > t_last) {
      report.add("event outside play time span", id);
    }
  }
  std::vector<EventRecord> sorted = play.events;
  std::sort(sorted.begin(), sorted.end(),
            [](const EventRecord& a, const EventRecord& b) { return a.t_start < b.t_start; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    // Closed-interval overlap: touching events count as overlapping so
    // the path builder never sees a zero-length interior vertex.
    if (!(sorted[i - 1].t_end < sorted[i].t_start)) {
      report.add("events overlap in time", id);
      break;
    }
  }
  if (!sorted.empty() && sorted.front().t_start == t_first) {
    report.add("event starts at first frame instant", id);
  }

  // A carrier change between consecutive frames needs a covering event;
  // the ball cannot teleport.
  for (std::size_t i = 1; i < play.frames.size(); ++i) {
    if (play.frames[i].carrier == play.frames[i - 1].carrier) continue;
    const double lo = play.frames[i - 1].t;
    const double hi = play.frames[i].t;
    const bool covered =
        std::any_of(play.events.begin(), play.events.end(), [&](const EventRecord& e) {
          return e.t_start <= hi && e.t_end >= lo;
        });
    if (!covered) {
      report.add("carrier change without event", id);
      break;
    }
  }
  return report;
}

ValidationReport validate_dataset(const Dataset& ds) {
  ValidationReport report = validate_config(ds.config);
  std::set<std::string> ids;
  for (const PlayRecord& play : ds.plays) {
    if (!ids.insert(play.play_id).second) {
      report.add("duplicate play id", play.play_id);
    }
    ValidationReport pr = validate_play(play, ds.config);
    report.violations.insert(report.violations.end(), pr.violations.begin(), pr.violations.end());
  }
  return report;
}

}  // namespace stgraph
