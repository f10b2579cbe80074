#include "stgraph/path_builder.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace stgraph {

SpatialState state_at(const Frame& frame, const ModelConfig& cfg) {
  std::vector<Point> teammates;
  teammates.reserve(frame.positions.size() - 1);
  for (std::size_t i = 0; i < frame.positions.size(); ++i) {
    if (static_cast<int>(i) != frame.carrier) teammates.push_back(frame.positions[i]);
  }
  const Point carrier = frame.positions.at(static_cast<std::size_t>(frame.carrier));
  return SpatialState{classify_relative(carrier, teammates, cfg),
                      classify_absolute(carrier, cfg)};
}

LabeledPath build_path(const PlayRecord& play, const ModelConfig& cfg) {
  if (play.frames.empty()) {
    throw invariant_error("play '" + play.play_id + "': no frames");
  }

  std::vector<SpatialState> states;
  states.reserve(play.frames.size());
  for (const Frame& f : play.frames) states.push_back(state_at(f, cfg));

  std::vector<EventRecord> events = play.events;
  std::sort(events.begin(), events.end(),
            [](const EventRecord& a, const EventRecord& b) { return a.t_start < b.t_start; });
  const double t_last = play.frames.back().t;
  for (const EventRecord& e : events) {
    if (e.t_end > t_last) {
      throw invariant_error("play '" + play.play_id + "': event '" + e.event_type +
                            "' extends past the last frame");
    }
  }

  LabeledPath path;
  path.play_id = play.play_id;
  path.meta = play.meta;
  path.result = play.result;

  SpatialState cur_state = states.front();
  double cur_start = play.frames.front().t;
  std::size_t fi = 1;

  auto close_vertex = [&](double t_end, ArcLabel label) {
    path.vertices.push_back(PathVertex{cur_state, cur_start, t_end});
    path.arcs.push_back(std::move(label));
  };

  for (const EventRecord& ev : events) {
    // Plain spatial scanning up to the event window. A frame exactly at
    // t_start already belongs to the window, folding any coincident
    // spatial change into the event arc.
    while (fi < play.frames.size() && play.frames[fi].t < ev.t_start) {
      if (states[fi] != cur_state) {
        ArcLabel label;
        label.spatial = spatial_relation(cur_state, states[fi]);
        close_vertex(play.frames[fi].t, std::move(label));
        cur_state = states[fi];
        cur_start = play.frames[fi].t;
      }
      ++fi;
    }
    // Suppress everything inside [t_start, t_end).
    while (fi < play.frames.size() && play.frames[fi].t < ev.t_end) ++fi;
    if (fi >= play.frames.size()) {
      throw invariant_error("play '" + play.play_id + "': no frame observes the state after '" +
                            ev.event_type + "'");
    }
    const SpatialState& post = states[fi];
    ArcLabel label;
    label.spatial = spatial_relation(cur_state, post);
    label.thematic.push_back(ev.event_type);
    close_vertex(ev.t_start, std::move(label));
    cur_state = post;
    cur_start = ev.t_end;
  }

  for (; fi < play.frames.size(); ++fi) {
    if (states[fi] != cur_state) {
      ArcLabel label;
      label.spatial = spatial_relation(cur_state, states[fi]);
      close_vertex(play.frames[fi].t, std::move(label));
      cur_state = states[fi];
      cur_start = play.frames[fi].t;
    }
  }

  close_vertex(t_last, ArcLabel{});  // terminal arc, unlabeled
  return path;
}

BuildOutcome build_all(const Dataset& ds, int workers, bool lenient) {
  const std::size_t count = ds.plays.size();
  std::vector<LabeledPath> built(count);
  std::vector<std::string> errors(count);

  auto run = [&](std::size_t index) {
    try {
      PlayRecord play = normalize_orientation(ds.plays[index], ds.config);
      ValidationReport report = validate_play(play, ds.config);
      if (!report.ok()) {
        throw invariant_error("play '" + play.play_id + "': " + report.violations.front().rule);
      }
      built[index] = build_path(play, ds.config);
    } catch (const std::exception& e) {
      errors[index] = e.what();
    }
  };

  workers = std::max(1, workers);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int n_threads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) run(i);
      });
    }
    for (auto& t : pool) t.join();
  }

  BuildOutcome outcome;
  for (std::size_t i = 0; i < count; ++i) {
    if (!errors[i].empty()) {
      if (!lenient) throw invariant_error(errors[i]);
      outcome.failures.push_back({ds.plays[i].play_id, errors[i]});
    } else {
      outcome.paths.push_back(std::move(built[i]));
    }
  }
  return outcome;
}

namespace {

json spatial_labels_json(const SpatialDelta& d) {
  json labels = json::array();
  if (d.abs) labels.push_back("abs");
  if (d.rel) labels.push_back("rel");
  return labels;
}

}  // namespace

std::string serialize_paths(const std::vector<LabeledPath>& paths, const ModelConfig& cfg) {
  json out;
  out["kind"] = "paths";
  out["config"] = config_to_json(cfg);
  json arr = json::array();
  for (const LabeledPath& p : paths) {
    json vertices = json::array();
    for (const PathVertex& v : p.vertices) {
      vertices.push_back({v.state.rel, cfg.absolute.zone_names.at(
                                           static_cast<std::size_t>(v.state.abs_zone)),
                          v.t_start, v.t_end});
    }
    json arcs = json::array();
    for (const ArcLabel& a : p.arcs) {
      json thematic = a.thematic;
      arcs.push_back({spatial_labels_json(a.spatial), std::move(thematic)});
    }
    arr.push_back({{"id", p.play_id},
                   {"meta", p.meta},
                   {"result", p.result},
                   {"vertices", std::move(vertices)},
                   {"arcs", std::move(arcs)}});
  }
  out["paths"] = std::move(arr);
  return write_canonical(out);
}

PathsFile parse_paths(const std::string& text) {
  const json j = parse_json(text, "paths");
  expect_keys(j, "paths file", {"kind", "config", "paths"});
  if (require_string(j.at("kind"), "paths.kind") != "paths") {
    throw schema_error("paths file: kind is not 'paths'");
  }
  PathsFile file;
  file.config = config_from_json(j.at("config"));

  for (const auto& pj : require_array(j.at("paths"), "paths.paths")) {
    expect_keys(pj, "paths.paths[]", {"id", "meta", "result", "vertices", "arcs"});
    LabeledPath path;
    path.play_id = require_string(pj.at("id"), "path.id");
    path.result = require_string(pj.at("result"), "path.result");
    for (auto it = require_object(pj.at("meta"), "path.meta").begin(); it != pj.at("meta").end();
         ++it) {
      path.meta[it.key()] = require_string(it.value(), "path.meta." + it.key());
    }
    for (const auto& vj : require_array(pj.at("vertices"), "path.vertices")) {
      if (!vj.is_array() || vj.size() != 4) {
        throw schema_error("path vertex must be [rel, zone, t_start, t_end]");
      }
      PathVertex v;
      for (const auto& c : require_array(vj[0], "path.vertex.rel")) {
        v.state.rel.push_back(static_cast<int>(require_integer(c, "path.vertex.rel[]")));
      }
      const std::string zone = require_string(vj[1], "path.vertex.zone");
      v.state.abs_zone = file.config.absolute.index_of(zone);
      if (v.state.abs_zone < 0) {
        throw schema_error("path vertex references unknown zone '" + zone + "'");
      }
      v.t_start = require_canonical_number(vj[2], "path.vertex.t_start");
      v.t_end = require_canonical_number(vj[3], "path.vertex.t_end");
      path.vertices.push_back(std::move(v));
    }
    for (const auto& aj : require_array(pj.at("arcs"), "path.arcs")) {
      if (!aj.is_array() || aj.size() != 2) {
        throw schema_error("path arc must be [spatial_labels, thematic_labels]");
      }
      ArcLabel label;
      for (const auto& s : require_array(aj[0], "path.arc.spatial")) {
        const std::string name = require_string(s, "path.arc.spatial[]");
        if (name == "rel") {
          label.spatial.rel = true;
        } else if (name == "abs") {
          label.spatial.abs = true;
        } else {
          throw schema_error("unknown spatial label '" + name + "'");
        }
      }
      for (const auto& t : require_array(aj[1], "path.arc.thematic")) {
        label.thematic.push_back(require_string(t, "path.arc.thematic[]"));
      }
      path.arcs.push_back(std::move(label));
    }
    if (path.arcs.size() != path.vertices.size()) {
      throw invariant_error("path '" + path.play_id + "': arc count must equal vertex count");
    }
    file.paths.push_back(std::move(path));
  }
  return file;
}

PathsFile load_paths_file(const std::string& path) { return parse_paths(read_file(path)); }

}  // namespace stgraph
