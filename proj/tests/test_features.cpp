#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "stgraph/features.hpp"
#include "stgraph/synth.hpp"

using namespace stgraph;

namespace {

// Hand-assembled path over the rugby skeleton; thematic labels attach to
// the arc leaving the vertex of the same index.
LabeledPath make_path(const std::vector<SpatialState>& states,
                      const std::map<std::size_t, std::string>& events = {},
                      const std::string& result = "Failure") {
  LabeledPath path;
  path.play_id = "hand";
  path.result = result;
  double t = 0.0;
  for (const SpatialState& s : states) {
    path.vertices.push_back(PathVertex{s, t, t + 1.0});
    t += 1.0;
  }
  for (std::size_t i = 0; i < states.size(); ++i) {
    ArcLabel label;
    if (i + 1 < states.size()) label.spatial = spatial_relation(states[i], states[i + 1]);
    auto it = events.find(i);
    if (it != events.end()) label.thematic.push_back(it->second);
    path.arcs.push_back(std::move(label));
  }
  if (!path.arcs.empty()) path.arcs.back().thematic.clear();  // terminal arc stays unlabeled
  return path;
}

}  // namespace

TEST_CASE("max shift right over the k-prefix") {
  const LabeledPath path =
      make_path({{{0, 5}, 0}, {{1, 4}, 0}, {{3, 2}, 1}});
  CHECK(max_shift_right(path, 5) == 3);  // shifts 0, 1, 3
  CHECK(max_shift_right(path, 1) == 0);
  CHECK(max_shift_right(path, 2) == 1);

  const LabeledPath leftmost = make_path({{{0, 5}, 0}, {{0, 5}, 1}, {{0, 5}, 2}});
  CHECK(max_shift_right(leftmost, 5) == 0);

  const LabeledPath wing = make_path({{{5, 0}, 0}});
  CHECK(max_shift_right(wing, 1) == 5);
}

TEST_CASE("max shift right is monotone in k and capped by n-1") {
  synth::SplitMix64 rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<SpatialState> states;
    const int len = rng.range(1, 9);
    for (int i = 0; i < len; ++i) {
      const int r = rng.range(0, 5);
      states.push_back({{5 - r, r}, rng.range(0, 2)});
    }
    const LabeledPath path = make_path(states);
    int prev = 0;
    for (int k = 1; k <= 12; ++k) {
      const int v = max_shift_right(path, k);
      CHECK(v >= prev);
      CHECK(v <= 5);
      prev = v;
    }
    // Appending vertices beyond index k changes nothing.
    std::vector<SpatialState> extended = states;
    extended.push_back({{5, 0}, 2});
    CHECK(max_shift_right(make_path(extended), len) == max_shift_right(path, len));
  }
}

TEST_CASE("crossing rank scans the prefix for the target zone") {
  const int middle = 1;
  const LabeledPath path = make_path({{{0, 5}, 0}, {{1, 4}, 0}, {{1, 4}, 1}, {{2, 3}, 2}});
  CHECK(crossing_rank(path, 5, middle) == CrossingRank{3, 5, false});

  const LabeledPath stuck = make_path({{{0, 5}, 0}, {{1, 4}, 0}, {{2, 3}, 0}});
  const CrossingRank censored = crossing_rank(stuck, 5, middle);
  CHECK(censored.censored);
  CHECK(censored.to_string() == ">=5");
  CHECK(censored.as_value() == 6.0);

  const LabeledPath quick = make_path({{{0, 5}, 1}});
  CHECK(crossing_rank(quick, 5, middle) == CrossingRank{1, 5, false});
}

TEST_CASE("crossing rank is stable once attained") {
  const int middle = 1;
  const LabeledPath path = make_path({{{0, 5}, 0}, {{1, 4}, 1}, {{2, 3}, 0}, {{2, 3}, 1}});
  const CrossingRank at3 = crossing_rank(path, 2, middle);
  REQUIRE_FALSE(at3.censored);
  for (int k = 2; k <= 10; ++k) {
    CHECK(crossing_rank(path, k, middle).rank == at3.rank);
  }
}

TEST_CASE("thematic counts intersect the leaf set") {
  const LabeledPath path = make_path({{{0, 5}, 0}, {{1, 4}, 0}, {{1, 4}, 1}},
                                     {{0, "hand_no_contact"}, {1, "kick_diagonal"}});
  CHECK(count_thematic(path, 5, {"kick_diagonal", "kick_straight"}) == 1);
  CHECK(count_thematic(path, 5, {}) == 0);
  CHECK(count_thematic(path, 5,
                       {"hand_no_contact", "hand_contact", "kick_diagonal", "kick_straight"}) ==
        2);
  // Additive over disjoint leaf sets (single-leaf arcs).
  CHECK(count_thematic(path, 5, {"hand_no_contact"}) +
            count_thematic(path, 5, {"kick_diagonal"}) ==
        count_thematic(path, 5, {"hand_no_contact", "kick_diagonal"}));
  // Prefix semantics: only arcs leaving the first k vertices count.
  CHECK(count_thematic(path, 1, {"hand_no_contact", "kick_diagonal"}) == 1);
}

TEST_CASE("path length counts every arc including the terminal one") {
  const Dataset ds = load_dataset_file(testutil::data_path("fig3_example.json"));
  const LabeledPath fig3 = build_path(ds.plays[0], ds.config);
  CHECK(path_length(fig3) == 3);

  const LabeledPath minimal = make_path({{{0, 2}, 0}});
  CHECK(path_length(minimal) == 1);

  // One extra suppressed-event self-loop adds exactly one arc.
  PlayRecord longer = ds.plays[0];
  longer.events.push_back({"th_1", 4.3, 4.6});
  const LabeledPath rebuilt = build_path(longer, ds.config);
  CHECK(path_length(rebuilt) == path_length(fig3) + 1);
}

TEST_CASE("subgraph density over the arc universe") {
  const Dataset ds = load_dataset_file(testutil::data_path("fig3_example.json"));
  const SkeletonGraph skel = build_skeleton(ds.config);
  const LabeledPath fig3 = build_path(ds.plays[0], ds.config);

  CHECK(subgraph_density({}, skel) == 0.0);

  const std::vector<LabeledPath> one{fig3};
  CHECK(subgraph_density(one, skel) == doctest::Approx(3.0 / 48.0).epsilon(1e-15));

  const std::vector<LabeledPath> two{fig3, fig3};
  CHECK(subgraph_density(two, skel) == subgraph_density(one, skel));
}

TEST_CASE("density is monotone under union") {
  const ModelConfig cfg = rugby_preset();
  const SkeletonGraph skel = build_skeleton(cfg);
  synth::ScenarioParams params = synth::preset("open-like");
  params.plays = 40;
  params.seed = 77;
  const Dataset ds = synth::generate(cfg, params);
  const BuildOutcome outcome = build_all(ds, 1);
  for (std::size_t cut = 0; cut <= outcome.paths.size(); cut += 8) {
    const std::span<const LabeledPath> prefix(outcome.paths.data(), cut);
    const std::span<const LabeledPath> all(outcome.paths);
    CHECK(subgraph_density(prefix, skel) <= subgraph_density(all, skel));
  }
}

TEST_CASE("feature table composes the individual measures") {
  const ModelConfig cfg = rugby_preset();
  synth::ScenarioParams params = synth::preset("kick-like");
  params.plays = 3;
  params.seed = 3;
  const Dataset ds = synth::generate(cfg, params);
  const BuildOutcome outcome = build_all(ds, 1);

  const std::set<std::string> kick = {"kick_diagonal", "kick_straight"};
  const FeatureTable table = feature_table(outcome.paths, cfg, 5, kick, "Middle");
  REQUIRE(table.rows.size() == 3);
  CHECK(table.k == 5);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].play_id == outcome.paths[i].play_id);
    CHECK(table.rows[i].max_shift_right == max_shift_right(outcome.paths[i], 5));
    CHECK(table.rows[i].crossing_rank == crossing_rank(outcome.paths[i], 5, 1));
    CHECK(table.rows[i].kick_pass_count == count_thematic(outcome.paths[i], 5, kick));
    CHECK(table.rows[i].path_length == path_length(outcome.paths[i]));
  }

  const FeatureTable empty = feature_table({}, cfg, 5, kick, "Middle");
  CHECK(empty.rows.empty());

  // The header comment records the parameters.
  const std::string csv = feature_table_csv(table);
  CHECK(csv.find("# k=5") == 0);
  CHECK(csv.find("kick_leaves=kick_diagonal;kick_straight") != std::string::npos);
}

TEST_CASE("feature csv round-trips") {
  const ModelConfig cfg = rugby_preset();
  synth::ScenarioParams params = synth::preset("tight-like");
  params.plays = 10;
  params.seed = 9;
  const Dataset ds = synth::generate(cfg, params);
  const BuildOutcome outcome = build_all(ds, 1);
  const FeatureTable table =
      feature_table(outcome.paths, cfg, 5, {"kick_diagonal", "kick_straight"}, "Middle");
  const FeatureTable back = parse_feature_csv(feature_table_csv(table));
  REQUIRE(back.rows.size() == table.rows.size());
  CHECK(back.k == table.k);
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(back.rows[i].play_id == table.rows[i].play_id);
    CHECK(back.rows[i].meta == table.rows[i].meta);
    CHECK(back.rows[i].max_shift_right == table.rows[i].max_shift_right);
    CHECK(back.rows[i].crossing_rank == table.rows[i].crossing_rank);
    CHECK(back.rows[i].kick_pass_count == table.rows[i].kick_pass_count);
    CHECK(back.rows[i].path_length == table.rows[i].path_length);
  }
}

TEST_CASE("features agree with the serialized-text oracle") {
  const ModelConfig cfg = rugby_preset();
  const SkeletonGraph skel = build_skeleton(cfg);
  synth::ScenarioParams params = synth::preset("kick-like");
  params.plays = 150;
  params.seed = 2024;
  const Dataset ds = synth::generate(cfg, params);
  const BuildOutcome outcome = build_all(ds, 1);

  const std::string serialized = serialize_paths(outcome.paths, cfg);
  const oracle::json file = oracle::json::parse(serialized);
  const std::set<std::string> kick = {"kick_diagonal", "kick_straight"};

  REQUIRE(file.at("paths").size() == outcome.paths.size());
  for (std::size_t i = 0; i < outcome.paths.size(); ++i) {
    const auto& pj = file.at("paths").at(i);
    for (int k : {1, 2, 5, 11}) {
      CHECK(max_shift_right(outcome.paths[i], k) == oracle::max_shift_right(pj, k));
      const CrossingRank cr = crossing_rank(outcome.paths[i], k, 1);
      CHECK((cr.censored ? 0 : cr.rank) == oracle::crossing_rank(pj, k, "Middle"));
      CHECK(count_thematic(outcome.paths[i], k, kick) == oracle::count_thematic(pj, k, kick));
    }
    CHECK(path_length(outcome.paths[i]) == oracle::path_length(pj));
  }
  CHECK(subgraph_density(outcome.paths, skel) ==
        doctest::Approx(oracle::subgraph_density(file)).epsilon(1e-12));
}
