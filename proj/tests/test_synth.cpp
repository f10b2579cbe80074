#include <doctest.h>

#include "helpers.hpp"
#include "stgraph/features.hpp"
#include "stgraph/synth.hpp"

using namespace stgraph;

TEST_CASE("identical seeds give identical bytes") {
  const ModelConfig cfg = rugby_preset();
  synth::ScenarioParams params = synth::preset("open-like");
  params.plays = 10;
  params.seed = 42;
  const std::string a = serialize_dataset(synth::generate(cfg, params));
  const std::string b = serialize_dataset(synth::generate(cfg, params));
  CHECK(a == b);

  params.seed = 43;
  CHECK(serialize_dataset(synth::generate(cfg, params)) != a);
}

TEST_CASE("every generated play validates and round-trips through ingest") {
  const ModelConfig cfg = rugby_preset();
  for (const std::string& name : synth::preset_names()) {
    synth::ScenarioParams params = synth::preset(name);
    params.plays = 40;
    params.seed = 7;
    const Dataset ds = synth::generate(cfg, params);
    REQUIRE(ds.plays.size() == 40);
    CHECK(validate_dataset(ds).ok());
    for (const PlayRecord& play : ds.plays) {
      CHECK(play.meta.at("scenario") == name);
    }
    const std::string text = serialize_dataset(ds);
    const Dataset back = parse_dataset(text);
    CHECK(serialize_dataset(back) == text);
  }
}

TEST_CASE("zero event rate means no thematic arcs") {
  const ModelConfig cfg = rugby_preset();
  synth::ScenarioParams params = synth::preset("open-like");
  params.event_rate = 0.0;
  params.plays = 20;
  params.seed = 3;
  const Dataset ds = synth::generate(cfg, params);
  const BuildOutcome outcome = build_all(ds, 1);
  for (const LabeledPath& path : outcome.paths) {
    CHECK(path.play_id.size() > 0);
    for (const ArcLabel& arc : path.arcs) CHECK(arc.thematic.empty());
  }
}

TEST_CASE("kick-like preset produces more kick passes than tight-like") {
  const ModelConfig cfg = rugby_preset();
  const std::set<std::string> kick = {"kick_diagonal", "kick_straight"};

  auto presence_rate = [&](const std::string& name) {
    synth::ScenarioParams params = synth::preset(name);
    params.plays = 200;
    params.seed = 99;
    const Dataset ds = synth::generate(cfg, params);
    const BuildOutcome outcome = build_all(ds, 1);
    int present = 0;
    for (const LabeledPath& path : outcome.paths) {
      if (count_thematic(path, 5, kick) > 0) ++present;
    }
    return present;
  };

  CHECK(presence_rate("kick-like") > presence_rate("tight-like"));
}

TEST_CASE("scenario parameter validation") {
  const ModelConfig cfg = rugby_preset();
  synth::ScenarioParams bad = synth::preset("open-like");
  bad.frames_min = 1;
  CHECK_THROWS_AS(synth::generate(cfg, bad), Error);

  synth::ScenarioParams unknown_leaf = synth::preset("open-like");
  unknown_leaf.leaf_mix = {{"dropkick", 1.0}};
  CHECK_THROWS_AS(synth::generate(cfg, unknown_leaf), Error);

  CHECK_THROWS_AS(synth::preset("mystery"), Error);
}
