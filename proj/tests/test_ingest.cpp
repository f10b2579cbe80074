#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "stgraph/ingest.hpp"
#include "stgraph/synth.hpp"

using namespace stgraph;

TEST_CASE("bundled worked example parses to one successful play") {
  const Dataset ds = load_dataset_file(testutil::data_path("fig3_example.json"));
  REQUIRE(ds.plays.size() == 1);
  CHECK(ds.plays.front().play_id == "fig3");
  CHECK(ds.plays.front().result == "Success");
  CHECK(ds.plays.front().frames.size() == 6);
  CHECK(ds.plays.front().events.size() == 1);
  CHECK(validate_dataset(ds).ok());
}

TEST_CASE("empty plays list is a valid dataset") {
  const Dataset ds = parse_dataset(R"({"config":)" +
                                   write_canonical(config_to_json(testutil::fig3_config())) +
                                   R"(,"plays":[]})");
  CHECK(ds.plays.empty());
  CHECK(validate_dataset(ds).ok());
}

TEST_CASE("unknown taxonomy leaf is a schema error") {
  Dataset ds;
  ds.config = testutil::fig3_config();
  PlayRecord play = testutil::constant_play(ds.config);
  play.events.push_back({"kick spiral", 0.5, 1.0});
  ds.plays.push_back(play);
  const std::string text = serialize_dataset(ds);
  CHECK_THROWS_WITH_AS(parse_dataset(text), doctest::Contains("kick spiral"), Error);
}

TEST_CASE("unknown play fields are rejected") {
  const std::string text = read_file(testutil::data_path("fig3_example.json"));
  json j = parse_json(text, "fixture");
  j["plays"][0]["extra"] = true;
  CHECK_THROWS_WITH_AS(parse_dataset(write_canonical(j)), doctest::Contains("extra"), Error);
}

TEST_CASE("syntax errors carry line and column") {
  try {
    parse_dataset("{\n  \"config\": ???");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::Syntax);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("numbers beyond six fractional digits are rejected") {
  const ModelConfig cfg = testutil::fig3_config();
  std::string text = R"({"config":)" + write_canonical(config_to_json(cfg));
  text.pop_back();  // strip newline
  text += R"(,"plays":[{"events":[],"frames":[[0.12345678,0,[[1,1],[2,1],[3,1]]]],)"
          R"("id":"p","meta":{},"result":"Success"}]})";
  CHECK_THROWS_WITH_AS(parse_dataset(text), doctest::Contains("6 fractional digits"), Error);
}

TEST_CASE("dataset serialization is canonical and round-trips") {
  const ModelConfig cfg = rugby_preset();
  synth::ScenarioParams params = synth::preset("open-like");
  params.plays = 12;
  params.seed = 91;
  const Dataset ds = synth::generate(cfg, params);
  const std::string once = serialize_dataset(ds);
  const Dataset back = parse_dataset(once);
  const std::string twice = serialize_dataset(back);
  CHECK(once == twice);
  REQUIRE(back.plays.size() == ds.plays.size());
  for (std::size_t i = 0; i < ds.plays.size(); ++i) {
    CHECK(back.plays[i].play_id == ds.plays[i].play_id);
    CHECK(back.plays[i].frames.size() == ds.plays[i].frames.size());
    CHECK(back.plays[i].events.size() == ds.plays[i].events.size());
    for (std::size_t f = 0; f < ds.plays[i].frames.size(); ++f) {
      CHECK(back.plays[i].frames[f].t == ds.plays[i].frames[f].t);
      CHECK(back.plays[i].frames[f].positions == ds.plays[i].frames[f].positions);
    }
  }
}

TEST_CASE("config may be an external path reference") {
  const std::string text = R"({"config": "rugby-6v6.json", "plays": []})";
  const Dataset ds = parse_dataset(text, STGRAPH_DATA_DIR);
  CHECK(ds.config.n_players == 6);
}

TEST_CASE("validate_play flags the documented violations") {
  const ModelConfig cfg = testutil::fig3_config();

  PlayRecord good = testutil::constant_play(cfg);
  CHECK(validate_play(good, cfg).ok());

  PlayRecord decreasing = good;
  decreasing.frames[1].t = 5.0;
  decreasing.frames[2].t = 4.0;
  ValidationReport report = validate_play(decreasing, cfg);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().rule == "frames not strictly increasing");

  // Carrier hops between frames with no event covering the gap.
  PlayRecord teleport = good;
  teleport.frames[1].carrier = 1;
  report = validate_play(teleport, cfg);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().rule == "carrier change without event");

  PlayRecord overlap = good;
  overlap.events.push_back({"th_1", 0.5, 1.5});
  overlap.events.push_back({"th_2", 1.5, 2.0});  // touching counts as overlap
  report = validate_play(overlap, cfg);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().rule == "events overlap in time");

  PlayRecord at_start = good;
  at_start.events.push_back({"th_1", 0.0, 0.5});
  report = validate_play(at_start, cfg);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().rule == "event starts at first frame instant");

  PlayRecord outside = good;
  outside.frames[0].positions[0] = {25.0, 1.0};
  CHECK_FALSE(validate_play(outside, cfg).ok());

  PlayRecord bad_result = good;
  bad_result.result = "Draw";
  CHECK_FALSE(validate_play(bad_result, cfg).ok());
}

TEST_CASE("normalize_orientation reflects once and only once") {
  ModelConfig cfg = testutil::fig3_config();
  cfg.field.attack_axis_positive = false;

  PlayRecord play = testutil::constant_play(cfg);
  play.oriented = false;
  const double y_before = play.frames[0].positions[0].y;

  const PlayRecord once = normalize_orientation(play, cfg);
  CHECK(once.oriented);
  CHECK(once.frames[0].positions[0].y == cfg.field.length_m - y_before);
  CHECK(once.frames[0].carrier == play.frames[0].carrier);

  const PlayRecord twice = normalize_orientation(once, cfg);
  CHECK(twice.frames[0].positions[0].y == once.frames[0].positions[0].y);

  // Already-oriented data is untouched.
  ModelConfig up = testutil::fig3_config();
  PlayRecord plain = testutil::constant_play(up);
  CHECK(normalize_orientation(plain, up).frames[0].positions[0].y ==
        plain.frames[0].positions[0].y);
}

TEST_CASE("normalize_orientation preserves inter-player distances") {
  ModelConfig cfg = rugby_preset();
  cfg.field.attack_axis_positive = false;
  synth::ScenarioParams params = synth::preset("tight-like");
  params.plays = 5;
  params.seed = 4;
  Dataset ds = synth::generate(rugby_preset(), params);
  for (PlayRecord play : ds.plays) {
    play.oriented = false;
    const PlayRecord flipped = normalize_orientation(play, cfg);
    for (std::size_t f = 0; f < play.frames.size(); ++f) {
      const auto& before = play.frames[f].positions;
      const auto& after = flipped.frames[f].positions;
      for (std::size_t i = 0; i < before.size(); ++i) {
        for (std::size_t j = i + 1; j < before.size(); ++j) {
          const double d0 = std::hypot(before[i].x - before[j].x, before[i].y - before[j].y);
          const double d1 = std::hypot(after[i].x - after[j].x, after[i].y - after[j].y);
          CHECK(d0 == doctest::Approx(d1).epsilon(1e-12));
        }
      }
    }
  }
}
