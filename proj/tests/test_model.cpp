#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "stgraph/model.hpp"
#include "stgraph/synth.hpp"

using namespace stgraph;

namespace {

// Brute-force count of tuples of m non-negative ints summing to total.
int count_compositions(int total, int m) {
  if (m == 1) return 1;
  int count = 0;
  for (int v = 0; v <= total; ++v) count += count_compositions(total - v, m - 1);
  return count;
}

}  // namespace

TEST_CASE("rugby preset validates cleanly") {
  CHECK(validate_config(rugby_preset()).ok());
}

TEST_CASE("validate_config reports each violated rule") {
  ModelConfig cfg = rugby_preset();
  cfg.absolute.boundaries_m = {22.0, 9.0};
  ValidationReport report = validate_config(cfg);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().rule == "boundaries not strictly increasing");

  ModelConfig one = rugby_preset();
  one.n_players = 1;
  report = validate_config(one);
  REQUIRE_FALSE(report.ok());
  CHECK(report.violations.front().rule == "n_players < 2");
}

TEST_CASE("classify_absolute uses half-open bands toward the try line") {
  const ModelConfig cfg = rugby_preset();
  CHECK(classify_absolute({1.0, 0.0}, cfg) == 0);  // own end -> Back
  // A point exactly on the first boundary already belongs to Middle.
  CHECK(classify_absolute({1.0, cfg.absolute.boundaries_m[0]}, cfg) == 1);
  CHECK(classify_absolute({1.0, cfg.field.length_m}, cfg) == 2);  // try line
  CHECK_THROWS_AS(classify_absolute({1.0, 99.0}, cfg), Error);
  CHECK_THROWS_AS(classify_absolute({-0.5, 1.0}, cfg), Error);
}

TEST_CASE("classify_absolute tiles a sample grid exactly once") {
  const ModelConfig cfg = rugby_preset();
  for (int xi = 0; xi <= 30; ++xi) {
    for (int yi = 0; yi <= 70; ++yi) {
      const Point p{xi * 1.0, yi * 0.5};
      const int zone = classify_absolute(p, cfg);
      CHECK(zone >= 0);
      CHECK(zone < cfg.absolute.zone_count());
    }
  }
}

TEST_CASE("classify_relative counts left and right of the carrier") {
  const ModelConfig cfg = rugby_preset();
  // The mid-field six-player configuration: two teammates on the
  // carrier's left, three on the right.
  const Point carrier{8.8, 21.636364};
  const std::vector<Point> teammates = {{1.6, 19.090909},
                                        {3.2, 14.636364},
                                        {12.0, 21.0},
                                        {14.4, 26.727273},
                                        {10.4, 17.818182}};
  CHECK(classify_relative(carrier, teammates, cfg) == std::vector<int>{2, 3});
  CHECK(classify_absolute(carrier, cfg) == 1);  // Middle

  const std::vector<Point> all_left = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
  CHECK(classify_relative({20, 1}, all_left, cfg) == std::vector<int>{5, 0});

  std::vector<Point> short_list(3, Point{1, 1});
  CHECK_THROWS_AS(classify_relative({20, 1}, short_list, cfg), Error);
}

TEST_CASE("tie rule decides coincident lateral coordinates") {
  ModelConfig cfg = rugby_preset();
  std::vector<Point> teammates = {{10, 1}, {1, 2}, {2, 2}, {3, 2}, {4, 2}};
  CHECK(classify_relative({10, 5}, teammates, cfg) == std::vector<int>{4, 1});
  cfg.relative.tie_rule = TieRule::TiesLeft;
  CHECK(classify_relative({10, 5}, teammates, cfg) == std::vector<int>{5, 0});
}

TEST_CASE("classify_relative always sums to n-1") {
  const ModelConfig cfg = rugby_preset();
  synth::SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Point carrier{rng.unit() * 30.0, rng.unit() * 35.0};
    std::vector<Point> teammates;
    for (int i = 0; i < 5; ++i) teammates.push_back({rng.unit() * 30.0, rng.unit() * 35.0});
    const auto rel = classify_relative(carrier, teammates, cfg);
    CHECK(rel[0] + rel[1] == cfg.n_players - 1);
  }
}

TEST_CASE("spatial_relation compares component-wise") {
  const SpatialState a{{0, 2}, 0};
  const SpatialState b{{0, 2}, 1};
  const SpatialState c{{1, 1}, 1};
  CHECK(spatial_relation(a, b) == SpatialDelta{false, true});
  CHECK(spatial_relation(b, c) == SpatialDelta{true, false});
  CHECK(spatial_relation(a, c) == SpatialDelta{true, true});
  CHECK(spatial_relation(a, a).empty());
  // Symmetry.
  CHECK(spatial_relation(b, a) == spatial_relation(a, b));
  CHECK(spatial_relation(c, a) == spatial_relation(a, c));
}

TEST_CASE("skeleton sizes match the counting formula") {
  const ModelConfig toy = testutil::fig3_config();
  const SkeletonGraph small = build_skeleton(toy);
  CHECK(small.spatial.size() == 6);
  CHECK(small.results.size() == 2);
  CHECK(small.arc_universe_size() == 48);

  const SkeletonGraph rugby = build_skeleton(rugby_preset());
  CHECK(rugby.spatial.size() == 18);
  CHECK(rugby.arc_universe_size() == 360);

  ModelConfig tiny;
  tiny.n_players = 2;
  tiny.field = {10, 10, true};
  tiny.absolute.zone_names = {"Z"};
  tiny.results.names = {"End"};
  const SkeletonGraph t = build_skeleton(tiny);
  CHECK(t.spatial.size() == 2);
  CHECK(t.results.size() == 1);
  CHECK(t.arc_universe_size() == 6);

  // Degenerate single-vertex graph: 1 self-loop + 1 result arc.
  SkeletonGraph unit;
  unit.spatial.push_back(SkeletonVertex{SpatialState{{0}, 0}, 0, 0});
  unit.results = {"End"};
  CHECK(unit.arc_universe_size() == 2);
}

TEST_CASE("spatial vertex count equals m_abs * C(n-2+m_rel, m_rel-1)") {
  for (int n = 2; n <= 8; ++n) {
    for (int m_abs = 1; m_abs <= 4; ++m_abs) {
      ModelConfig cfg;
      cfg.n_players = n;
      cfg.field = {10, 10, true};
      for (int z = 0; z < m_abs; ++z) {
        cfg.absolute.zone_names.push_back("Z" + std::to_string(z));
        if (z > 0) cfg.absolute.boundaries_m.push_back(10.0 * z / m_abs);
      }
      cfg.results.names = {"End"};
      const SkeletonGraph skel = build_skeleton(cfg);
      const int expected = m_abs * count_compositions(n - 1, 2);
      CHECK(static_cast<int>(skel.spatial.size()) == expected);
    }
  }
}

TEST_CASE("skeleton enumeration is deterministic and right-heavy first") {
  const ModelConfig cfg = rugby_preset();
  const SkeletonGraph a = build_skeleton(cfg);
  const SkeletonGraph b = build_skeleton(cfg);
  REQUIRE(a.spatial.size() == b.spatial.size());
  for (std::size_t i = 0; i < a.spatial.size(); ++i) {
    CHECK(a.spatial[i].state == b.spatial[i].state);
    CHECK(a.spatial[i].column == b.spatial[i].column);
  }
  // Column 0 holds (0,5): everyone in the Right zone.
  CHECK(a.spatial.front().state.rel == std::vector<int>{0, 5});
  CHECK(a.spatial.front().state.abs_zone == 0);
  CHECK(a.spatial.back().state.rel == std::vector<int>{5, 0});
  // Index lookup is consistent.
  for (std::size_t i = 0; i < a.spatial.size(); ++i) {
    CHECK(a.index_of(a.spatial[i].state) == static_cast<int>(i));
  }
  CHECK(a.result_index("Try") == 18);
  CHECK(a.result_index("Failure") == 19);
  CHECK(a.index_of(SpatialState{{9, 9}, 0}) == -1);
}

TEST_CASE("config json round-trips") {
  const ModelConfig cfg = rugby_preset();
  const ModelConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.n_players == cfg.n_players);
  CHECK(back.absolute.zone_names == cfg.absolute.zone_names);
  CHECK(back.absolute.boundaries_m == cfg.absolute.boundaries_m);
  CHECK(back.taxonomy.leaves.size() == cfg.taxonomy.leaves.size());
  CHECK(back.results.names == cfg.results.names);
}

TEST_CASE("bundled rugby preset file matches the built-in preset") {
  const ModelConfig from_file = load_config_file(testutil::data_path("rugby-6v6.json"));
  CHECK(write_canonical(config_to_json(from_file)) ==
        write_canonical(config_to_json(rugby_preset())));
}

TEST_CASE("unknown config fields are rejected") {
  json j = config_to_json(rugby_preset());
  j["surprise"] = 1;
  CHECK_THROWS_AS(config_from_json(j), Error);
}
