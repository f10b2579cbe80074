#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stgraph/error.hpp"
#include "stgraph/jsonio.hpp"

namespace stgraph {

// Field coordinates: x runs along the width (lateral axis), y along the
// length (attack axis). x in [0, width_m], y in [0, length_m].
struct Point {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point&) const = default;
};

struct FieldSpec {
  double width_m = 0.0;
  double length_m = 0.0;
  // Whether the source data's attack direction points toward increasing y.
  bool attack_axis_positive = true;
};

// Fixed bands across the attack axis, ordered from own end to try line.
// Band i spans [boundaries_m[i-1], boundaries_m[i]) with virtual end
// points 0 and length_m; the final band also contains y == length_m.
struct AbsoluteZoning {
  std::vector<std::string> zone_names;
  std::vector<double> boundaries_m;  // size = zone_names.size() - 1

  int zone_count() const { return static_cast<int>(zone_names.size()); }
  int index_of(std::string_view name) const;  // -1 if unknown
};

enum class RelativeKind { PerpendicularLeftRight };
enum class TieRule { TiesRight, TiesLeft };

// Carrier-centered partition. PerpendicularLeftRight splits the field by
// the line through the carrier parallel to the attack axis: zone 0 =
// Left (smaller x), zone 1 = Right (larger x). Ties go per tie_rule.
struct RelativeZoning {
  RelativeKind kind = RelativeKind::PerpendicularLeftRight;
  TieRule tie_rule = TieRule::TiesRight;

  int zone_count() const { return 2; }
};

struct TaxonomyLeaf {
  std::string id;
  std::vector<std::string> tokens;  // semantic path from the root
};

struct ThematicTaxonomy {
  std::vector<TaxonomyLeaf> leaves;

  bool has_leaf(std::string_view id) const;
};

struct ResultSet {
  std::vector<std::string> names;

  int index_of(std::string_view name) const;  // -1 if unknown
};

struct ModelConfig {
  int n_players = 0;  // attackers, >= 2
  FieldSpec field;
  AbsoluteZoning absolute;
  RelativeZoning relative;
  ThematicTaxonomy taxonomy;
  ResultSet results;
};

// State of the game: teammate counts per relative zone plus the
// carrier's absolute zone. sum(rel) == n_players - 1.
struct SpatialState {
  std::vector<int> rel;
  int abs_zone = 0;

  bool operator==(const SpatialState&) const = default;
  auto operator<=>(const SpatialState&) const = default;
};

// Which spatial components changed between two states.
struct SpatialDelta {
  bool rel = false;
  bool abs = false;

  bool empty() const { return !rel && !abs; }
  bool operator==(const SpatialDelta&) const = default;
};

// Arc label: spatial change nature plus any thematic event leaves.
struct ArcLabel {
  SpatialDelta spatial;
  std::vector<std::string> thematic;  // sorted leaf ids

  bool empty() const { return spatial.empty() && thematic.empty(); }
  bool operator==(const ArcLabel&) const = default;
};

struct Violation {
  std::string rule;
  std::string subject;  // play id / field path / ""
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  void add(std::string rule, std::string subject = "") {
    violations.push_back({std::move(rule), std::move(subject)});
  }
  std::string to_string() const;
};

struct SkeletonVertex {
  SpatialState state;
  int column = 0;  // rel-tuple rank; high right-counts get low columns
  int row = 0;     // absolute zone index, own end = 0
};

// The a-priori graph of every spatial state and result. The arc universe
// is implicit and complete: every ordered spatial pair (self-loops
// included) plus every spatial -> result pair.
struct SkeletonGraph {
  std::vector<SkeletonVertex> spatial;  // deterministic enumeration
  std::vector<std::string> results;
  std::vector<std::string> zone_names;  // copied from the config

  int index_of(const SpatialState& s) const;  // -1 if unknown
  int result_index(std::string_view name) const;
  std::size_t spatial_count() const { return spatial.size(); }
  std::size_t arc_universe_size() const {
    return spatial.size() * spatial.size() + spatial.size() * results.size();
  }

  // Stable display id, e.g. "0-2|A1" for spatial index, "Try" for a
  // result index offset by spatial_count().
  std::string vertex_id(int index) const;
  std::string vertex_label(int index) const;  // "(0,2),A1" display form

 private:
  friend SkeletonGraph build_skeleton(const ModelConfig&);
  std::map<SpatialState, int> lookup_;
};

ValidationReport validate_config(const ModelConfig& cfg);

// Band containing pos along the attack axis. Boundary points belong to
// the band toward the try line. Throws on positions outside the field.
int classify_absolute(Point pos, const ModelConfig& cfg);

// Teammate counts per relative zone. Throws on arity mismatch.
std::vector<int> classify_relative(Point carrier, std::span<const Point> teammates,
                                   const ModelConfig& cfg);

SpatialDelta spatial_relation(const SpatialState& a, const SpatialState& b);

// Enumerates rel tuples in lexicographic order by decreasing last
// component, absolute zones own-end first; index = rel_rank * m_abs + abs.
SkeletonGraph build_skeleton(const ModelConfig& cfg);

// All rel tuples for the given player count, in skeleton column order.
std::vector<std::vector<int>> enumerate_rel_tuples(int n_players, int m_rel);

// Config file (de)serialization.
ModelConfig config_from_json(const json& j, std::string_view where = "config");
json config_to_json(const ModelConfig& cfg);
ModelConfig load_config_file(const std::string& path);

// The bundled 6v6 small-sided rugby configuration: 30 x 35 m field,
// Back/Middle/Front bands, Left/Right relative zones, hand/kick pass
// taxonomy, Try/Failure results. Band boundaries are read off the field
// sketch proportions and are illustrative, not measured.
ModelConfig rugby_preset();

}  // namespace stgraph
