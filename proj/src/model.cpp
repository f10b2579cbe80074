#include "stgraph/model.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace stgraph {

int AbsoluteZoning::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < zone_names.size(); ++i) {
    if (zone_names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

bool ThematicTaxonomy::has_leaf(std::string_view id) const {
  return std::any_of(leaves.begin(), leaves.end(),
                     [&](const TaxonomyLeaf& l) { return l.id == id; });
}

int ResultSet::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::string ValidationReport::to_string() const {
  std::ostringstream out;
  for (const auto& v : violations) {
    if (!v.subject.empty()) out << v.subject << ": ";
    out << v.rule << "\n";
  }
  return out.str();
}

ValidationReport validate_config(const ModelConfig& cfg) {
  ValidationReport report;
  if (cfg.n_players < 2) report.add("n_players < 2");
  if (!(cfg.field.width_m > 0)) report.add("field width_m not positive");
  if (!(cfg.field.length_m > 0)) report.add("field length_m not positive");

  if (cfg.absolute.zone_names.empty()) {
    report.add("no absolute zones");
  } else if (cfg.absolute.boundaries_m.size() + 1 != cfg.absolute.zone_names.size()) {
    report.add("boundary count must be zone count - 1");
  }
  std::set<std::string> names(cfg.absolute.zone_names.begin(), cfg.absolute.zone_names.end());
  if (names.size() != cfg.absolute.zone_names.size()) report.add("absolute zone names not unique");
  for (std::size_t i = 0; i < cfg.absolute.boundaries_m.size(); ++i) {
    const double b = cfg.absolute.boundaries_m[i];
    if (!(b > 0.0 && b < cfg.field.length_m)) {
      report.add("boundary outside (0, length_m)");
      break;
    }
    if (i > 0 && !(cfg.absolute.boundaries_m[i - 1] < b)) {
      report.add("boundaries not strictly increasing");
      break;
    }
  }

  std::set<std::string> leaf_ids;
  for (const auto& leaf : cfg.taxonomy.leaves) {
    if (leaf.id.empty()) report.add("taxonomy leaf with empty id");
    if (leaf.tokens.empty()) report.add("taxonomy leaf '" + leaf.id + "' has no tokens");
    if (!leaf_ids.insert(leaf.id).second) report.add("duplicate taxonomy leaf '" + leaf.id + "'");
  }

  if (cfg.results.names.empty()) report.add("result set empty");
  std::set<std::string> result_names(cfg.results.names.begin(), cfg.results.names.end());
  if (result_names.size() != cfg.results.names.size()) report.add("result names not unique");

  return report;
}

int classify_absolute(Point pos, const ModelConfig& cfg) {
  if (pos.x < 0.0 || pos.x > cfg.field.width_m || pos.y < 0.0 || pos.y > cfg.field.length_m) {
    std::ostringstream msg;
    msg << "position (" << pos.x << ", " << pos.y << ") outside field";
    throw invariant_error(msg.str());
  }
  const auto& bounds = cfg.absolute.boundaries_m;
  // Half-open bands; a point on a boundary falls in the band nearer the
  // try line, so the first boundary strictly above y ends its band.
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    if (pos.y < bounds[i]) return static_cast<int>(i);
  }
  return static_cast<int>(bounds.size());
}

std::vector<int> classify_relative(Point carrier, std::span<const Point> teammates,
                                   const ModelConfig& cfg) {
  if (static_cast<int>(teammates.size()) != cfg.n_players - 1) {
    std::ostringstream msg;
    msg << "expected " << cfg.n_players - 1 << " teammates, got " << teammates.size();
    throw invariant_error(msg.str());
  }
  std::vector<int> counts(cfg.relative.zone_count(), 0);
  const bool ties_right = cfg.relative.tie_rule == TieRule::TiesRight;
  for (const Point& p : teammates) {
    if (p.x < carrier.x) {
      counts[0] += 1;
    } else if (p.x > carrier.x) {
      counts[1] += 1;
    } else {
      counts[ties_right ? 1 : 0] += 1;
    }
  }
  return counts;
}

SpatialDelta spatial_relation(const SpatialState& a, const SpatialState& b) {
  return SpatialDelta{a.rel != b.rel, a.abs_zone != b.abs_zone};
}

std::vector<std::vector<int>> enumerate_rel_tuples(int n_players, int m_rel) {
  const int total = n_players - 1;
  std::vector<std::vector<int>> tuples;
  std::vector<int> current(m_rel, 0);
  // Depth-first over compositions of `total` into m_rel parts.
  auto emit = [&](auto&& self, int slot, int remaining) -> void {
    if (slot == m_rel - 1) {
      current[slot] = remaining;
      tuples.push_back(current);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      current[slot] = v;
      self(self, slot + 1, remaining - v);
    }
  };
  emit(emit, 0, total);
  // Column order: lexicographic by decreasing last component, so tuples
  // with many players in the last (Right) zone come first.
  std::sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
      if (a[i] != b[i]) return a[i] > b[i];
    }
    return false;
  });
  return tuples;
}

int SkeletonGraph::index_of(const SpatialState& s) const {
  auto it = lookup_.find(s);
  return it == lookup_.end() ? -1 : it->second;
}

int SkeletonGraph::result_index(std::string_view name) const {
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i] == name) return static_cast<int>(spatial.size() + i);
  }
  return -1;
}

std::string SkeletonGraph::vertex_id(int index) const {
  const int nsp = static_cast<int>(spatial.size());
  if (index >= nsp) return results.at(static_cast<std::size_t>(index - nsp));
  const auto& v = spatial.at(static_cast<std::size_t>(index));
  std::string id;
  for (std::size_t i = 0; i < v.state.rel.size(); ++i) {
    if (i) id += '-';
    id += std::to_string(v.state.rel[i]);
  }
  id += '|';
  id += zone_names.at(static_cast<std::size_t>(v.state.abs_zone));
  return id;
}

std::string SkeletonGraph::vertex_label(int index) const {
  const int nsp = static_cast<int>(spatial.size());
  if (index >= nsp) return results.at(static_cast<std::size_t>(index - nsp));
  const auto& v = spatial.at(static_cast<std::size_t>(index));
  std::string label = "(";
  for (std::size_t i = 0; i < v.state.rel.size(); ++i) {
    if (i) label += ',';
    label += std::to_string(v.state.rel[i]);
  }
  label += "),";
  label += zone_names.at(static_cast<std::size_t>(v.state.abs_zone));
  return label;
}

SkeletonGraph build_skeleton(const ModelConfig& cfg) {
  SkeletonGraph skel;
  const auto tuples = enumerate_rel_tuples(cfg.n_players, cfg.relative.zone_count());
  const int m_abs = cfg.absolute.zone_count();
  skel.spatial.reserve(tuples.size() * static_cast<std::size_t>(m_abs));
  for (std::size_t col = 0; col < tuples.size(); ++col) {
    for (int zone = 0; zone < m_abs; ++zone) {
      SkeletonVertex v;
      v.state = SpatialState{tuples[col], zone};
      v.column = static_cast<int>(col);
      v.row = zone;
      skel.lookup_[v.state] = static_cast<int>(skel.spatial.size());
      skel.spatial.push_back(std::move(v));
    }
  }
  skel.results = cfg.results.names;
  skel.zone_names = cfg.absolute.zone_names;
  return skel;
}

namespace {

RelativeKind relative_kind_from(const std::string& s, std::string_view where) {
  if (s == "perpendicular_left_right") return RelativeKind::PerpendicularLeftRight;
  throw schema_error(std::string(where) + ": unknown relative kind '" + s + "'");
}

TieRule tie_rule_from(const std::string& s, std::string_view where) {
  if (s == "ties_right") return TieRule::TiesRight;
  if (s == "ties_left") return TieRule::TiesLeft;
  throw schema_error(std::string(where) + ": unknown tie rule '" + s + "'");
}

}  // namespace

ModelConfig config_from_json(const json& j, std::string_view where) {
  const std::string w(where);
  expect_keys(j, w, {"n_players", "field", "absolute", "relative", "taxonomy", "results"});
  ModelConfig cfg;
  cfg.n_players = static_cast<int>(require_integer(j.at("n_players"), w + ".n_players"));

  const json& f = require_object(j.at("field"), w + ".field");
  expect_keys(f, w + ".field", {"width_m", "length_m", "attack_axis_positive"});
  cfg.field.width_m = require_canonical_number(f.at("width_m"), w + ".field.width_m");
  cfg.field.length_m = require_canonical_number(f.at("length_m"), w + ".field.length_m");
  cfg.field.attack_axis_positive =
      require_bool(f.at("attack_axis_positive"), w + ".field.attack_axis_positive");

  const json& a = require_object(j.at("absolute"), w + ".absolute");
  expect_keys(a, w + ".absolute", {"zone_names", "boundaries_m"});
  for (const auto& z : require_array(a.at("zone_names"), w + ".absolute.zone_names")) {
    cfg.absolute.zone_names.push_back(require_string(z, w + ".absolute.zone_names[]"));
  }
  for (const auto& b : require_array(a.at("boundaries_m"), w + ".absolute.boundaries_m")) {
    cfg.absolute.boundaries_m.push_back(
        require_canonical_number(b, w + ".absolute.boundaries_m[]"));
  }

  const json& r = require_object(j.at("relative"), w + ".relative");
  expect_keys(r, w + ".relative", {"kind", "tie_rule"});
  cfg.relative.kind = relative_kind_from(require_string(r.at("kind"), w + ".relative.kind"),
                                         w + ".relative.kind");
  cfg.relative.tie_rule = tie_rule_from(
      require_string(r.at("tie_rule"), w + ".relative.tie_rule"), w + ".relative.tie_rule");

  for (const auto& leaf : require_array(j.at("taxonomy"), w + ".taxonomy")) {
    expect_keys(leaf, w + ".taxonomy[]", {"id", "tokens"});
    TaxonomyLeaf l;
    l.id = require_string(leaf.at("id"), w + ".taxonomy[].id");
    for (const auto& tok : require_array(leaf.at("tokens"), w + ".taxonomy[].tokens")) {
      l.tokens.push_back(require_string(tok, w + ".taxonomy[].tokens[]"));
    }
    cfg.taxonomy.leaves.push_back(std::move(l));
  }

  for (const auto& name : require_array(j.at("results"), w + ".results")) {
    cfg.results.names.push_back(require_string(name, w + ".results[]"));
  }
  return cfg;
}

json config_to_json(const ModelConfig& cfg) {
  json j;
  j["n_players"] = cfg.n_players;
  j["field"] = {{"width_m", cfg.field.width_m},
                {"length_m", cfg.field.length_m},
                {"attack_axis_positive", cfg.field.attack_axis_positive}};
  j["absolute"] = {{"zone_names", cfg.absolute.zone_names},
                   {"boundaries_m", cfg.absolute.boundaries_m}};
  j["relative"] = {
      {"kind", "perpendicular_left_right"},
      {"tie_rule", cfg.relative.tie_rule == TieRule::TiesRight ? "ties_right" : "ties_left"}};
  json leaves = json::array();
  for (const auto& leaf : cfg.taxonomy.leaves) {
    leaves.push_back({{"id", leaf.id}, {"tokens", leaf.tokens}});
  }
  j["taxonomy"] = std::move(leaves);
  j["results"] = cfg.results.names;
  return j;
}

ModelConfig load_config_file(const std::string& path) {
  const json j = parse_json(read_file(path), path);
  ModelConfig cfg = config_from_json(j);
  ValidationReport report = validate_config(cfg);
  if (!report.ok()) {
    throw invariant_error(path + ": invalid config:\n" + report.to_string());
  }
  return cfg;
}

ModelConfig rugby_preset() {
  ModelConfig cfg;
  cfg.n_players = 6;
  cfg.field = FieldSpec{30.0, 35.0, true};
  cfg.absolute.zone_names = {"Back", "Middle", "Front"};
  cfg.absolute.boundaries_m = {9.545455, 22.272727};
  cfg.relative = RelativeZoning{RelativeKind::PerpendicularLeftRight, TieRule::TiesRight};
  cfg.taxonomy.leaves = {{"hand_no_contact", {"hand", "no contact"}},
                         {"hand_contact", {"hand", "contact"}},
                         {"kick_diagonal", {"kick", "diagonal"}},
                         {"kick_straight", {"kick", "straight"}}};
  cfg.results.names = {"Try", "Failure"};
  return cfg;
}

}  // namespace stgraph
