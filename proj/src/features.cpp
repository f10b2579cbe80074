#include "stgraph/features.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "stgraph/csv.hpp"

namespace stgraph {

int max_shift_right(const LabeledPath& path, int k) {
  if (k < 1) throw usage_error("k must be >= 1");
  const int n_minus_1 = path.n_players() - 1;
  const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                  path.vertices.size());
  int best = 0;
  for (std::size_t i = 0; i < limit; ++i) {
    const auto& rel = path.vertices[i].state.rel;
    const int shift = n_minus_1 - rel.back();
    best = std::max(best, shift);
  }
  return best;
}

CrossingRank crossing_rank(const LabeledPath& path, int k, int target_zone) {
  if (k < 1) throw usage_error("k must be >= 1");
  const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                  path.vertices.size());
  for (std::size_t i = 0; i < limit; ++i) {
    if (path.vertices[i].state.abs_zone == target_zone) {
      return CrossingRank{static_cast<int>(i) + 1, k, false};
    }
  }
  return CrossingRank{0, k, true};
}

int count_thematic(const LabeledPath& path, int k, const std::set<std::string>& leaves) {
  if (k < 1) throw usage_error("k must be >= 1");
  const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(k),
                                                  path.vertices.size());
  int count = 0;
  for (std::size_t i = 0; i < limit && i < path.arcs.size(); ++i) {
    const auto& thematic = path.arcs[i].thematic;
    if (std::any_of(thematic.begin(), thematic.end(),
                    [&](const std::string& leaf) { return leaves.count(leaf) > 0; })) {
      ++count;
    }
  }
  return count;
}

int path_length(const LabeledPath& path) { return static_cast<int>(path.arcs.size()); }

double subgraph_density(std::span<const LabeledPath> paths, const SkeletonGraph& skel) {
  std::set<std::pair<int, int>> pairs;
  for (const LabeledPath& path : paths) {
    for (std::size_t i = 0; i < path.arcs.size(); ++i) {
      const int src = skel.index_of(path.vertices[i].state);
      const bool terminal = (i + 1 == path.arcs.size());
      const int dst = terminal ? skel.result_index(path.result)
                               : skel.index_of(path.vertices[i + 1].state);
      if (src < 0 || dst < 0) {
        throw invariant_error("path '" + path.play_id + "' leaves the skeleton graph");
      }
      pairs.emplace(src, dst);
    }
  }
  return static_cast<double>(pairs.size()) / static_cast<double>(skel.arc_universe_size());
}

FeatureTable feature_table(std::span<const LabeledPath> paths, const ModelConfig& cfg, int k,
                           const std::set<std::string>& kick_leaves,
                           const std::string& target_zone) {
  const int zone = cfg.absolute.index_of(target_zone);
  if (zone < 0) throw usage_error("unknown target zone '" + target_zone + "'");
  for (const std::string& leaf : kick_leaves) {
    if (!cfg.taxonomy.has_leaf(leaf)) throw usage_error("unknown taxonomy leaf '" + leaf + "'");
  }

  FeatureTable table;
  table.k = k;
  table.target_zone = target_zone;
  table.kick_leaves = kick_leaves;

  std::set<std::string> tags;
  for (const LabeledPath& p : paths) {
    for (const auto& [key, value] : p.meta) tags.insert(key);
  }
  table.tag_columns.assign(tags.begin(), tags.end());

  table.rows.reserve(paths.size());
  for (const LabeledPath& p : paths) {
    FeatureRow row;
    row.play_id = p.play_id;
    row.meta = p.meta;
    row.max_shift_right = max_shift_right(p, k);
    row.crossing_rank = crossing_rank(p, k, zone);
    row.kick_pass_count = count_thematic(p, k, kick_leaves);
    row.path_length = path_length(p);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string feature_table_csv(const FeatureTable& table) {
  std::ostringstream out;
  out << "# k=" << table.k << " zone=" << csv_field(table.target_zone) << " kick_leaves=";
  bool first = true;
  for (const std::string& leaf : table.kick_leaves) {
    if (!first) out << ';';
    first = false;
    out << leaf;
  }
  out << "\n";

  std::vector<std::string> header{"play_id"};
  header.insert(header.end(), table.tag_columns.begin(), table.tag_columns.end());
  header.insert(header.end(),
                {"max_shift_right", "crossing_rank", "kick_pass_count", "path_length"});
  out << csv_row(header);

  for (const FeatureRow& row : table.rows) {
    std::vector<std::string> fields{row.play_id};
    for (const std::string& tag : table.tag_columns) {
      auto it = row.meta.find(tag);
      fields.push_back(it == row.meta.end() ? "" : it->second);
    }
    fields.push_back(std::to_string(row.max_shift_right));
    fields.push_back(row.crossing_rank.to_string());
    fields.push_back(std::to_string(row.kick_pass_count));
    fields.push_back(std::to_string(row.path_length));
    out << csv_row(fields);
  }
  return out.str();
}

namespace {

int parse_int_field(const std::string& s, const std::string& where) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw syntax_error("feature table: bad integer '" + s + "' in " + where);
  }
}

}  // namespace

FeatureTable parse_feature_csv(const std::string& text) {
  FeatureTable table;
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto kpos = line.find("k=");
      if (kpos != std::string::npos) {
        table.k = parse_int_field(line.substr(kpos + 2, line.find(' ', kpos) - kpos - 2), "k");
      }
      continue;
    }
    std::vector<std::string> fields = parse_csv_row(line);
    if (header.empty()) {
      header = std::move(fields);
      if (header.size() < 5 || header.front() != "play_id") {
        throw schema_error("feature table: unexpected header");
      }
      table.tag_columns.assign(header.begin() + 1, header.end() - 4);
      continue;
    }
    if (fields.size() != header.size()) {
      throw schema_error("feature table: row width differs from header");
    }
    FeatureRow row;
    row.play_id = fields[0];
    for (std::size_t i = 0; i < table.tag_columns.size(); ++i) {
      if (!fields[1 + i].empty()) row.meta[table.tag_columns[i]] = fields[1 + i];
    }
    const std::size_t base = 1 + table.tag_columns.size();
    row.max_shift_right = parse_int_field(fields[base], "max_shift_right");
    const std::string& cr = fields[base + 1];
    if (cr.rfind(">=", 0) == 0) {
      row.crossing_rank = CrossingRank{0, parse_int_field(cr.substr(2), "crossing_rank"), true};
    } else {
      row.crossing_rank = CrossingRank{parse_int_field(cr, "crossing_rank"), table.k, false};
    }
    row.kick_pass_count = parse_int_field(fields[base + 2], "kick_pass_count");
    row.path_length = parse_int_field(fields[base + 3], "path_length");
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace stgraph
