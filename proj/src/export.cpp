#include "stgraph/export.hpp"

#include <algorithm>
#include <sstream>

#include "stgraph/csv.hpp"

namespace stgraph {

namespace {

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

struct GridGeometry {
  int columns = 0;
  int rows = 0;
};

GridGeometry grid_of(const SkeletonGraph& skel) {
  GridGeometry g;
  for (const SkeletonVertex& v : skel.spatial) {
    g.columns = std::max(g.columns, v.column + 1);
    g.rows = std::max(g.rows, v.row + 1);
  }
  return g;
}

std::string pos_attr(double x, double y) {
  return "pos=" + dot_quote(format_number(x) + "," + format_number(y) + "!");
}

void emit_vertices(std::ostringstream& out, const SkeletonGraph& skel, const DotStyle& style,
                   const AggregateGraph* agg) {
  const GridGeometry grid = grid_of(skel);
  for (std::size_t i = 0; i < skel.spatial.size(); ++i) {
    const SkeletonVertex& v = skel.spatial[i];
    out << "  " << dot_quote(skel.vertex_id(static_cast<int>(i)))
        << " [label=" << dot_quote(skel.vertex_label(static_cast<int>(i))) << ", "
        << pos_attr(v.column * style.col_step, v.row * style.row_step);
    if (agg != nullptr) {
      auto it = agg->vertex_time.find(static_cast<int>(i));
      const double seconds = it == agg->vertex_time.end() ? 0.0 : it->second;
      // Raw seconds in the tooltip; the drawn diameter is scaled.
      out << ", tooltip=" << dot_quote(format_number(seconds) + " s")
          << ", width=" << format_number(0.75 + seconds * style.time_scale / 1000.0);
    }
    out << "];\n";
  }
  const double mid_y = (grid.rows - 1) * style.row_step / 2.0;
  for (std::size_t r = 0; r < skel.results.size(); ++r) {
    const bool right = (r % 2 == 0);
    const double x = right ? grid.columns * style.col_step
                           : -1.0 * style.col_step;
    const double y = mid_y + static_cast<double>(r / 2) * style.row_step * 0.75;
    out << "  " << dot_quote(skel.results[r]) << " [label=" << dot_quote(skel.results[r])
        << ", shape=box, " << pos_attr(x, y) << "];\n";
  }
}

std::string arc_display_label(const ArcLabel& label) {
  std::string text;
  if (label.spatial.abs) text += "abs";
  if (label.spatial.rel) {
    if (!text.empty()) text += ", ";
    text += "rel";
  }
  for (const std::string& leaf : label.thematic) {
    if (!text.empty()) text += ", ";
    text += leaf;
  }
  return text;
}

}  // namespace

std::string skeleton_dot(const SkeletonGraph& skel, DotStyle style) {
  std::ostringstream out;
  out << "digraph skeleton {\n";
  out << "  node [shape=ellipse, fontsize=10];\n";
  emit_vertices(out, skel, style, nullptr);
  // Complete arc universe: every ordered spatial pair plus every
  // spatial -> result arc.
  const int nsp = static_cast<int>(skel.spatial.size());
  const int total = nsp + static_cast<int>(skel.results.size());
  for (int src = 0; src < nsp; ++src) {
    for (int dst = 0; dst < total; ++dst) {
      out << "  " << dot_quote(skel.vertex_id(src)) << " -> " << dot_quote(skel.vertex_id(dst))
          << " [color=gray70];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string aggregate_dot(const AggregateGraph& agg, const SkeletonGraph& skel, DotStyle style) {
  std::ostringstream out;
  out << "digraph aggregate {\n";
  out << "  node [shape=ellipse, fontsize=10];\n";
  emit_vertices(out, skel, style, &agg);
  std::int64_t max_weight = 1;
  for (const auto& [pair, w] : agg.arc_weights) max_weight = std::max(max_weight, w);
  for (const auto& [pair, w] : agg.arc_weights) {
    if (w <= 0) continue;
    const double pen = 1.0 + (style.max_penwidth - 1.0) * static_cast<double>(w) /
                                 static_cast<double>(max_weight);
    out << "  " << dot_quote(skel.vertex_id(pair.first)) << " -> "
        << dot_quote(skel.vertex_id(pair.second)) << " [penwidth=" << format_number(pen)
        << ", xlabel=" << dot_quote(std::to_string(w)) << "];\n";
  }
  out << "}\n";
  return out.str();
}

std::string paths_overlay_dot(std::span<const LabeledPath> paths, const SkeletonGraph& skel,
                              DotStyle style) {
  std::ostringstream out;
  out << "digraph play {\n";
  out << "  node [shape=ellipse, fontsize=10];\n";
  emit_vertices(out, skel, style, nullptr);
  for (const LabeledPath& path : paths) {
    for (std::size_t i = 0; i < path.arcs.size(); ++i) {
      const int src = skel.index_of(path.vertices[i].state);
      const bool terminal = (i + 1 == path.arcs.size());
      const int dst = terminal ? skel.result_index(path.result)
                               : skel.index_of(path.vertices[i + 1].state);
      if (src < 0 || dst < 0) {
        throw invariant_error("path '" + path.play_id + "' leaves the skeleton graph");
      }
      out << "  " << dot_quote(skel.vertex_id(src)) << " -> " << dot_quote(skel.vertex_id(dst))
          << " [color=red, penwidth=2";
      const std::string label = arc_display_label(path.arcs[i]);
      if (!label.empty()) out << ", label=" << dot_quote(label);
      out << "];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string aggregate_table(const AggregateGraph& agg, const SkeletonGraph& skel) {
  std::ostringstream out;
  out << "src_rel,src_abs,dst,weight\n";
  for (const auto& [pair, w] : agg.arc_weights) {
    const SkeletonVertex& src = skel.spatial.at(static_cast<std::size_t>(pair.first));
    std::string rel;
    for (std::size_t i = 0; i < src.state.rel.size(); ++i) {
      if (i) rel += '-';
      rel += std::to_string(src.state.rel[i]);
    }
    out << csv_row({rel, skel.zone_names.at(static_cast<std::size_t>(src.state.abs_zone)),
                    skel.vertex_id(pair.second), std::to_string(w)});
  }
  out << "\nvertex,seconds\n";
  for (const auto& [v, secs] : agg.vertex_time) {
    out << csv_row({skel.vertex_id(v), format_number(secs)});
  }
  return out.str();
}

std::string skeleton_table(const SkeletonGraph& skel) {
  std::ostringstream out;
  out << "vertex,label,column,row\n";
  for (std::size_t i = 0; i < skel.spatial.size(); ++i) {
    const SkeletonVertex& v = skel.spatial[i];
    out << csv_row({skel.vertex_id(static_cast<int>(i)),
                    skel.vertex_label(static_cast<int>(i)), std::to_string(v.column),
                    std::to_string(v.row)});
  }
  for (const std::string& r : skel.results) {
    out << csv_row({r, r, "", ""});
  }
  return out.str();
}

std::string paths_table(std::span<const LabeledPath> paths) {
  std::ostringstream out;
  out << "play_id,result,vertices,arcs,duration_s\n";
  for (const LabeledPath& p : paths) {
    const double duration =
        p.vertices.empty() ? 0.0 : p.vertices.back().t_end - p.vertices.front().t_start;
    out << csv_row({p.play_id, p.result, std::to_string(p.vertices.size()),
                    std::to_string(p.arcs.size()), format_number(duration)});
  }
  return out.str();
}

}  // namespace stgraph
