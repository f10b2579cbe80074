#pragma once

#include <span>
#include <string>

#include "stgraph/aggregate.hpp"
#include "stgraph/model.hpp"
#include "stgraph/path_builder.hpp"

namespace stgraph {

// Layout/styling knobs for DOT output. Spatial vertices are pinned to a
// grid reflecting the field topology: column = rel-tuple rank (many
// players to the Right = leftmost), row = absolute zone (own end at the
// bottom). First result vertex flanks the grid on the right, the second
// on the left.
struct DotStyle {
  double col_step = 2.0;
  double row_step = 1.6;
  // Vertex display size per second of accumulated time (raw seconds are
  // always exported; this only scales the rendering).
  double time_scale = 30.0;
  double max_penwidth = 6.0;
};

std::string skeleton_dot(const SkeletonGraph& skel, DotStyle style = {});

// Skeleton vertices plus the traversed arcs with occurrence weights and
// time-spent vertex sizing.
std::string aggregate_dot(const AggregateGraph& agg, const SkeletonGraph& skel,
                          DotStyle style = {});

// Fig-style single-play view: skeleton vertices, the path's arcs
// highlighted with their labels.
std::string paths_overlay_dot(std::span<const LabeledPath> paths, const SkeletonGraph& skel,
                              DotStyle style = {});

// Flat delimited dumps.
std::string aggregate_table(const AggregateGraph& agg, const SkeletonGraph& skel);
std::string skeleton_table(const SkeletonGraph& skel);
std::string paths_table(std::span<const LabeledPath> paths);

}  // namespace stgraph
