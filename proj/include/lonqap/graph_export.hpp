#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lonqap/lon.hpp"

namespace lonqap {

enum class GraphFormat { graphml, dot, edge_csv };

GraphFormat parse_graph_format(std::string_view s);
std::string_view file_extension(GraphFormat f);

/// Visual hints for drawing a LON node.
///   size_hint = 30 * basin_size / max_basin_size   (proportional to basin size)
///   shade     = round(255 * (cost - min_cost) / (max_cost - min_cost)), 128 when all costs are equal
/// so darker nodes have lower (better) cost.
struct NodeStyle {
  double size_hint = 0.0;
  int shade = 128;
};

std::vector<NodeStyle> node_styles(const std::vector<LocalOptimum>& nodes);

/// Edge weights are printed with 12 significant digits. Nodes are written by id,
/// edges by (source, target).
std::string format_graph(const FilteredLon& g, GraphFormat format);
std::string format_graph(const Lon& g, GraphFormat format);

void export_graph(const FilteredLon& g, GraphFormat format, const std::filesystem::path& path);
void export_graph(const Lon& g, GraphFormat format, const std::filesystem::path& path);

/// CSV `id,cost,basin_size`.
std::string node_csv(const std::vector<LocalOptimum>& nodes);

/// Reads an undirected edge CSV `src,dst,weight` (header optional). The node count
/// is one past the largest id, or `min_nodes` if that is larger. Throws ParseError.
WeightedGraph parse_edge_csv(std::string_view text, std::size_t min_nodes = 0);

/// Number of data rows in a node CSV (header required).
std::size_t count_node_rows(std::string_view text);

}  // namespace lonqap
