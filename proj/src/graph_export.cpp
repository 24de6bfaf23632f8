#include "lonqap/graph_export.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "lonqap/error.hpp"
#include "lonqap/instance_io.hpp"

namespace lonqap {

namespace {

constexpr double kMaxSizeHint = 30.0;

std::string fmt_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", w);
  return buf;
}

std::string fmt_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

struct EdgeView {
  std::uint32_t src;
  std::uint32_t dst;
  double weight;
};

std::string render(const std::vector<LocalOptimum>& nodes, const std::vector<EdgeView>& edges, bool directed,
                   GraphFormat format) {
  const auto styles = node_styles(nodes);
  std::ostringstream out;
  switch (format) {
    case GraphFormat::graphml: {
      out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
          << "  <key id=\"cost\" for=\"node\" attr.name=\"cost\" attr.type=\"long\"/>\n"
          << "  <key id=\"basin_size\" for=\"node\" attr.name=\"basin_size\" attr.type=\"long\"/>\n"
          << "  <key id=\"size_hint\" for=\"node\" attr.name=\"size_hint\" attr.type=\"double\"/>\n"
          << "  <key id=\"shade\" for=\"node\" attr.name=\"shade\" attr.type=\"int\"/>\n"
          << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
          << "  <graph id=\"lon\" edgedefault=\"" << (directed ? "directed" : "undirected") << "\">\n";
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        out << "    <node id=\"n" << nodes[i].id << "\">"
            << "<data key=\"cost\">" << nodes[i].cost << "</data>"
            << "<data key=\"basin_size\">" << nodes[i].basin_size << "</data>"
            << "<data key=\"size_hint\">" << fmt_real(styles[i].size_hint) << "</data>"
            << "<data key=\"shade\">" << styles[i].shade << "</data></node>\n";
      }
      for (const auto& e : edges)
        out << "    <edge source=\"n" << e.src << "\" target=\"n" << e.dst << "\"><data key=\"weight\">"
            << fmt_weight(e.weight) << "</data></edge>\n";
      out << "  </graph>\n</graphml>\n";
      break;
    }
    case GraphFormat::dot: {
      const char* arrow = directed ? " -> " : " -- ";
      out << (directed ? "digraph" : "graph") << " lon {\n";
      for (std::size_t i = 0; i < nodes.size(); ++i)
        out << "  " << nodes[i].id << " [cost=" << nodes[i].cost << ", basin_size=" << nodes[i].basin_size
            << ", size_hint=" << fmt_real(styles[i].size_hint) << ", shade=" << styles[i].shade << "];\n";
      for (const auto& e : edges) out << "  " << e.src << arrow << e.dst << " [weight=" << fmt_weight(e.weight) << "];\n";
      out << "}\n";
      break;
    }
    case GraphFormat::edge_csv: {
      out << "src,dst,weight\n";
      for (const auto& e : edges) out << e.src << ',' << e.dst << ',' << fmt_weight(e.weight) << '\n';
      break;
    }
  }
  return out.str();
}

double parse_double_field(std::string_view field, std::size_t offset) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) throw ParseError("bad number '" + std::string(field) + "'", offset);
  return v;
}

std::uint32_t parse_id_field(std::string_view field, std::size_t offset) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) throw ParseError("bad node id '" + std::string(field) + "'", offset);
  return v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

GraphFormat parse_graph_format(std::string_view s) {
  if (s == "graphml") return GraphFormat::graphml;
  if (s == "dot") return GraphFormat::dot;
  if (s == "edge_csv" || s == "csv") return GraphFormat::edge_csv;
  throw ContractViolation("unknown graph format: " + std::string(s));
}

std::string_view file_extension(GraphFormat f) {
  switch (f) {
    case GraphFormat::graphml: return ".graphml";
    case GraphFormat::dot: return ".dot";
    case GraphFormat::edge_csv: return ".csv";
  }
  return "";
}

std::vector<NodeStyle> node_styles(const std::vector<LocalOptimum>& nodes) {
  std::vector<NodeStyle> styles(nodes.size());
  if (nodes.empty()) return styles;
  const auto [lo, hi] = std::minmax_element(nodes.begin(), nodes.end(),
                                            [](const auto& a, const auto& b) { return a.cost < b.cost; });
  std::uint64_t max_basin = 0;
  for (const auto& o : nodes) max_basin = std::max(max_basin, o.basin_size);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    styles[i].size_hint =
        max_basin ? kMaxSizeHint * static_cast<double>(nodes[i].basin_size) / static_cast<double>(max_basin) : 0.0;
    if (hi->cost == lo->cost) {
      styles[i].shade = 128;
    } else {
      const double t = static_cast<double>(nodes[i].cost - lo->cost) / static_cast<double>(hi->cost - lo->cost);
      styles[i].shade = static_cast<int>(std::lround(255.0 * t));
    }
  }
  return styles;
}

std::string format_graph(const FilteredLon& g, GraphFormat format) {
  std::vector<EdgeView> edges;
  edges.reserve(g.graph.edges.size());
  for (const auto& e : g.graph.edges) edges.push_back({e.u, e.v, e.weight});
  return render(g.nodes, edges, false, format);
}

std::string format_graph(const Lon& g, GraphFormat format) {
  std::vector<EdgeView> edges;
  edges.reserve(g.transitions.size());
  for (const auto& t : g.transitions) edges.push_back({t.src, t.dst, g.weight(t)});
  return render(g.nodes, edges, true, format);
}

void export_graph(const FilteredLon& g, GraphFormat format, const std::filesystem::path& path) {
  write_text_file(path, format_graph(g, format));
}

void export_graph(const Lon& g, GraphFormat format, const std::filesystem::path& path) {
  write_text_file(path, format_graph(g, format));
}

std::string node_csv(const std::vector<LocalOptimum>& nodes) {
  std::ostringstream out;
  out << "id,cost,basin_size\n";
  for (const auto& o : nodes) out << o.id << ',' << o.cost << ',' << o.basin_size << '\n';
  return out.str();
}

WeightedGraph parse_edge_csv(std::string_view text, std::size_t min_nodes) {
  WeightedGraph g;
  std::size_t offset = 0;
  bool first = true;
  while (offset < text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(offset, eol - offset));
    const std::size_t line_offset = offset;
    offset = eol + 1;
    if (line.empty() || line.front() == '#') continue;
    if (first) {
      first = false;
      if (line.rfind("src", 0) == 0) continue;
    }
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos) throw ParseError("edge row needs src,dst,weight", line_offset);
    WeightedEdge e;
    e.u = parse_id_field(trim(line.substr(0, c1)), line_offset);
    e.v = parse_id_field(trim(line.substr(c1 + 1, c2 - c1 - 1)), line_offset);
    e.weight = parse_double_field(trim(line.substr(c2 + 1)), line_offset);
    if (e.u == e.v) throw ParseError("self-loop edges are not allowed", line_offset);
    if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) throw ParseError("edge weight must be finite and non-negative", line_offset);
    if (e.u > e.v) std::swap(e.u, e.v);
    g.num_nodes = std::max<std::size_t>(g.num_nodes, e.v + 1);
    g.edges.push_back(e);
  }
  g.num_nodes = std::max(g.num_nodes, min_nodes);
  return g;
}

std::size_t count_node_rows(std::string_view text) {
  std::size_t rows = 0;
  std::size_t offset = 0;
  bool header = true;
  while (offset < text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(offset, eol - offset));
    offset = eol + 1;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    ++rows;
  }
  return rows;
}

}  // namespace lonqap
