// Command-line front end: instance generation, LON extraction, community
// detection, batch experiments and their summaries.
//
// Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 resource-limit refusal.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "lonqap/community.hpp"
#include "lonqap/error.hpp"
#include "lonqap/experiment.hpp"
#include "lonqap/generator.hpp"
#include "lonqap/graph_export.hpp"
#include "lonqap/instance_io.hpp"
#include "lonqap/landscape.hpp"
#include "lonqap/lon.hpp"

namespace fs = std::filesystem;
using namespace lonqap;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kResource = 3 };

fs::path meta_path(const fs::path& instance_path) {
  fs::path p = instance_path;
  return p.replace_extension(".meta");
}

int cmd_generate(const std::string& cls, const GeneratorConfig& base, const std::string& out) {
  GeneratorConfig cfg = base;
  cfg.cls = parse_instance_class(cls);
  const QapInstance inst = generate(cfg);
  if (out.empty()) {
    std::cout << format_instance(inst);
    return kOk;
  }
  save_instance(inst, out);
  write_text_file(meta_path(out), metadata_text(cfg));
  std::cerr << "wrote " << out << " and " << meta_path(out).string() << "\n";
  return kOk;
}

int cmd_lon(const std::string& instance_path, double alpha, const std::string& format, std::size_t workers,
            bool fast, const std::string& out_dir) {
  std::vector<std::string> warnings;
  const QapInstance inst = load_instance(instance_path, &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  const auto t0 = std::chrono::steady_clock::now();
  const BasinMap bm = enumerate_basins(inst, workers, fast ? ClimbMode::memoized : ClimbMode::reference);
  const Lon lon = build_lon(inst, bm, workers);
  const FilteredLon filtered = filter_lon(lon, alpha);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const fs::path dir(out_dir);
  fs::create_directories(dir);
  write_basin_binary(bm, dir / "basins.bin");
  write_text_file(dir / "optima.csv", optima_roster_csv(bm));
  write_text_file(dir / "nodes.csv", node_csv(filtered.nodes));
  export_graph(filtered, GraphFormat::edge_csv, dir / "edges.csv");
  export_graph(lon, GraphFormat::edge_csv, dir / "lon_directed.csv");
  if (!format.empty()) {
    const GraphFormat f = parse_graph_format(format);
    export_graph(filtered, f, dir / ("filtered_lon" + std::string(file_extension(f))));
    export_graph(lon, f, dir / ("lon" + std::string(file_extension(f))));
  }
  std::cout << "optima=" << bm.optima.size() << " transitions=" << lon.transitions.size()
            << " filtered_edges=" << filtered.graph.edges.size() << " threshold=" << filtered.threshold
            << " seconds=" << secs << "\n";
  return kOk;
}

int cmd_communities(const std::string& graph_path, const std::string& nodes_path, const std::string& algorithm,
                    std::uint64_t seed, double gamma, const std::string& out) {
  std::size_t min_nodes = 0;
  if (!nodes_path.empty()) min_nodes = count_node_rows(read_text_file(nodes_path));
  const WeightedGraph g = parse_edge_csv(read_text_file(graph_path), min_nodes);
  const Detector d = parse_detector(algorithm);
  Partition part;
  if (d == Detector::greedy) {
    part = greedy_modularity(g);
  } else if (d == Detector::spinglass) {
    SpinGlassConfig cfg;
    cfg.gamma = gamma;
    part = spinglass_communities(g, seed, cfg);
  } else {
    throw ContractViolation("algorithm must be greedy or spinglass");
  }
  write_text_file(out, partition_csv(part, gamma));
  std::cout << "communities=" << part.num_communities() << " Q=" << part.q << "\n";
  return kOk;
}

int cmd_experiment(const std::string& config_path, const std::string& out_dir, std::optional<std::size_t> workers) {
  ExperimentConfig cfg = parse_experiment_config(read_text_file(config_path));
  if (workers) cfg.workers = *workers;
  const auto records = run_experiment(cfg);
  fs::create_directories(out_dir);
  write_text_file(fs::path(out_dir) / "records.csv", records_csv(records));
  const auto summary = summarize(records);
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
  write_text_file(fs::path(out_dir) / "summary.csv", summary_csv(summary));
  std::cout << summary_csv(summary);
  return kOk;
}

int cmd_summarize(const std::string& records_path, const std::string& out) {
  const auto summary = summarize(parse_records_csv(read_text_file(records_path)));
  for (const auto& w : summary.warnings) std::cerr << "warning: " << w << "\n";
  write_text_file(out, summary_csv(summary));
  std::cout << summary_csv(summary);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local optima networks of small QAP instances"};
  app.require_subcommand(1);

  std::string cls, out;
  GeneratorConfig gen;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a seeded instance");
  generate_cmd->add_option("--class", cls, "uniform | real-like")->required();
  generate_cmd->add_option("--n", gen.n, "Instance size")->required();
  generate_cmd->add_option("--seed", gen.seed, "64-bit seed")->required();
  generate_cmd->add_option("--out", out, "Instance file (stdout when omitted)");
  generate_cmd->add_option("--uniform-max", gen.uniform_max, "Largest uniform entry");
  generate_cmd->add_option("--rl-grid", gen.rl_grid, "Side of the placement square");
  generate_cmd->add_option("--rl-exponent", gen.rl_exponent, "Flow magnitude exponent");
  generate_cmd->add_option("--rl-sparsity", gen.rl_sparsity, "Probability of a zero flow");

  std::string instance, format, out_dir;
  double alpha = 0.05;
  std::size_t workers = 1;
  bool fast = false;
  auto* lon_cmd = app.add_subcommand("lon", "Enumerate basins and build the local optima network");
  lon_cmd->add_option("--instance", instance, "QAPLIB-style instance file")->required();
  lon_cmd->add_option("--alpha", alpha, "Filter quantile level in [0,1]")->required();
  lon_cmd->add_option("--export", format, "graphml | dot | edge_csv");
  lon_cmd->add_option("--workers", workers, "Worker threads");
  lon_cmd->add_flag("--fast", fast, "Memoized climbing");
  lon_cmd->add_option("--out", out_dir, "Output directory")->required();

  std::string graph, nodes, algorithm;
  std::uint64_t seed = 1;
  double gamma = 1.0;
  auto* comm_cmd = app.add_subcommand("communities", "Detect communities in a filtered LON edge CSV");
  comm_cmd->add_option("--graph", graph, "Edge CSV src,dst,weight")->required();
  comm_cmd->add_option("--nodes", nodes, "Node CSV, to include isolated nodes");
  comm_cmd->add_option("--algorithm", algorithm, "greedy | spinglass")->required();
  comm_cmd->add_option("--seed", seed, "Spin-glass seed");
  comm_cmd->add_option("--gamma", gamma, "Spin-glass resolution");
  comm_cmd->add_option("--out", out, "Partition CSV")->required();

  std::string config;
  std::optional<std::size_t> exp_workers;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a batch experiment from a key=value config");
  exp_cmd->add_option("--config", config, "Config file")->required();
  exp_cmd->add_option("--out", out_dir, "Output directory")->required();
  exp_cmd->add_option("--workers", exp_workers, "Override worker count");

  std::string records;
  auto* sum_cmd = app.add_subcommand("summarize", "Summaries and separation tests from a records CSV");
  sum_cmd->add_option("--records", records, "Records CSV")->required();
  sum_cmd->add_option("--out", out, "Summary CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate_cmd) return cmd_generate(cls, gen, out);
    if (*lon_cmd) return cmd_lon(instance, alpha, format, workers, fast, out_dir);
    if (*comm_cmd) return cmd_communities(graph, nodes, algorithm, seed, gamma, out);
    if (*exp_cmd) return cmd_experiment(config, out_dir, exp_workers);
    if (*sum_cmd) return cmd_summarize(records, out);
  } catch (const ResourceLimit& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kResource;
  } catch (const ContractViolation& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kData;
  }
  return kUsage;
}
