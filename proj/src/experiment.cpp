#include "lonqap/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include "lonqap/error.hpp"
#include "lonqap/landscape.hpp"
#include "lonqap/lon.hpp"
#include "lonqap/rng.hpp"

namespace lonqap {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_number(std::string_view v, std::size_t offset) {
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ParseError("bad numeric value '" + std::string(v) + "'", offset);
  return out;
}

std::string fmt_double(double x, int digits) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

std::size_t class_slot(InstanceClass cls) { return cls == InstanceClass::uniform ? 0 : 1; }

struct InstanceJob {
  InstanceClass cls;
  std::size_t index;
};

std::vector<ExperimentRecord> run_instance(const ExperimentConfig& cfg, const InstanceJob& job,
                                           std::size_t basin_workers) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  ExperimentRecord base;
  base.cls = job.cls;
  base.n = cfg.size_for(job.cls);
  base.instance_seed = instance_seed(cfg.master_seed, job.cls, job.index);
  base.alpha = cfg.alpha;

  std::vector<ExperimentRecord> out;
  auto emit_error_rows = [&](const std::string& tag) {
    for (Detector d : cfg.algorithms) {
      const std::size_t runs = d == Detector::spinglass ? cfg.spinglass_seeds : 1;
      for (std::size_t r = 0; r < runs; ++r) {
        ExperimentRecord rec = base;
        rec.algorithm = d;
        rec.error = tag;
        rec.wall_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        out.push_back(rec);
      }
    }
  };

  std::optional<FilteredLon> filtered;
  try {
    GeneratorConfig gen = cfg.generator;
    gen.n = base.n;
    gen.seed = base.instance_seed;
    gen.cls = job.cls;
    const QapInstance inst = generate(gen);
    const BasinMap bm = enumerate_basins(inst, basin_workers);
    const Lon lon = build_lon(inst, bm, basin_workers);
    filtered = filter_lon(lon, cfg.alpha);
  } catch (const ResourceLimit&) {
    emit_error_rows("resource_limit");
    return out;
  } catch (const std::exception&) {
    emit_error_rows("pipeline_failure");
    return out;
  }
  base.n_optima = filtered->nodes.size();
  base.n_edges_filtered = filtered->graph.edges.size();
  const double prep_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();

  for (Detector d : cfg.algorithms) {
    const std::size_t runs = d == Detector::spinglass ? cfg.spinglass_seeds : 1;
    for (std::size_t r = 0; r < runs; ++r) {
      ExperimentRecord rec = base;
      rec.algorithm = d;
      const auto t0 = Clock::now();
      try {
        const Partition part = d == Detector::greedy
                                   ? greedy_modularity(filtered->graph)
                                   : spinglass_communities(filtered->graph, detector_seed(base.instance_seed, r),
                                                           cfg.spinglass);
        rec.q = part.q;
        rec.n_communities = part.num_communities();
      } catch (const UndefinedModularity&) {
        rec.error = "undefined_modularity";
      } catch (const std::exception&) {
        rec.error = "detector_failure";
      }
      rec.wall_ms = prep_ms + std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
      out.push_back(rec);
    }
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  require(count >= 1, "experiment: count must be at least 1");
  require(!classes.empty(), "experiment: no instance classes");
  require(!algorithms.empty(), "experiment: no algorithms");
  require(alpha >= 0.0 && alpha <= 1.0, "experiment: alpha must lie in [0,1]");
  require(spinglass_seeds >= 1, "experiment: spinglass_seeds must be at least 1");
  for (InstanceClass c : classes) {
    require(c != InstanceClass::external, "experiment: classes must be uniform or real_like");
    require(size_for(c) >= 2, "experiment: instance size must be at least 2");
    if (size_for(c) > kMaxExhaustiveSize)
      throw ResourceLimit("experiment: instance size exceeds the exhaustive limit " + std::to_string(kMaxExhaustiveSize));
  }
  for (Detector d : algorithms) require(d != Detector::external, "experiment: algorithms must be greedy or spinglass");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(offset, eol - offset);
    const std::size_t at = offset;
    offset = eol + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", at);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    try {
      if (key == "classes") {
        cfg.classes.clear();
        for (auto item : split(value, ',')) cfg.classes.push_back(parse_instance_class(item));
      } else if (key == "algorithms") {
        cfg.algorithms.clear();
        for (auto item : split(value, ',')) cfg.algorithms.push_back(parse_detector(item));
      } else if (key == "n") {
        cfg.n_uniform = cfg.n_real_like = parse_number<std::size_t>(value, at);
      } else if (key == "n_uniform") {
        cfg.n_uniform = parse_number<std::size_t>(value, at);
      } else if (key == "n_real_like") {
        cfg.n_real_like = parse_number<std::size_t>(value, at);
      } else if (key == "count") {
        cfg.count = parse_number<std::size_t>(value, at);
      } else if (key == "master_seed") {
        cfg.master_seed = parse_number<std::uint64_t>(value, at);
      } else if (key == "alpha") {
        cfg.alpha = parse_number<double>(value, at);
      } else if (key == "spinglass_seeds") {
        cfg.spinglass_seeds = parse_number<std::size_t>(value, at);
      } else if (key == "workers") {
        cfg.workers = parse_number<std::size_t>(value, at);
      } else if (key == "uniform_max") {
        cfg.generator.uniform_max = parse_number<std::int64_t>(value, at);
      } else if (key == "rl_grid") {
        cfg.generator.rl_grid = parse_number<double>(value, at);
      } else if (key == "rl_exponent") {
        cfg.generator.rl_exponent = parse_number<double>(value, at);
      } else if (key == "rl_sparsity") {
        cfg.generator.rl_sparsity = parse_number<double>(value, at);
      } else if (key == "gamma") {
        cfg.spinglass.gamma = parse_number<double>(value, at);
      } else if (key == "spins") {
        cfg.spinglass.spins = parse_number<std::size_t>(value, at);
      } else if (key == "cooling_factor") {
        cfg.spinglass.schedule.cooling_factor = parse_number<double>(value, at);
      } else if (key == "sweeps_per_temperature") {
        cfg.spinglass.schedule.sweeps_per_temperature = parse_number<std::size_t>(value, at);
      } else if (key == "t_start") {
        cfg.spinglass.schedule.t_start = parse_number<double>(value, at);
      } else if (key == "t_stop") {
        cfg.spinglass.schedule.t_stop = parse_number<double>(value, at);
      } else {
        throw ParseError("unknown key '" + std::string(key) + "'", at);
      }
    } catch (const ContractViolation& e) {
      throw ParseError(e.what(), at);
    }
  }
  return cfg;
}

std::uint64_t instance_seed(std::uint64_t master, InstanceClass cls, std::size_t index) {
  return derive_seed(derive_seed(master, class_slot(cls)), index);
}

std::uint64_t detector_seed(std::uint64_t instance_seed, std::size_t run) { return derive_seed(instance_seed, run); }

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<InstanceJob> jobs;
  for (InstanceClass c : cfg.classes)
    for (std::size_t i = 0; i < cfg.count; ++i) jobs.push_back({c, i});

  const std::size_t workers = std::max<std::size_t>(1, cfg.workers);
  const std::size_t pool = std::min(workers, jobs.size());
  const std::size_t basin_workers = std::max<std::size_t>(1, workers / pool);
  std::vector<std::vector<ExperimentRecord>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) results[j] = run_instance(cfg, jobs[j], basin_workers);
  };
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < pool; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }

  std::vector<ExperimentRecord> records;
  for (auto& r : results) records.insert(records.end(), r.begin(), r.end());
  return records;
}

std::string records_csv(const std::vector<ExperimentRecord>& records, bool with_timing) {
  std::ostringstream out;
  out << "class,n,instance_seed,algorithm,alpha,n_optima,n_edges_filtered,n_communities,q,"
      << (with_timing ? "wall_ms," : "") << "error\n";
  for (const auto& r : records) {
    out << to_string(r.cls) << ',' << r.n << ',' << r.instance_seed << ',' << to_string(r.algorithm) << ','
        << fmt_double(r.alpha, 17) << ',' << r.n_optima << ',' << r.n_edges_filtered << ',' << r.n_communities << ','
        << (r.q ? fmt_double(*r.q, 17) : "") << ',';
    if (with_timing) out << fmt_double(r.wall_ms, 6) << ',';
    out << r.error << '\n';
  }
  return out.str();
}

std::vector<ExperimentRecord> parse_records_csv(std::string_view text) {
  std::vector<ExperimentRecord> records;
  std::size_t offset = 0;
  bool header = true;
  bool timing = true;
  while (offset < text.size()) {
    std::size_t eol = text.find('\n', offset);
    if (eol == std::string_view::npos) eol = text.size();
    const std::string_view line = trim(text.substr(offset, eol - offset));
    const std::size_t at = offset;
    offset = eol + 1;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (header) {
      header = false;
      if (fields.empty() || fields[0] != "class") throw ParseError("records CSV must start with a header row", at);
      timing = std::find(fields.begin(), fields.end(), "wall_ms") != fields.end();
      continue;
    }
    const std::size_t expected = timing ? 11 : 10;
    if (fields.size() != expected) throw ParseError("records row has " + std::to_string(fields.size()) + " fields", at);
    ExperimentRecord r;
    try {
      r.cls = parse_instance_class(fields[0]);
      r.algorithm = parse_detector(fields[3]);
    } catch (const ContractViolation& e) {
      throw ParseError(e.what(), at);
    }
    r.n = parse_number<std::size_t>(fields[1], at);
    r.instance_seed = parse_number<std::uint64_t>(fields[2], at);
    r.alpha = parse_number<double>(fields[4], at);
    r.n_optima = parse_number<std::size_t>(fields[5], at);
    r.n_edges_filtered = parse_number<std::size_t>(fields[6], at);
    r.n_communities = parse_number<std::size_t>(fields[7], at);
    if (!fields[8].empty()) r.q = parse_number<double>(fields[8], at);
    std::size_t next = 9;
    if (timing) r.wall_ms = parse_number<double>(fields[next++], at);
    r.error = std::string(fields[next]);
    records.push_back(std::move(r));
  }
  return records;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
  ExperimentSummary summary;
  const InstanceClass classes[] = {InstanceClass::uniform, InstanceClass::real_like};
  const Detector detectors[] = {Detector::greedy, Detector::spinglass};
  auto values = [&](InstanceClass c, Detector d) {
    std::vector<double> q;
    for (const auto& r : records)
      if (r.cls == c && r.algorithm == d && r.q) q.push_back(*r.q);
    return q;
  };
  for (Detector d : detectors) {
    bool any = false;
    for (const auto& r : records) any = any || r.algorithm == d;
    if (!any) continue;
    for (InstanceClass c : classes) {
      auto q = values(c, d);
      if (q.empty()) {
        summary.warnings.push_back("no Q values for " + std::string(to_string(c)) + "/" + std::string(to_string(d)));
        continue;
      }
      summary.groups.push_back({c, d, five_number_summary(std::move(q))});
    }
    const auto rl = values(InstanceClass::real_like, d);
    const auto uni = values(InstanceClass::uniform, d);
    if (rl.size() < 5 || uni.size() < 5) {
      summary.warnings.push_back("separation test skipped for " + std::string(to_string(d)) +
                                 ": fewer than 5 values in a group");
      continue;
    }
    summary.tests.push_back({d, rl.size(), uni.size(), mann_whitney_greater(rl, uni)});
  }
  return summary;
}

std::string summary_csv(const ExperimentSummary& summary) {
  std::ostringstream out;
  out << "kind,algorithm,class,count,min,q1,median,q3,max,u,p_value,method\n";
  for (const auto& g : summary.groups) {
    const auto& s = g.stats;
    out << "summary," << to_string(g.algorithm) << ',' << to_string(g.cls) << ',' << s.count << ','
        << fmt_double(s.min, 12) << ',' << fmt_double(s.q1, 12) << ',' << fmt_double(s.median, 12) << ','
        << fmt_double(s.q3, 12) << ',' << fmt_double(s.max, 12) << ",,,\n";
  }
  for (const auto& t : summary.tests) {
    out << "mann_whitney," << to_string(t.algorithm) << ",real_like>uniform," << (t.n_real_like + t.n_uniform)
        << ",,,,,," << fmt_double(t.result.u, 12) << ',' << fmt_double(t.result.p_value, 12) << ','
        << (t.result.exact ? "exact" : "normal") << '\n';
  }
  return out.str();
}

}  // namespace lonqap
