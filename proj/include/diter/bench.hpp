#pragma once

// Command-line front end: single runs, graph statistics, suites, and the
// plot-data emitters. Everything writes CSV with a header row.

#include <charconv>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "diter/cost_model.hpp"
#include "diter/edge_list.hpp"
#include "diter/graph.hpp"
#include "diter/operator.hpp"
#include "diter/solver.hpp"
#include "diter/synthetic.hpp"

namespace diter::bench {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitStalled = 2;

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// "1/N", "0.01/N" or a plain number; N is the node count after truncation.
inline double resolve_target(std::string_view expr, std::size_t n) {
  std::string_view head = expr;
  bool per_node = false;
  if (const auto slash = expr.find('/'); slash != std::string_view::npos) {
    if (expr.substr(slash + 1) != "N" && expr.substr(slash + 1) != "n")
      throw UsageError("target must be a number or <number>/N: " + std::string(expr));
    head = expr.substr(0, slash);
    per_node = true;
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), value);
  if (ec != std::errc{} || ptr != head.data() + head.size() || !(value > 0.0))
    throw UsageError("invalid target: " + std::string(expr));
  if (per_node) {
    if (n == 0) throw UsageError("target relative to N on an empty graph");
    value /= static_cast<double>(n);
  }
  return value;
}

/// Fixed 4 decimals with trailing zeros trimmed down to one: 1.0, 0.3333.
inline std::string ratio_string(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  std::string s = os.str();
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

struct RunConfig {
  std::filesystem::path graph_path;
  std::optional<std::size_t> limit_n;
  double d = 0.0;
  std::string target = "1/N";
  Algorithm algorithm = Algorithm::pi;
  std::uint64_t m = 0;
  bool transpose = false;
  bool diag_elim = true;
  bool include_indirect = true;
};

inline constexpr std::string_view kRunHeader =
    "algo,n,l,d,target,m,transpose,diag_elim,nb_iter,entry_ops,diffusions,wall_ms,final_error,"
    "checksum,status";

struct RunRow {
  RunConfig config;
  std::size_t n = 0;
  std::size_t l = 0;
  double target = 0.0;
  RunResult result;
  std::string status;
};

inline void write_run_row(std::ostream& out, const RunRow& row) {
  const auto& r = row.result;
  out << std::setprecision(12) << to_string(row.config.algorithm) << ',' << row.n << ','
      << row.l << ',' << row.config.d << ',' << row.target << ',' << row.config.m << ','
      << (row.config.transpose ? 1 : 0) << ',' << (r.diag_elim ? 1 : 0) << ',' << r.nb_iter
      << ',' << r.entry_ops << ',' << r.diffusions << ',' << std::setprecision(6) << r.wall_ms
      << ',' << std::setprecision(12) << r.final_error << ',' << std::setprecision(17)
      << r.checksum << ',' << row.status << '\n';
}

inline constexpr std::string_view kTraceHeader = "algo,cycle,entry_ops,nb_iter,corrected_error,elapsed_ms";

inline void write_trace(std::ostream& out, Algorithm algo, const std::vector<TraceRecord>& trace,
                        std::string_view prefix = {}) {
  for (const auto& t : trace) {
    out << prefix << to_string(algo) << ',' << t.cycle << ',' << t.entry_ops << ',' << std::setprecision(12)
        << t.nb_iter << ',' << t.corrected_error << ',' << std::setprecision(6) << t.elapsed_ms
        << '\n';
  }
}

inline Graph load_graph(const std::filesystem::path& path, std::optional<std::size_t> limit_n,
                        bool transposed) {
  Graph g = load_edge_list(path, limit_n);
  return transposed ? transpose(g) : g;
}

/// Runs one configuration on an already loaded (and possibly transposed) graph.
inline RunRow execute(const RunConfig& cfg, const Graph& g, std::vector<TraceRecord>* trace) {
  RunRow row;
  row.config = cfg;
  row.n = g.num_nodes();
  row.l = g.num_edges();
  row.target = resolve_target(cfg.target, row.n);
  const auto op = build_operator(g, cfg.d);
  CostModel cost(cfg.m);
  SolverOptions opt;
  opt.algorithm = cfg.algorithm;
  opt.target = row.target;
  opt.diag_elim = cfg.diag_elim;
  opt.include_indirect = cfg.include_indirect;
  row.result = run_solver(op, opt, cost, trace);
  row.status = row.result.status == RunStatus::converged ? "converged" : "stalled";
  return row;
}

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

inline std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& ids) {
  std::vector<Algorithm> out;
  for (const auto& id : ids) {
    auto a = parse_algorithm(id);
    if (!a) throw UsageError("unknown algorithm: " + id);
    out.push_back(*a);
  }
  if (out.empty()) throw UsageError("no algorithm given");
  return out;
}

/// One CSV row per algorithm; optional per-cycle trace.
inline int run_cli(const RunConfig& base, const std::vector<Algorithm>& algorithms,
                   const std::string& out_path, const std::string& trace_path, std::ostream& out,
                   std::ostream& err) {
  if (!(base.d > 0.0 && base.d < 1.0)) throw UsageError("--d must lie in (0, 1)");
  const Graph g = load_graph(base.graph_path, base.limit_n, base.transpose);
  OutputSink sink(out_path, out);
  std::optional<OutputSink> trace_sink;
  if (!trace_path.empty()) {
    trace_sink.emplace(trace_path, out);
    trace_sink->stream() << kTraceHeader << '\n';
  }
  sink.stream() << kRunHeader << '\n';
  int code = kExitOk;
  for (Algorithm a : algorithms) {
    RunConfig cfg = base;
    cfg.algorithm = a;
    std::vector<TraceRecord> trace;
    const RunRow row = execute(cfg, g, trace_sink ? &trace : nullptr);
    write_run_row(sink.stream(), row);
    if (trace_sink) write_trace(trace_sink->stream(), a, trace);
    if (row.result.status != RunStatus::converged) {
      err << to_string(a) << ": " << row.result.diagnostic << '\n';
      code = kExitStalled;
    }
  }
  return code;
}

inline constexpr std::string_view kStatsHeader =
    "n,l,l_per_n,d_per_n,e_per_n,o_per_n,max_in,max_out";

inline void write_stats_row(std::ostream& out, const GraphStats& s) {
  const double n = s.n == 0 ? 1.0 : static_cast<double>(s.n);
  out << s.n << ',' << s.l << ',' << ratio_string(static_cast<double>(s.l) / n) << ','
      << ratio_string(static_cast<double>(s.d_count) / n) << ','
      << ratio_string(static_cast<double>(s.e_count) / n) << ','
      << ratio_string(static_cast<double>(s.o_count) / n) << ',' << s.max_in << ',' << s.max_out
      << '\n';
}

inline int stats_cli(const std::filesystem::path& graph_path, std::optional<std::size_t> limit_n,
                     bool transposed, const std::string& out_path, std::ostream& out) {
  const Graph g = load_graph(graph_path, limit_n, transposed);
  OutputSink sink(out_path, out);
  sink.stream() << kStatsHeader << '\n';
  write_stats_row(sink.stream(), compute_stats(g));
  return kExitOk;
}

/**
 * Suite file (JSON):
 *   { "graph": "edges.txt", "n": 10000, "d": 0.85, "target": "1/N",
 *     "algorithms": ["pi", "gs", "di-cyc"], "orientations": ["P", "Pt"],
 *     "m": [0, 1000], "diag_elim": true }
 * A relative graph path is resolved against the suite file's directory.
 * Emits one row per algorithm x orientation x m, plus an orientation column.
 */
inline int suite_cli(const std::filesystem::path& suite_path, const std::string& out_path,
                     const std::string& trace_path, std::ostream& out, std::ostream& err) {
  std::ifstream in(suite_path);
  if (!in) throw std::runtime_error("cannot open suite file " + suite_path.string());
  nlohmann::json spec;
  try {
    spec = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("suite file: ") + e.what());
  }

  RunConfig base;
  try {
    std::filesystem::path graph = spec.at("graph").get<std::string>();
    base.graph_path = graph.is_relative() ? suite_path.parent_path() / graph : graph;
    if (spec.contains("n")) base.limit_n = spec.at("n").get<std::size_t>();
    base.d = spec.at("d").get<double>();
    base.target = spec.value("target", std::string("1/N"));
    base.diag_elim = spec.value("diag_elim", true);
    base.include_indirect = spec.value("include_indirect", true);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("suite file: ") + e.what());
  }
  if (!(base.d > 0.0 && base.d < 1.0)) throw UsageError("suite d must lie in (0, 1)");

  const auto algorithms =
      parse_algorithms(spec.value("algorithms", std::vector<std::string>{}));
  const auto orientations =
      spec.value("orientations", std::vector<std::string>{"P"});
  const auto costs = spec.value("m", std::vector<std::uint64_t>{0});
  for (const auto& o : orientations)
    if (o != "P" && o != "Pt") throw UsageError("orientation must be P or Pt: " + o);
  if (costs.empty()) throw UsageError("suite m list is empty");

  OutputSink sink(out_path, out);
  std::optional<OutputSink> trace_sink;
  if (!trace_path.empty()) {
    trace_sink.emplace(trace_path, out);
    trace_sink->stream() << "orientation,m," << kTraceHeader << '\n';
  }
  sink.stream() << "orientation," << kRunHeader << '\n';
  int code = kExitOk;
  for (const auto& o : orientations) {
    RunConfig oriented = base;
    oriented.transpose = o == "Pt";
    const Graph g = load_graph(oriented.graph_path, oriented.limit_n, oriented.transpose);
    for (std::uint64_t m : costs) {
      for (Algorithm a : algorithms) {
        RunConfig cfg = oriented;
        cfg.m = m;
        cfg.algorithm = a;
        std::vector<TraceRecord> trace;
        RunRow row;
        try {
          row = execute(cfg, g, trace_sink ? &trace : nullptr);
        } catch (const std::exception& e) {
          row.config = cfg;
          row.n = g.num_nodes();
          row.l = g.num_edges();
          row.status = "error";
          err << to_string(a) << ": " << e.what() << '\n';
        }
        sink.stream() << o << ',';
        write_run_row(sink.stream(), row);
        if (trace_sink)
          write_trace(trace_sink->stream(), a, trace, o + ',' + std::to_string(m) + ',');
        if (row.status != "converged") code = kExitStalled;
      }
    }
  }
  return code;
}

/**
 * Entry point behind the diter_bench binary. Returns the process exit code:
 * 0 converged, 2 non-convergence, 1 usage or I/O error.
 */
inline int main_cli(int argc, const char* const* argv, std::ostream& out = std::cout,
                    std::ostream& err = std::cerr) {
  CLI::App app{"D-iteration PageRank solvers and benchmark harness"};
  std::string graph_path, target = "1/N", trace_path, out_path, suite_path, profile_path;
  std::optional<std::size_t> limit_n, edge_sample, microbench, generate;
  std::optional<double> d;
  std::vector<std::string> algos;
  std::uint64_t m = 0, seed = 1;
  bool transpose = false, keep_diag = false, diag_elim = false, stats = false, exclude_indirect = false;

  app.add_option("--graph", graph_path, "edge-list file");
  app.add_option("--n", limit_n, "keep only the first N nodes");
  app.add_option("--d", d, "damping factor in (0, 1)");
  app.add_option("--target", target, "error target: number or <number>/N")->capture_default_str();
  app.add_option("--algo", algos, "algorithm id(s): pi gs gsp di-cyc di-max di-max2 di-op di-op2 di-op3 di-sop")
      ->delimiter(',');
  app.add_option("--m", m, "synthetic iterations per matrix entry use")->capture_default_str();
  app.add_flag("--transpose", transpose, "run on the transposed matrix");
  auto* elim = app.add_flag("--diag-elim", diag_elim, "diagonal term elimination (default)");
  app.add_flag("--keep-diag", keep_diag, "keep diagonal terms")->excludes(elim);
  app.add_option("--trace", trace_path, "per-cycle trace CSV");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", seed, "seed for sampling and generation")->capture_default_str();
  app.add_flag("--stats", stats, "emit graph statistics");
  app.add_option("--suite", suite_path, "JSON suite file");
  app.add_flag("--exclude-indirect", exclude_indirect,
               "leave convergence tests and tracing out of the timed region");
  app.add_option("--degree-profile", profile_path, "write per-node degree CSV");
  app.add_option("--edge-sample", edge_sample, "emit K uniformly sampled edges as CSV");
  app.add_option("--microbench", microbench, "line vs column iterator benchmark, REPEATS passes");
  app.add_option("--generate", generate, "write a synthetic power-law edge list with N nodes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (!suite_path.empty()) return suite_cli(suite_path, out_path, trace_path, out, err);

    if (generate) {
      PowerLawOptions opt;
      opt.n = *generate;
      opt.seed = seed;
      OutputSink sink(out_path, out);
      write_edge_list(sink.stream(), power_law_graph(opt));
      return kExitOk;
    }

    if (graph_path.empty()) throw UsageError("--graph is required");

    if (stats) return stats_cli(graph_path, limit_n, transpose, out_path, out);

    if (!profile_path.empty() || edge_sample || microbench) {
      const Graph g = load_graph(graph_path, limit_n, transpose);
      if (!profile_path.empty()) {
        OutputSink sink(profile_path, out);
        write_degree_profile_csv(sink.stream(), degree_profile(g));
      }
      if (edge_sample) {
        OutputSink sink(out_path, out);
        write_edges_csv(sink.stream(), emit_edge_sample(g, *edge_sample, seed));
      }
      if (microbench) {
        if (*microbench == 0) throw UsageError("--microbench needs at least one repeat");
        OutputSink sink(out_path, out);
        sink.stream() << "orientation,repeats,touched,checksum,wall_ms\n";
        for (auto o : {Orientation::line, Orientation::column}) {
          const auto r = iterator_microbench(g, o, *microbench);
          sink.stream() << (o == Orientation::line ? "line" : "column") << ',' << *microbench
                        << ',' << r.touched << ',' << std::setprecision(17) << r.checksum << ','
                        << std::setprecision(6) << r.wall_ms << '\n';
        }
      }
      return kExitOk;
    }

    if (!d) throw UsageError("--d is required");
    RunConfig cfg;
    cfg.graph_path = graph_path;
    cfg.limit_n = limit_n;
    cfg.d = *d;
    cfg.target = target;
    cfg.m = m;
    cfg.transpose = transpose;
    cfg.diag_elim = !keep_diag;
    cfg.include_indirect = !exclude_indirect;
    return run_cli(cfg, parse_algorithms(algos), out_path, trace_path, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace diter::bench
