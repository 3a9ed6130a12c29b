// SPDX-License-Identifier: Apache-2.0
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "lanematch/runner.hpp"

namespace lm = lanematch;

namespace {

struct RunFlags {
  lm::RunConfig config = [] {
    lm::RunConfig c;
    c.workers = 0;
    return c;
  }();
  std::string engine = "fine";
  std::string steal = "on";
  std::string filter = "label-degree";
  std::string select = "min";
  std::string memory_budget;
  std::string report = "json";
  std::string report_path;
  std::string events = "off";
  std::string events_path = "events.csv";
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  auto& c = f.config;
  cmd->add_option("--data", c.data, "Data graph file (edge list or binary)")->required();
  cmd->add_option("--data-labels", c.data_labels, "Vertex label file for a text data graph");
  cmd->add_option("--query", c.query, "Query graph file");
  cmd->add_option("--query-labels", c.query_labels, "Vertex label file for the query");
  cmd->add_option("--query-size", c.query_size,
                  "Draw a random query of this many vertices instead of --query");
  cmd->add_option("--engine", f.engine, "coarse or fine")
      ->check(CLI::IsMember({"coarse", "fine"}))
      ->default_val("fine");
  cmd->add_option("--unroll", c.sigma, "Coarse engine unrolling factor")
      ->check(CLI::IsMember({1, 2, 4, 8}))
      ->default_val(1);
  cmd->add_option("--lane-width", c.lane_width, "Lanes per simulated warp")
      ->check(CLI::IsMember({8, 16, 32, 64}))
      ->default_val(32);
  cmd->add_option("--tau", c.tau, "Initial pool threshold")
      ->check(CLI::PositiveNumber)
      ->default_val(1000000);
  cmd->add_option("--workers", c.workers, "Worker threads (default: hardware threads)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--steal", f.steal, "Work stealing for the fine engine")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("on");
  cmd->add_option("--seed", c.seed, "Seed for random queries")->default_val(0);
  cmd->add_option("--mode", c.mode, "count or list:<path>")->default_val("count");
  cmd->add_option("--order", c.order, "auto or file:<path>")->default_val("auto");
  cmd->add_option("--filter", f.filter, "label or label-degree")
      ->check(CLI::IsMember({"label", "label-degree"}))
      ->default_val("label-degree");
  cmd->add_option("--select", f.select, "Coarse local candidate set: min or first")
      ->check(CLI::IsMember({"min", "first"}))
      ->default_val("min");
  cmd->add_option("--timeout", c.timeout_seconds, "Seconds before the run stops (0 = none)")
      ->check(CLI::NonNegativeNumber)
      ->default_val(60.0);
  cmd->add_option("--memory-budget", f.memory_budget,
                  "Bytes (K/M/G suffix); default $LANEMATCH_MEMORY_BUDGET or 4G");
  cmd->add_option("--report", f.report, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_val("json");
  cmd->add_option("--report-path", f.report_path, "Write the report here instead of stdout");
  cmd->add_option("--events", f.events, "Dump raw batch events")
      ->check(CLI::IsMember({"on", "off"}))
      ->default_val("off");
  cmd->add_option("--events-path", f.events_path, "CSV file for --events on")
      ->default_val("events.csv");
}

void finish_run_flags(RunFlags& f) {
  auto& c = f.config;
  if (c.workers == 0) c.workers = std::max(1U, std::thread::hardware_concurrency());
  c.engine = lm::parse_engine(f.engine);
  c.steal = f.steal == "on";
  c.filter = lm::parse_filter(f.filter);
  c.select = lm::parse_select(f.select);
  c.events_path = f.events == "on" ? f.events_path : std::string();
  c.memory_budget = f.memory_budget.empty() ? 0 : lm::parse_byte_size(f.memory_budget);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw lm::ConfigError("cannot open " + path);
  out << text;
}

int cmd_run(RunFlags& f) {
  finish_run_flags(f);
  const lm::RunReport report = lm::run_pipeline(f.config);
  write_output(f.report_path, lm::emit_report(report, lm::parse_report_format(f.report)));
  if (report.status != "ok") std::cerr << "lanematch: " << report.status << ": " << report.message << '\n';
  return lm::exit_code_for(report.status);
}

std::vector<std::uint64_t> parse_values(const std::string& text) {
  std::vector<std::uint64_t> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      values.push_back(std::stoull(item));
    } catch (const std::exception&) {
      throw lm::ConfigError("invalid sweep value \"" + item + "\"");
    }
  }
  return values;
}

int cmd_sweep(RunFlags& f, const std::string& axis, const std::string& values) {
  finish_run_flags(f);
  const auto rows = lm::sweep(f.config, lm::parse_sweep_axis(axis), parse_values(values));
  write_output(f.report_path, lm::sweep_csv(rows));
  for (const auto& r : rows) {
    if (r.status != "ok") return lm::exit_code_for(r.status);
  }
  return lm::kExitOk;
}

int cmd_verify(const lm::VerifyOptions& options, bool verbose) {
  const auto summary = lm::verify(options, [&](const lm::VerifyRow& row) {
    if (verbose || !row.agree()) {
      std::cout << (row.agree() ? "ok       " : "MISMATCH ") << row.name << " oracle=" << *row.oracle
                << " fine=" << row.fine << " coarse1=" << row.coarse_sigma1
                << " coarse4=" << row.coarse_sigma4 << '\n';
    }
  });
  std::cout << summary.rows.size() << " instances, " << summary.mismatches << " mismatches, "
            << summary.skipped << " skipped (oracle step limit)\n";
  return summary.mismatches == 0 ? lm::kExitOk : lm::kExitMismatch;
}

struct GenQueryFlags {
  std::string data;
  std::string data_labels;
  std::size_t size = 4;
  std::uint64_t seed = 0;
  std::size_t count = 1;
  std::string output = "query_";
};

int cmd_gen_query(const GenQueryFlags& f) {
  const lm::Graph data = lm::load_graph(
      f.data, f.data_labels.empty() ? std::nullopt : std::optional<std::filesystem::path>(f.data_labels));
  for (std::size_t i = 0; i < f.count; ++i) {
    const lm::QueryGraph q = lm::random_query(data, f.size, f.seed + i);
    const std::string stem = f.output + std::to_string(f.seed + i);
    lm::save_text(q.graph(), stem + ".txt", std::filesystem::path(stem + ".labels"));
    std::cout << stem << ".txt\n";
  }
  return lm::kExitOk;
}

struct GenFlags {
  std::string kind;
  std::uint64_t n = 1U << 14;
  std::uint64_t m = 1U << 17;
  double a = 0.57, b = 0.19, c = 0.19, d = 0.05;
  double p = 0.1;
  std::uint32_t attach = 4;
  std::uint32_t labels = 1;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  std::string output;
  std::string labels_output;
  std::string format = "text";
};

int cmd_gen(const GenFlags& f) {
  lm::Graph g;
  if (f.kind == "rmat") {
    g = lm::rmat({.n = f.n, .m = f.m, .a = f.a, .b = f.b, .c = f.c, .d = f.d}, f.seed);
  } else if (f.kind == "er") {
    g = lm::erdos_renyi(f.n, f.p, f.seed);
  } else if (f.kind == "star") {
    g = lm::star(f.n);
  } else if (f.kind == "powerlaw") {
    g = lm::powerlaw(f.n, f.attach, f.seed);
  } else {
    g = lm::skewed_fixture();
  }
  if (f.labels > 1) g = lm::relabel_zipf(g, f.labels, f.alpha, f.seed ^ 0x5bd1e995ULL);
  if (f.format == "binary") {
    lm::save_binary(g, f.output);
  } else {
    std::optional<std::filesystem::path> labels;
    if (!f.labels_output.empty()) {
      labels = f.labels_output;
    } else if (g.label_count() > 1) {
      labels = f.output + ".labels";
    }
    lm::save_text(g, f.output, labels);
  }
  if (f.kind == "skew") {
    const std::string query = f.output + ".query.txt";
    lm::save_text(lm::skewed_query().graph(), query, std::filesystem::path(query + ".labels"));
    std::cout << query << '\n';
  }
  const auto stats = lm::degree_stats(g);
  std::cout << f.output << ": " << g.num_vertices() << " vertices, " << g.num_edges()
            << " edges, d_max " << stats.d_max << '\n';
  return lm::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lanematch: lane-batched subgraph matching on CPU", "lanematch"};
  app.require_subcommand(1);

  RunFlags run_flags;
  auto* run = app.add_subcommand("run", "Match one query against one data graph");
  add_run_flags(run, run_flags);

  RunFlags sweep_flags;
  std::string axis;
  std::string values;
  auto* sweep = app.add_subcommand("sweep", "Repeat a run over tau, sigma or workers (CSV)");
  add_run_flags(sweep, sweep_flags);
  sweep->add_option("--axis", axis, "tau, sigma or workers")
      ->required()
      ->check(CLI::IsMember({"tau", "sigma", "workers"}));
  sweep->add_option("--values", values, "Comma-separated values")->required();

  lm::VerifyOptions verify_options;
  bool verbose = false;
  auto* verify = app.add_subcommand("verify", "Compare both engines with the oracle");
  verify->add_option("--instances", verify_options.instances, "Instances with a finished oracle")
      ->default_val(1000);
  verify->add_option("--seed", verify_options.seed, "Matrix seed")->default_val(1);
  verify->add_option("--workers", verify_options.workers, "Workers for the fine engine")
      ->check(CLI::PositiveNumber)
      ->default_val(2);
  verify->add_option("--oracle-steps", verify_options.oracle_step_limit,
                     "Oracle assignment budget per instance")
      ->default_val(50000000);
  verify->add_flag("--verbose", verbose, "Print every instance");

  GenQueryFlags gq;
  auto* gen_query = app.add_subcommand("gen-query", "Draw random connected queries from a data graph");
  gen_query->add_option("--data", gq.data, "Data graph file")->required();
  gen_query->add_option("--data-labels", gq.data_labels, "Vertex label file");
  gen_query->add_option("--size", gq.size, "Query vertices")->default_val(4);
  gen_query->add_option("--seed", gq.seed, "Seed of the first query")->default_val(0);
  gen_query->add_option("--count", gq.count, "Number of queries")->default_val(1);
  gen_query->add_option("--output", gq.output, "Path prefix; writes <prefix><seed>.txt/.labels")
      ->default_val("query_");

  GenFlags gf;
  auto* gen = app.add_subcommand("gen", "Generate a synthetic data graph");
  gen->add_option("kind", gf.kind, "rmat, er, star, powerlaw or skew")
      ->required()
      ->check(CLI::IsMember({"rmat", "er", "star", "powerlaw", "skew"}));
  gen->add_option("--n", gf.n, "Vertices")->default_val(1U << 14);
  gen->add_option("--m", gf.m, "Edges (rmat)")->default_val(1U << 17);
  gen->add_option("--a", gf.a, "Quadrant probability a (rmat)")->default_val(0.57);
  gen->add_option("--b", gf.b, "Quadrant probability b (rmat)")->default_val(0.19);
  gen->add_option("--c", gf.c, "Quadrant probability c (rmat)")->default_val(0.19);
  gen->add_option("--d", gf.d, "Quadrant probability d (rmat)")->default_val(0.05);
  gen->add_option("--p", gf.p, "Edge probability (er)")->default_val(0.1);
  gen->add_option("--attach", gf.attach, "Edges per new vertex (powerlaw)")->default_val(4);
  gen->add_option("--labels", gf.labels, "Relabel with this many labels")->default_val(1);
  gen->add_option("--alpha", gf.alpha, "Zipf exponent for relabeling")->default_val(0.0);
  gen->add_option("--seed", gf.seed, "Generator seed")->default_val(0);
  gen->add_option("--output", gf.output, "Output graph file")->required();
  gen->add_option("--labels-output", gf.labels_output, "Output label file (text format)");
  gen->add_option("--format", gf.format, "text or binary")
      ->check(CLI::IsMember({"text", "binary"}))
      ->default_val("text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? lm::kExitOk : lm::kExitInputError;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, axis, values);
    if (verify->parsed()) return cmd_verify(verify_options, verbose);
    if (gen_query->parsed()) return cmd_gen_query(gq);
    if (gen->parsed()) return cmd_gen(gf);
  } catch (const lm::Error& e) {
    std::cerr << "lanematch: " << e.what() << '\n';
    return lm::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "lanematch: " << e.what() << '\n';
    return lm::kExitFailure;
  }
  return lm::kExitFailure;
}
