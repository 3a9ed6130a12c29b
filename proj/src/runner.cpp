// SPDX-License-Identifier: Apache-2.0
#include "lanematch/runner.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "lanematch/oracle.hpp"
#include "lanematch/rng.hpp"

namespace lanematch {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kDefaultBudget = std::uint64_t{4} << 30;

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.compare(0, prefix.size(), prefix) == 0;
}

std::optional<Clock::time_point> deadline_for(double timeout_seconds) {
  if (timeout_seconds <= 0.0) return std::nullopt;
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(
                            std::chrono::duration<double>(timeout_seconds));
}

void write_events_csv(const std::string& path, const std::vector<BatchEvent>& events) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open events file " + path);
  out << "group,level,active,width,engine\n";
  for (const auto& e : events) {
    out << e.group << ',' << static_cast<unsigned>(e.level) << ',' << e.active << ',' << e.width
        << ',' << to_string(e.engine) << '\n';
  }
}

}  // namespace

int exit_code_for(const std::string& status) noexcept {
  if (status == "ok") return kExitOk;
  if (status == "input_error") return kExitInputError;
  if (status == "timeout") return kExitTimeout;
  if (status == "memory_cap") return kExitMemoryCap;
  return kExitFailure;
}

std::uint64_t parse_byte_size(const std::string& text) {
  std::size_t used = 0;
  unsigned long long value = 0;
  try {
    value = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("invalid byte size \"" + text + "\"");
  }
  const std::string suffix = text.substr(used);
  int shift = 0;
  if (suffix.empty()) {
    shift = 0;
  } else if (suffix == "K" || suffix == "k") {
    shift = 10;
  } else if (suffix == "M" || suffix == "m") {
    shift = 20;
  } else if (suffix == "G" || suffix == "g") {
    shift = 30;
  } else {
    throw ConfigError("invalid byte size suffix in \"" + text + "\"");
  }
  return static_cast<std::uint64_t>(value) << shift;
}

std::uint64_t default_memory_budget() {
  const char* env = std::getenv("LANEMATCH_MEMORY_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  return parse_byte_size(env);
}

std::string to_string(CandidateFilter::Mode mode) {
  return mode == CandidateFilter::Mode::kLabel ? "label" : "label-degree";
}

CandidateFilter::Mode parse_filter(const std::string& name) {
  if (name == "label") return CandidateFilter::Mode::kLabel;
  if (name == "label-degree") return CandidateFilter::Mode::kLabelDegree;
  throw ConfigError("unknown filter \"" + name + "\" (expected label or label-degree)");
}

std::string to_string(LocalCandidateRule rule) {
  return rule == LocalCandidateRule::kFewestNeighbors ? "min" : "first";
}

LocalCandidateRule parse_select(const std::string& name) {
  if (name == "min") return LocalCandidateRule::kFewestNeighbors;
  if (name == "first") return LocalCandidateRule::kFirstBackward;
  throw ConfigError("unknown candidate selection \"" + name + "\" (expected min or first)");
}

void RunConfig::validate() const {
  if (lane_width != 8 && lane_width != 16 && lane_width != 32 && lane_width != 64) {
    throw ConfigError("lane width must be one of 8, 16, 32, 64");
  }
  if (sigma != 1 && sigma != 2 && sigma != 4 && sigma != 8) {
    throw ConfigError("unroll factor must be one of 1, 2, 4, 8");
  }
  if (tau == 0) throw ConfigError("tau must be at least 1");
  if (workers == 0) throw ConfigError("at least one worker is required");
  if (mode != "count" && !(starts_with(mode, "list:") && mode.size() > 5)) {
    throw ConfigError("mode must be count or list:<path>");
  }
  if (order != "auto" && !(starts_with(order, "file:") && order.size() > 5)) {
    throw ConfigError("order must be auto or file:<path>");
  }
  if (timeout_seconds < 0.0) throw ConfigError("timeout must not be negative");
  if (select == LocalCandidateRule::kFirstBackward && engine == EngineKind::kFine) {
    throw ConfigError("--select first applies to the coarse engine only");
  }
}

ReportConfig RunConfig::echo() const {
  ReportConfig c;
  c.engine = std::string(to_string(engine));
  c.data = data;
  c.query = query.empty() && query_size > 0 ? "random:" + std::to_string(query_size) : query;
  c.order = order;
  c.tau = tau;
  c.lane_width = static_cast<std::uint32_t>(lane_width);
  c.sigma = sigma;
  c.workers = static_cast<std::uint32_t>(workers);
  c.steal = steal;
  c.seed = seed;
  c.mode = mode;
  c.filter = to_string(filter);
  c.select = to_string(select);
  c.timeout_seconds = timeout_seconds;
  c.memory_budget = memory_budget == 0 ? default_memory_budget() : memory_budget;
  return c;
}

RunReport run_instance(const Graph& data, const QueryGraph& query, const MatchingOrder& order,
                       const RunConfig& config, MatchSink* sink, std::vector<BatchEvent>* events) {
  config.validate();
  const auto deadline = deadline_for(config.timeout_seconds);
  RunReport r;
  r.config = config.echo();
  r.query_vertices = query.size();
  r.data_vertices = data.num_vertices();
  r.data_edges = data.num_edges();
  r.d_max = data.d_max();
  r.stack_entry_bytes = kStackEntryBytes;
  r.stack_bytes_fine = stack_bytes_fine(query.size(), config.lane_width);
  const auto coarse = stack_bytes_coarse(query.size(), data.d_max(), config.sigma);
  r.stack_bytes_coarse = coarse.candidates;
  r.stack_overhead_coarse = coarse.overhead;

  const CandidateFilter filter(query, order, data, config.filter);
  const SearchContext ctx{data, query, order, filter};

  InitialPool init = build_initial_pool(ctx, config.tau, r.config.memory_budget / 4, deadline);
  r.init_seconds = init.seconds;
  if (init.complete) {
    const BfsResult& done = *init.complete;
    r.solved_in_init = true;
    r.match_count = done.size();
    r.pool_size = done.size();
    r.pool_depth = done.depth;
    if (sink != nullptr) {
      for (std::uint64_t i = 0; i < done.size(); ++i) sink->emit(done.item(i));
    }
    if (events != nullptr) events->clear();
    return r;
  }

  TaskPool& pool = *init.pool;
  r.pool_size = pool.size();
  r.pool_depth = pool.depth();

  ParallelConfig pc;
  pc.engine = config.engine;
  pc.workers = config.workers;
  pc.lane_width = config.lane_width;
  pc.sigma = config.sigma;
  pc.steal = config.steal;
  pc.rule = config.select;
  pc.keep_events = events != nullptr;
  pc.deadline = deadline;
  ParallelResult p = run_parallel(ctx, pool, pc, sink);

  r.search_seconds = p.seconds;
  r.match_count = p.matches;
  r.idle_rate = p.events.idle_rate();
  r.batch_rounds = p.events.rounds();
  r.active_lanes = p.events.active_lanes();
  r.steals = p.steals;
  for (const auto& w : p.workers) {
    r.workers.push_back({w.busy_seconds, w.busy_wall_seconds, w.matches, w.pool_items,
                         w.steals_received, w.splits_given, w.batch_rounds});
  }
  r.imbalance = busy_imbalance(r.workers);
  if (p.timed_out) {
    r.status = "timeout";
    r.message = "search stopped at the deadline; match_count is partial";
  }
  if (events != nullptr) *events = p.events.events();
  return r;
}

RunReport run_pipeline(const RunConfig& config) {
  RunReport r;
  try {
    r.config = config.echo();
    config.validate();
    const auto labels = [](const std::string& p) {
      return p.empty() ? std::nullopt : std::optional<std::filesystem::path>(p);
    };
    const Graph data = load_graph(config.data, labels(config.data_labels));
    std::optional<QueryGraph> query;
    if (!config.query.empty()) {
      query.emplace(load_query(config.query, labels(config.query_labels)));
    } else if (config.query_size > 0) {
      query.emplace(random_query(data, config.query_size, config.seed));
    } else {
      throw ConfigError("either a query file or a random query size is required");
    }
    const MatchingOrder order = config.order == "auto"
                                    ? generate_order(*query)
                                    : make_order(*query, load_order_file(config.order.substr(5)));

    std::ofstream list_out;
    std::optional<MatchWriter> writer;
    if (starts_with(config.mode, "list:")) {
      list_out.open(config.mode.substr(5));
      if (!list_out) throw ConfigError("cannot open match list " + config.mode.substr(5));
      writer.emplace(list_out, order, data);
    }
    std::vector<BatchEvent> events;
    r = run_instance(data, *query, order, config, writer ? &*writer : nullptr,
                     config.events_path.empty() ? nullptr : &events);
    if (!config.events_path.empty()) write_events_csv(config.events_path, events);
  } catch (const TimeoutError& e) {
    r.status = "timeout";
    r.message = e.what();
  } catch (const MemoryCapError& e) {
    r.status = "memory_cap";
    r.message = e.what();
  } catch (const ParseError& e) {
    r.status = "input_error";
    r.message = e.what();
  } catch (const RangeError& e) {
    r.status = "input_error";
    r.message = e.what();
  } catch (const FormatError& e) {
    r.status = "input_error";
    r.message = e.what();
  } catch (const IoError& e) {
    r.status = "input_error";
    r.message = e.what();
  } catch (const QueryError& e) {
    r.status = "input_error";
    r.message = e.what();
  } catch (const ConfigError& e) {
    r.status = "input_error";
    r.message = e.what();
  } catch (const std::exception& e) {
    r.status = "error";
    r.message = e.what();
  }
  return r;
}

SweepAxis parse_sweep_axis(const std::string& name) {
  if (name == "tau") return SweepAxis::kTau;
  if (name == "sigma") return SweepAxis::kSigma;
  if (name == "workers") return SweepAxis::kWorkers;
  throw ConfigError("unknown sweep axis \"" + name + "\" (expected tau, sigma or workers)");
}

std::vector<RunReport> sweep(const RunConfig& base, SweepAxis axis,
                             const std::vector<std::uint64_t>& values) {
  if (values.empty()) throw ConfigError("sweep needs at least one value");
  std::vector<RunReport> rows;
  for (std::uint64_t value : values) {
    RunConfig c = base;
    switch (axis) {
      case SweepAxis::kTau:
        c.tau = value;
        break;
      case SweepAxis::kSigma:
        c.sigma = static_cast<unsigned>(value);
        break;
      case SweepAxis::kWorkers:
        c.workers = static_cast<std::size_t>(value);
        break;
    }
    rows.push_back(run_pipeline(c));
  }
  return rows;
}

std::string sweep_csv(const std::vector<RunReport>& rows) {
  std::string out = report_csv_header() + "\n";
  for (const auto& r : rows) out += report_csv_row(r) + "\n";
  return out;
}

Instance make_instance(std::uint64_t index, std::uint64_t seed) {
  std::uint64_t mix = seed * 0x9e3779b97f4a7c15ULL + index;
  Rng rng(Rng::splitmix64(mix));
  static constexpr double kDensity[] = {0.1, 0.2, 0.4};
  static constexpr std::uint32_t kAlphabet[] = {1, 2, 4};
  static constexpr std::uint64_t kRmatSizes[] = {128, 256, 512};

  const std::uint32_t alphabet = kAlphabet[(index / 4) % 3];
  std::ostringstream name;
  Graph shape;
  if (index % 4 < 3) {
    const double p = kDensity[index % 4];
    const std::uint64_t n = 16 + rng.below(49);
    shape = erdos_renyi(n, p, rng.next());
    name << "er(n=" << n << ",p=" << p << ")";
  } else {
    const std::uint64_t n = kRmatSizes[(index / 4) % 3];
    shape = rmat({.n = n, .m = 3 * n}, rng.next());
    name << "rmat(n=" << n << ",m=" << 3 * n << ")";
  }
  Graph data = relabel_zipf(shape, alphabet, 0.0, rng.next());
  name << ",labels=" << alphabet;

  const std::uint64_t pick = rng.below(10);
  if (pick >= 4) {
    for (std::size_t size = 3 + rng.below(6); size >= 3; --size) {
      try {
        QueryGraph q = random_query(data, size, rng.next());
        name << ",random(" << size << ")";
        return {name.str(), std::move(data), std::move(q)};
      } catch (const QueryError&) {
      }
    }
  }
  static const QueryGraph kPatterns[] = {triangle_pattern(), cycle4_pattern(), clique4_pattern(),
                                         house5_pattern()};
  static constexpr const char* kNames[] = {"triangle", "cycle4", "clique4", "house5"};
  const std::size_t which = pick < 4 ? pick : 0;
  const Graph& pattern = kPatterns[which].graph();
  std::vector<LabelId> labels(pattern.num_vertices());
  for (auto& l : labels) l = static_cast<LabelId>(rng.below(alphabet));
  name << "," << kNames[which];
  return {name.str(), std::move(data), QueryGraph(pattern.with_labels(std::move(labels), alphabet))};
}

VerifySummary verify(const VerifyOptions& options,
                     const std::function<void(const VerifyRow&)>& on_row) {
  VerifySummary summary;
  RunConfig base;
  base.tau = 64;
  base.workers = options.workers;
  base.timeout_seconds = 0.0;
  for (std::uint64_t index = 0; summary.rows.size() < options.instances; ++index) {
    Instance inst = make_instance(index, options.seed);
    VerifyRow row;
    row.name = inst.name;
    OracleOptions limits;
    limits.step_limit = options.oracle_step_limit;
    const auto oracle = enumerate_all(inst.query, inst.data, limits);
    if (oracle.partial) {
      ++summary.skipped;
      continue;
    }
    row.oracle = oracle.count;
    const MatchingOrder order = generate_order(inst.query);

    RunConfig fine = base;
    fine.engine = EngineKind::kFine;
    row.fine = run_instance(inst.data, inst.query, order, fine).match_count;
    RunConfig coarse = base;
    coarse.engine = EngineKind::kCoarse;
    coarse.sigma = 1;
    row.coarse_sigma1 = run_instance(inst.data, inst.query, order, coarse).match_count;
    coarse.sigma = 4;
    row.coarse_sigma4 = run_instance(inst.data, inst.query, order, coarse).match_count;

    if (!row.agree()) ++summary.mismatches;
    if (on_row) on_row(row);
    summary.rows.push_back(std::move(row));
  }
  return summary;
}

}  // namespace lanematch
