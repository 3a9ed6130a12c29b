// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lanematch/generators.hpp"
#include "lanematch/metrics.hpp"
#include "lanematch/ordering.hpp"
#include "lanematch/scheduler.hpp"

namespace lanematch {

/// Exit codes of the command-line tool, one per report status.
enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,
  kExitInputError = 2,
  kExitTimeout = 3,
  kExitMemoryCap = 4,
  kExitMismatch = 5,
};

int exit_code_for(const std::string& status) noexcept;

/// Reads LANEMATCH_MEMORY_BUDGET (bytes, optional K/M/G suffix); 4 GiB when
/// unset.  The initial pool may use a quarter of the budget.
std::uint64_t default_memory_budget();
std::uint64_t parse_byte_size(const std::string& text);

struct RunConfig {
  std::string data;                 // graph file (text or binary)
  std::string data_labels;          // optional label file for a text graph
  std::string query;                // query file; empty with query_size set
  std::string query_labels;
  std::size_t query_size = 0;       // random query of this size, drawn with `seed`
  EngineKind engine = EngineKind::kFine;
  std::size_t lane_width = 32;
  unsigned sigma = 1;
  std::uint64_t tau = 1000000;
  std::size_t workers = 1;
  bool steal = true;
  std::uint64_t seed = 0;
  std::string mode = "count";       // count | list:<path>
  std::string order = "auto";       // auto | file:<path>
  CandidateFilter::Mode filter = CandidateFilter::Mode::kLabelDegree;
  LocalCandidateRule select = LocalCandidateRule::kFewestNeighbors;
  double timeout_seconds = 60.0;
  std::uint64_t memory_budget = 0;  // 0 = default_memory_budget()
  std::string events_path;          // raw batch events as CSV when set

  /// Throws ConfigError on the first invalid field.
  void validate() const;
  ReportConfig echo() const;
};

std::string to_string(CandidateFilter::Mode mode);
CandidateFilter::Mode parse_filter(const std::string& name);
std::string to_string(LocalCandidateRule rule);
LocalCandidateRule parse_select(const std::string& name);

/// One search over already loaded inputs: filter, initial pool, parallel
/// phase, report.  Errors propagate as exceptions.  `events` receives the raw
/// batch events when non-null.
RunReport run_instance(const Graph& data, const QueryGraph& query, const MatchingOrder& order,
                       const RunConfig& config, MatchSink* sink = nullptr,
                       std::vector<BatchEvent>* events = nullptr);

/// Full pipeline from files.  Never throws for input, timeout or memory-cap
/// failures; those are reported through status and message.
RunReport run_pipeline(const RunConfig& config);

enum class SweepAxis { kTau, kSigma, kWorkers };
SweepAxis parse_sweep_axis(const std::string& name);

/// One run per value with everything else fixed.  Failed runs keep their row
/// with the failing status.
std::vector<RunReport> sweep(const RunConfig& base, SweepAxis axis,
                             const std::vector<std::uint64_t>& values);
std::string sweep_csv(const std::vector<RunReport>& rows);

/// A seeded correctness instance: small random data graph plus query.
struct Instance {
  std::string name;
  Graph data;
  QueryGraph query;
};

/// Deterministic instance `index` of the verification matrix.  Data graphs
/// cycle through ER (n <= 64, p in {0.1, 0.2, 0.4}) and RMAT (n <= 512);
/// label alphabets through {1, 2, 4}; queries through random queries of 3-8
/// vertices and the triangle, 4-cycle, 4-clique and house patterns.
Instance make_instance(std::uint64_t index, std::uint64_t seed);

struct VerifyRow {
  std::string name;
  std::optional<std::uint64_t> oracle;  // nullopt when the oracle hit its limit
  std::uint64_t fine = 0;
  std::uint64_t coarse_sigma1 = 0;
  std::uint64_t coarse_sigma4 = 0;
  bool agree() const noexcept {
    return oracle && fine == *oracle && coarse_sigma1 == *oracle && coarse_sigma4 == *oracle;
  }
};

struct VerifyOptions {
  std::uint64_t instances = 1000;
  std::uint64_t seed = 1;
  std::uint64_t oracle_step_limit = 50'000'000;
  std::size_t workers = 2;
};

/// Runs the oracle and both engines on instances until `instances` rows with
/// a finished oracle exist.  Instances whose oracle hits the step limit are
/// skipped and counted.
struct VerifySummary {
  std::vector<VerifyRow> rows;
  std::uint64_t skipped = 0;
  std::uint64_t mismatches = 0;
};
VerifySummary verify(const VerifyOptions& options,
                     const std::function<void(const VerifyRow&)>& on_row = {});

}  // namespace lanematch
