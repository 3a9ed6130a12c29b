// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lanematch {

enum class EngineKind : std::uint8_t { kCoarse, kFine };

std::string_view to_string(EngineKind kind) noexcept;
EngineKind parse_engine(std::string_view name);

/// One lockstep round of a W-lane batch: `active` lanes carried a task.
/// `group` numbers the expansion the round belongs to (a level entry of the
/// fine engine, an unrolled step of the coarse engine) within one worker.
struct BatchEvent {
  std::uint64_t group = 0;
  std::uint16_t active = 0;
  std::uint16_t width = 0;
  std::uint8_t level = 0;
  EngineKind engine = EngineKind::kFine;

  friend bool operator==(const BatchEvent&, const BatchEvent&) = default;
};

/// Mean of (W - active) / W over the events; nullopt for an empty stream.
/// Order-independent: accumulated exactly per lane width.
std::optional<double> idle_rate(std::span<const BatchEvent> events);

/// Per-worker accumulator for batch rounds.  Running totals are always kept;
/// the raw events only when constructed with keep_events.
class EventLog {
 public:
  EventLog(EngineKind engine, std::uint16_t width, bool keep_events = false)
      : engine_(engine), width_(width), keep_(keep_events) {}

  void record(std::uint8_t level, std::uint64_t group, std::uint16_t active) {
    ++rounds_;
    active_ += active;
    if (keep_) events_.push_back({group, active, width_, level, engine_});
  }

  /// Appends `other` (same engine and width) to this log.
  void merge(const EventLog& other);

  std::uint64_t rounds() const noexcept { return rounds_; }
  std::uint64_t active_lanes() const noexcept { return active_; }
  std::uint16_t width() const noexcept { return width_; }
  bool keeps_events() const noexcept { return keep_; }
  const std::vector<BatchEvent>& events() const noexcept { return events_; }
  std::optional<double> idle_rate() const noexcept;

 private:
  EngineKind engine_;
  std::uint16_t width_;
  bool keep_;
  std::uint64_t rounds_ = 0;
  std::uint64_t active_ = 0;
  std::vector<BatchEvent> events_;
};

struct SpeedupResult {
  double value = 0.0;           // (1/|Q|) * sum t_B / t_A over usable pairs
  std::size_t used = 0;
  std::size_t excluded = 0;     // pairs where either side is unsolved
  std::size_t clamped = 0;      // zero times raised to the timer resolution
};

/// Speedup of A over B on a shared query set; nullopt marks an unsolved query.
SpeedupResult speedup(std::span<const std::optional<double>> times_a,
                      std::span<const std::optional<double>> times_b,
                      double resolution_seconds = 1e-9);
SpeedupResult speedup(std::span<const double> times_a, std::span<const double> times_b,
                      double resolution_seconds = 1e-9);

/// Configuration echoed verbatim into every report.
struct ReportConfig {
  std::string engine = "fine";
  std::string data;
  std::string query;
  std::string order = "auto";
  std::uint64_t tau = 1000000;
  std::uint32_t lane_width = 32;
  std::uint32_t sigma = 1;
  std::uint32_t workers = 1;
  bool steal = true;
  std::uint64_t seed = 0;
  std::string mode = "count";
  std::string filter = "label-degree";
  std::string select = "min";
  double timeout_seconds = 60.0;
  std::uint64_t memory_budget = 0;

  friend bool operator==(const ReportConfig&, const ReportConfig&) = default;
};

struct WorkerReport {
  double busy_seconds = 0.0;       // thread CPU time spent searching
  double busy_wall_seconds = 0.0;
  std::uint64_t matches = 0;
  std::uint64_t pool_items = 0;
  std::uint64_t steals_received = 0;
  std::uint64_t splits_given = 0;
  std::uint64_t batch_rounds = 0;

  friend bool operator==(const WorkerReport&, const WorkerReport&) = default;
};

struct RunReport {
  ReportConfig config;
  std::string status = "ok";  // ok | timeout | memory_cap | error
  std::string message;
  std::uint64_t match_count = 0;
  bool solved_in_init = false;
  std::uint64_t query_vertices = 0;
  std::uint64_t data_vertices = 0;
  std::uint64_t data_edges = 0;
  std::uint64_t d_max = 0;
  std::uint64_t pool_size = 0;
  std::uint64_t pool_depth = 0;
  double init_seconds = 0.0;
  double search_seconds = 0.0;
  std::optional<double> idle_rate;
  std::uint64_t batch_rounds = 0;
  std::uint64_t active_lanes = 0;
  std::uint64_t stack_entry_bytes = 0;
  std::uint64_t stack_bytes_fine = 0;
  std::uint64_t stack_bytes_coarse = 0;
  std::uint64_t stack_overhead_coarse = 0;
  std::uint64_t steals = 0;
  double imbalance = 0.0;  // max / mean worker busy_seconds
  std::vector<WorkerReport> workers;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

enum class ReportFormat { kJson, kCsv };
ReportFormat parse_report_format(std::string_view name);

/// Serializes with a fixed field order.  CSV is a header line plus one row.
std::string emit_report(const RunReport& report, ReportFormat format);
RunReport parse_report_json(std::string_view json);

/// Stable column list of the CSV form.
const std::vector<std::string>& report_csv_columns();
std::string report_csv_header();
std::string report_csv_row(const RunReport& report);

/// Max over mean of per-worker busy time; 0 when nothing ran.
double busy_imbalance(std::span<const WorkerReport> workers) noexcept;

}  // namespace lanematch
