// SPDX-License-Identifier: Apache-2.0
#include "lanematch/metrics.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "lanematch/types.hpp"

namespace lanematch {

using ordered_json = nlohmann::ordered_json;

std::string_view to_string(EngineKind kind) noexcept {
  return kind == EngineKind::kCoarse ? "coarse" : "fine";
}

EngineKind parse_engine(std::string_view name) {
  if (name == "coarse") return EngineKind::kCoarse;
  if (name == "fine") return EngineKind::kFine;
  throw ConfigError("unknown engine \"" + std::string(name) + "\" (expected coarse or fine)");
}

std::optional<double> idle_rate(std::span<const BatchEvent> events) {
  if (events.empty()) return std::nullopt;
  std::map<std::uint16_t, std::uint64_t> idle_lanes;
  for (const auto& e : events) idle_lanes[e.width] += e.width - e.active;
  double sum = 0.0;
  for (auto [width, idle] : idle_lanes) sum += static_cast<double>(idle) / width;
  return sum / static_cast<double>(events.size());
}

void EventLog::merge(const EventLog& other) {
  if (other.width_ != width_ || other.engine_ != engine_) {
    throw ConfigError("cannot merge event logs of different engines or lane widths");
  }
  rounds_ += other.rounds_;
  active_ += other.active_;
  if (keep_) events_.insert(events_.end(), other.events_.begin(), other.events_.end());
}

std::optional<double> EventLog::idle_rate() const noexcept {
  if (rounds_ == 0) return std::nullopt;
  const double capacity = static_cast<double>(rounds_) * width_;
  return (capacity - static_cast<double>(active_)) / capacity;
}

SpeedupResult speedup(std::span<const std::optional<double>> times_a,
                      std::span<const std::optional<double>> times_b, double resolution_seconds) {
  if (times_a.size() != times_b.size()) throw ConfigError("speedup needs equally sized time vectors");
  SpeedupResult r;
  double sum = 0.0;
  for (std::size_t i = 0; i < times_a.size(); ++i) {
    if (!times_a[i] || !times_b[i]) {
      ++r.excluded;
      continue;
    }
    double a = *times_a[i];
    double b = *times_b[i];
    if (a <= 0.0) {
      a = resolution_seconds;
      ++r.clamped;
    }
    if (b <= 0.0) {
      b = resolution_seconds;
      ++r.clamped;
    }
    sum += b / a;
    ++r.used;
  }
  r.value = r.used == 0 ? 0.0 : sum / static_cast<double>(r.used);
  return r;
}

SpeedupResult speedup(std::span<const double> times_a, std::span<const double> times_b,
                      double resolution_seconds) {
  std::vector<std::optional<double>> a(times_a.begin(), times_a.end());
  std::vector<std::optional<double>> b(times_b.begin(), times_b.end());
  return speedup(std::span<const std::optional<double>>(a), std::span<const std::optional<double>>(b),
                 resolution_seconds);
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::kJson;
  if (name == "csv") return ReportFormat::kCsv;
  throw ConfigError("unknown report format \"" + std::string(name) + "\" (expected json or csv)");
}

double busy_imbalance(std::span<const WorkerReport> workers) noexcept {
  if (workers.empty()) return 0.0;
  double max = 0.0;
  double sum = 0.0;
  for (const auto& w : workers) {
    max = std::max(max, w.busy_seconds);
    sum += w.busy_seconds;
  }
  if (sum <= 0.0) return 0.0;
  return max / (sum / static_cast<double>(workers.size()));
}

namespace {

ordered_json config_to_json(const ReportConfig& c) {
  ordered_json j;
  j["engine"] = c.engine;
  j["data"] = c.data;
  j["query"] = c.query;
  j["order"] = c.order;
  j["tau"] = c.tau;
  j["lane_width"] = c.lane_width;
  j["sigma"] = c.sigma;
  j["workers"] = c.workers;
  j["steal"] = c.steal;
  j["seed"] = c.seed;
  j["mode"] = c.mode;
  j["filter"] = c.filter;
  j["select"] = c.select;
  j["timeout_seconds"] = c.timeout_seconds;
  j["memory_budget"] = c.memory_budget;
  return j;
}

ReportConfig config_from_json(const ordered_json& j) {
  ReportConfig c;
  j.at("engine").get_to(c.engine);
  j.at("data").get_to(c.data);
  j.at("query").get_to(c.query);
  j.at("order").get_to(c.order);
  j.at("tau").get_to(c.tau);
  j.at("lane_width").get_to(c.lane_width);
  j.at("sigma").get_to(c.sigma);
  j.at("workers").get_to(c.workers);
  j.at("steal").get_to(c.steal);
  j.at("seed").get_to(c.seed);
  j.at("mode").get_to(c.mode);
  j.at("filter").get_to(c.filter);
  j.at("select").get_to(c.select);
  j.at("timeout_seconds").get_to(c.timeout_seconds);
  j.at("memory_budget").get_to(c.memory_budget);
  return c;
}

ordered_json worker_to_json(const WorkerReport& w) {
  ordered_json j;
  j["busy_seconds"] = w.busy_seconds;
  j["busy_wall_seconds"] = w.busy_wall_seconds;
  j["matches"] = w.matches;
  j["pool_items"] = w.pool_items;
  j["steals_received"] = w.steals_received;
  j["splits_given"] = w.splits_given;
  j["batch_rounds"] = w.batch_rounds;
  return j;
}

WorkerReport worker_from_json(const ordered_json& j) {
  WorkerReport w;
  j.at("busy_seconds").get_to(w.busy_seconds);
  j.at("busy_wall_seconds").get_to(w.busy_wall_seconds);
  j.at("matches").get_to(w.matches);
  j.at("pool_items").get_to(w.pool_items);
  j.at("steals_received").get_to(w.steals_received);
  j.at("splits_given").get_to(w.splits_given);
  j.at("batch_rounds").get_to(w.batch_rounds);
  return w;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

}  // namespace

std::string emit_report(const RunReport& r, ReportFormat format) {
  if (format == ReportFormat::kCsv) return report_csv_header() + "\n" + report_csv_row(r) + "\n";
  ordered_json j;
  j["config"] = config_to_json(r.config);
  j["status"] = r.status;
  j["message"] = r.message;
  j["match_count"] = r.match_count;
  j["solved_in_init"] = r.solved_in_init;
  j["query_vertices"] = r.query_vertices;
  j["data_vertices"] = r.data_vertices;
  j["data_edges"] = r.data_edges;
  j["d_max"] = r.d_max;
  j["pool_size"] = r.pool_size;
  j["pool_depth"] = r.pool_depth;
  j["init_seconds"] = r.init_seconds;
  j["search_seconds"] = r.search_seconds;
  j["idle_rate"] = r.idle_rate ? ordered_json(*r.idle_rate) : ordered_json(nullptr);
  j["batch_rounds"] = r.batch_rounds;
  j["active_lanes"] = r.active_lanes;
  j["stack_entry_bytes"] = r.stack_entry_bytes;
  j["stack_bytes_fine"] = r.stack_bytes_fine;
  j["stack_bytes_coarse"] = r.stack_bytes_coarse;
  j["stack_overhead_coarse"] = r.stack_overhead_coarse;
  j["steals"] = r.steals;
  j["imbalance"] = r.imbalance;
  auto& workers = j["workers"] = ordered_json::array();
  for (const auto& w : r.workers) workers.push_back(worker_to_json(w));
  return j.dump(2) + "\n";
}

RunReport parse_report_json(std::string_view text) {
  const auto j = ordered_json::parse(text);
  RunReport r;
  r.config = config_from_json(j.at("config"));
  j.at("status").get_to(r.status);
  j.at("message").get_to(r.message);
  j.at("match_count").get_to(r.match_count);
  j.at("solved_in_init").get_to(r.solved_in_init);
  j.at("query_vertices").get_to(r.query_vertices);
  j.at("data_vertices").get_to(r.data_vertices);
  j.at("data_edges").get_to(r.data_edges);
  j.at("d_max").get_to(r.d_max);
  j.at("pool_size").get_to(r.pool_size);
  j.at("pool_depth").get_to(r.pool_depth);
  j.at("init_seconds").get_to(r.init_seconds);
  j.at("search_seconds").get_to(r.search_seconds);
  if (!j.at("idle_rate").is_null()) r.idle_rate = j.at("idle_rate").get<double>();
  j.at("batch_rounds").get_to(r.batch_rounds);
  j.at("active_lanes").get_to(r.active_lanes);
  j.at("stack_entry_bytes").get_to(r.stack_entry_bytes);
  j.at("stack_bytes_fine").get_to(r.stack_bytes_fine);
  j.at("stack_bytes_coarse").get_to(r.stack_bytes_coarse);
  j.at("stack_overhead_coarse").get_to(r.stack_overhead_coarse);
  j.at("steals").get_to(r.steals);
  j.at("imbalance").get_to(r.imbalance);
  for (const auto& w : j.at("workers")) r.workers.push_back(worker_from_json(w));
  return r;
}

const std::vector<std::string>& report_csv_columns() {
  static const std::vector<std::string> columns = {
      "engine",       "tau",          "lane_width",     "sigma",          "workers",
      "steal",        "seed",         "status",         "match_count",    "pool_size",
      "pool_depth",   "init_seconds", "search_seconds", "idle_rate",      "batch_rounds",
      "active_lanes", "stack_bytes_fine", "stack_bytes_coarse", "steals", "imbalance"};
  return columns;
}

std::string report_csv_header() {
  std::string out;
  for (const auto& c : report_csv_columns()) {
    if (!out.empty()) out += ',';
    out += c;
  }
  return out;
}

std::string report_csv_row(const RunReport& r) {
  const auto& c = r.config;
  std::vector<std::string> cells = {
      csv_escape(c.engine),
      std::to_string(c.tau),
      std::to_string(c.lane_width),
      std::to_string(c.sigma),
      std::to_string(c.workers),
      c.steal ? "on" : "off",
      std::to_string(c.seed),
      csv_escape(r.status),
      std::to_string(r.match_count),
      std::to_string(r.pool_size),
      std::to_string(r.pool_depth),
      fmt_double(r.init_seconds),
      fmt_double(r.search_seconds),
      r.idle_rate ? fmt_double(*r.idle_rate) : std::string(),
      std::to_string(r.batch_rounds),
      std::to_string(r.active_lanes),
      std::to_string(r.stack_bytes_fine),
      std::to_string(r.stack_bytes_coarse),
      std::to_string(r.steals),
      fmt_double(r.imbalance)};
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace lanematch
