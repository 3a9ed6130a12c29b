// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lanematch/generators.hpp"
#include "lanematch/oracle.hpp"
#include "lanematch/runner.hpp"

namespace lm = lanematch;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Row {
  lm::Instance instance;
  std::uint64_t oracle = 0;
};

constexpr std::uint64_t kInstances = 1000;
constexpr std::uint64_t kSeed = 1;
constexpr std::uint64_t kOracleSteps = 50'000'000;

lm::RunReport run(const lm::Graph& data, const lm::QueryGraph& query, const lm::RunConfig& config) {
  const lm::MatchingOrder order = lm::generate_order(query);
  return lm::run_instance(data, query, order, config);
}

lm::RunConfig base_config() {
  lm::RunConfig c;
  c.timeout_seconds = 0.0;
  c.workers = 1;
  c.tau = 64;
  return c;
}

std::string fmt(double x, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

// Criteria 1 and 3 share the instance stream.
struct CorpusResult {
  Outcome equivalence;
  Outcome dominance;
  std::vector<Row> rows;
};

CorpusResult corpus() {
  CorpusResult out;
  std::uint64_t skipped = 0;
  std::uint64_t mismatches = 0;
  std::uint64_t heavy = 0;
  std::uint64_t dominance_fail = 0;
  std::uint64_t dominance_fail_all = 0;
  std::string first_mismatch;
  std::string first_dominance;
  std::set<std::string> kinds;

  for (std::uint64_t index = 0; out.rows.size() < kInstances; ++index) {
    lm::Instance inst = lm::make_instance(index, kSeed);
    lm::OracleOptions limits;
    limits.step_limit = kOracleSteps;
    const auto oracle = lm::enumerate_all(inst.query, inst.data, limits);
    if (oracle.partial) {
      ++skipped;
      continue;
    }

    lm::RunConfig fine = base_config();
    const lm::RunReport f1 = run(inst.data, inst.query, fine);
    fine.workers = 2;
    const lm::RunReport f2 = run(inst.data, inst.query, fine);
    lm::RunConfig coarse = base_config();
    coarse.engine = lm::EngineKind::kCoarse;
    const lm::RunReport c1 = run(inst.data, inst.query, coarse);
    coarse.sigma = 4;
    const lm::RunReport c4 = run(inst.data, inst.query, coarse);

    const std::uint64_t counts[] = {f1.match_count, f2.match_count, c1.match_count,
                                    c4.match_count};
    if (std::any_of(std::begin(counts), std::end(counts),
                    [&](std::uint64_t c) { return c != oracle.count; })) {
      if (mismatches++ == 0) {
        first_mismatch = inst.name + " oracle=" + std::to_string(oracle.count) +
                         " fine=" + std::to_string(f1.match_count) + " coarse1=" +
                         std::to_string(c1.match_count) + " coarse4=" +
                         std::to_string(c4.match_count);
      }
    }

    if (f1.idle_rate && c1.idle_rate) {
      const bool dominated = *f1.idle_rate <= *c1.idle_rate;
      if (!dominated) ++dominance_fail_all;
      if (std::max(f1.batch_rounds, c1.batch_rounds) >= 10000) {
        ++heavy;
        if (!dominated && dominance_fail++ == 0) {
          first_dominance = inst.name + " fine=" + fmt(*f1.idle_rate) + " coarse=" +
                            fmt(*c1.idle_rate);
        }
      }
    }
    kinds.insert(inst.name.substr(0, inst.name.find('(')));
    out.rows.push_back({std::move(inst), oracle.count});
  }

  out.equivalence.pass = mismatches == 0 && out.rows.size() >= kInstances;
  out.equivalence.detail = std::to_string(out.rows.size()) + " instances (" +
                           std::to_string(skipped) + " skipped at the oracle step limit), " +
                           std::to_string(mismatches) + " mismatches";
  if (!first_mismatch.empty()) out.equivalence.detail += "; first: " + first_mismatch;

  out.dominance.pass = dominance_fail == 0 && heavy > 0;
  out.dominance.detail = std::to_string(heavy) + " instances with >= 10^4 batch rounds, " +
                         std::to_string(dominance_fail) + " where fine idle > coarse idle (" +
                         std::to_string(dominance_fail_all) + " over all instances)";
  if (!first_dominance.empty()) out.dominance.detail += "; first: " + first_dominance;
  return out;
}

Outcome invariance(const std::vector<Row>& rows) {
  Outcome o;
  std::uint64_t runs = 0;
  std::uint64_t bad = 0;
  std::string first;
  for (std::size_t i = 0; i < 50 && i < rows.size(); ++i) {
    const Row& row = rows[i];
    for (std::size_t workers : {1U, 2U, 4U, 8U}) {
      for (std::uint64_t tau : {1ULL, 64ULL, 4096ULL}) {
        for (bool steal : {true, false}) {
          for (std::size_t width : {8U, 32U}) {
            lm::RunConfig c = base_config();
            c.workers = workers;
            c.tau = tau;
            c.steal = steal;
            c.lane_width = width;
            const auto r = run(row.instance.data, row.instance.query, c);
            ++runs;
            if (r.match_count != row.oracle || r.status != "ok") {
              if (bad++ == 0) {
                first = row.instance.name + " workers=" + std::to_string(workers) +
                        " tau=" + std::to_string(tau) + " steal=" + std::to_string(steal) +
                        " W=" + std::to_string(width);
              }
            }
          }
        }
      }
    }
  }
  o.pass = bad == 0 && runs == 50 * 48;
  o.detail = std::to_string(runs) + " runs over 50 instances, " + std::to_string(bad) + " differ";
  if (!first.empty()) o.detail += "; first: " + first;
  return o;
}

lm::Graph rmat_fixture() {
  lm::RmatParams p;
  p.n = 1U << 14;
  p.m = 1U << 17;
  return lm::rmat(p, 1);
}

Outcome rmat_fine_idle(const lm::Graph& g) {
  lm::RunConfig c = base_config();
  const auto fine = run(g, lm::clique4_pattern(), c);
  c.engine = lm::EngineKind::kCoarse;
  const auto coarse = run(g, lm::clique4_pattern(), c);
  Outcome o;
  const double idle = fine.idle_rate.value_or(1.0);
  o.pass = fine.idle_rate && idle <= 0.10 && coarse.idle_rate && idle <= *coarse.idle_rate &&
           fine.match_count == coarse.match_count;
  o.detail = "RMAT n=2^14 m=2^17 4-clique: " + std::to_string(fine.match_count) +
             " matches, fine idle " + fmt(idle) + " (coarse sigma=1 " +
             fmt(coarse.idle_rate.value_or(-1.0)) + "), " + std::to_string(fine.batch_rounds) +
             " fine rounds";
  return o;
}

Outcome unrolling(const lm::Graph& g) {
  std::vector<double> idle;
  std::string detail = "coarse idle on RMAT 4-clique:";
  for (unsigned sigma : {1U, 2U, 4U, 8U}) {
    lm::RunConfig c = base_config();
    c.engine = lm::EngineKind::kCoarse;
    c.sigma = sigma;
    const auto r = run(g, lm::clique4_pattern(), c);
    idle.push_back(r.idle_rate.value_or(1.0));
    detail += " sigma=" + std::to_string(sigma) + " " + fmt(idle.back());
  }
  Outcome o;
  o.pass = idle[2] <= idle[0] && idle[3] <= idle[2];
  o.detail = detail + " (sigma=2 reported only)";
  return o;
}

Outcome memory() {
  Outcome o;
  std::vector<std::string> failed;
  auto check = [&](const std::string& what, std::uint64_t got, std::uint64_t want) {
    if (got != want) failed.push_back(what + "=" + std::to_string(got) + " want " + std::to_string(want));
  };
  check("coarse(4,3200,1)", lm::stack_bytes_coarse(4, 3200, 1, 4).candidates, 51200);
  check("fine(4,32,24)", lm::stack_bytes_fine(4, 32, 24), 3072);
  check("coarse(5,4e6,1)", lm::stack_bytes_coarse(5, 4'000'000, 1, 4).candidates, 80'000'000);
  check("coarse level(1,4e6,1)", lm::stack_bytes_coarse(1, 4'000'000, 1, 4).candidates, 16'000'000);

  // Reported values on real inputs: d_max 3200 and 10^6.
  lm::RunConfig c = base_config();
  c.tau = 1;
  const auto small = run(lm::star(3201), lm::clique4_pattern(), c);
  const auto big = run(lm::star(1'000'001), lm::clique4_pattern(), c);
  check("report d_max", small.d_max, 3200);
  check("report coarse d_max=3200", small.stack_bytes_coarse, 51200);
  check("report fine d_max=3200", small.stack_bytes_fine, 3072);
  check("report fine d_max=1e6", big.stack_bytes_fine, 3072);
  check("report coarse d_max=1e6", big.stack_bytes_coarse, 16'000'000);
  o.pass = failed.empty();
  o.detail = failed.empty() ? "coarse 51200 B, fine 3072 B at d_max 3200 and 10^6, 80 MB headline"
                            : failed.front();
  return o;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

Outcome load_balance() {
  const lm::Graph g = lm::skewed_fixture();
  const lm::QueryGraph q = lm::skewed_query();
  auto config = [](std::uint64_t tau, bool steal) {
    lm::RunConfig c = base_config();
    c.workers = 4;
    c.tau = tau;
    c.steal = steal;
    return c;
  };
  const auto off32 = run(g, q, config(32, false));
  const auto off4096 = run(g, q, config(4096, false));
  const bool imbalance_drops = off32.imbalance > off4096.imbalance;

  std::string detail = "steal off imbalance tau=32 " + fmt(off32.imbalance, 3) + " > tau=4096 " +
                       fmt(off4096.imbalance, 3) + ";";
  bool close = true;
  for (std::uint64_t tau : {512ULL, 4096ULL}) {
    std::vector<double> on, off;
    for (int rep = 0; rep < 3; ++rep) {
      on.push_back(run(g, q, config(tau, true)).search_seconds);
      off.push_back(run(g, q, config(tau, false)).search_seconds);
    }
    const double a = median(on);
    const double b = median(off);
    const double diff = std::abs(a - b) / std::min(a, b);
    close = close && diff <= 0.25;
    detail += " tau=" + std::to_string(tau) + " wall on " + fmt(a, 3) + "s off " + fmt(b, 3) +
              "s (" + fmt(100.0 * diff, 1) + "%);";
  }
  const auto on32 = run(g, q, config(32, true));
  detail += " steals at tau=32 " + std::to_string(on32.steals);

  Outcome o;
  o.pass = imbalance_drops && close && on32.steals >= 1 &&
           on32.match_count == off32.match_count && off32.match_count == off4096.match_count;
  o.detail = detail;
  return o;
}

Outcome speedup_arithmetic() {
  Outcome o;
  const double a[] = {1.0, 2.0, 4.0};
  const double b[] = {2.0, 2.0, 8.0};
  const auto s = lm::speedup(a, b);
  const std::optional<double> ua[] = {1.0, std::nullopt, 2.0, 0.5};
  const std::optional<double> ub[] = {3.0, 9.0, std::nullopt, 0.5};
  const auto u = lm::speedup(ua, ub);
  const double same[] = {0.25, 0.5};
  const auto one = lm::speedup(same, same);
  o.pass = s.value == 5.0 / 3.0 && s.used == 3 && u.value == 2.0 && u.used == 2 &&
           u.excluded == 2 && one.value == 1.0;
  o.detail = "mean t_B/t_A: " + fmt(s.value, 6) + " (5/3), with unsolved pairs " +
             fmt(u.value, 6) + " (2), identical " + fmt(one.value, 6);
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, const std::string& name, const Outcome& o) {
    std::printf("%s criterion %d (%s): %s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  const auto start = std::chrono::steady_clock::now();
  CorpusResult c = corpus();
  report(1, "oracle equivalence", c.equivalence);
  report(2, "configuration invariance", invariance(c.rows));

  const lm::Graph rmat = rmat_fixture();
  Outcome dominance = c.dominance;
  const Outcome fixture = rmat_fine_idle(rmat);
  dominance.pass = dominance.pass && fixture.pass;
  dominance.detail += "; " + fixture.detail;
  report(3, "idle-rate dominance", dominance);
  report(4, "unrolling trend", unrolling(rmat));
  report(5, "memory accounting", memory());
  report(6, "load balancing", load_balance());
  report(7, "speedup arithmetic", speedup_arithmetic());

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 7 criteria failed (%.1f s)\n", failures, seconds);
  return failures == 0 ? 0 : 1;
}
