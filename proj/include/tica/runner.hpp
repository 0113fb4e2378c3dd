#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "tica/analytics.hpp"
#include "tica/baselines.hpp"
#include "tica/config.hpp"
#include "tica/engine.hpp"
#include "tica/engine_base.hpp"
#include "tica/runner_report.hpp"
#include "tica/trace.hpp"

namespace tica {

struct RunOutput {
  ExperimentConfig resolved;   // echoed config with absolute sizes filled in
  WorkloadStats workload;
  std::uint64_t trace_skipped = 0;
  RunStats stats;              // measurement window (post warm-up)
  RunStats full_stats;         // whole run, for audits
};

inline std::vector<Request> load_requests(const ExperimentConfig& cfg,
                                          std::uint64_t* skipped = nullptr) {
  if (cfg.trace.synthetic) {
    if (skipped) *skipped = 0;
    return gen_synthetic(*cfg.trace.synthetic);
  }
  LoadReport rep =
      load_trace(*cfg.trace.path, cfg.trace.format, cfg.page_size, cfg.max_error_fraction);
  if (skipped) *skipped = rep.skipped;
  return std::move(rep.requests);
}

inline std::uint64_t scaled_pages(double fraction, std::uint64_t working_set,
                                  std::uint64_t floor_pages) {
  auto n = static_cast<std::uint64_t>(
      std::ceil(fraction * static_cast<double>(working_set)));
  return std::max(n, floor_pages);
}

// Working-set-relative sizing needs a stats pre-pass over the trace; absolute
// page counts skip the scaling. Small floors keep degenerate configurations
// (tiny synthetic traces) runnable.
inline void resolve_sizes(ExperimentConfig& cfg, const WorkloadStats& ws) {
  std::uint64_t wsp = std::max<std::uint64_t>(1, ws.working_set_pages);
  std::uint64_t dram_floor = cfg.reserve_pages + 6;
  std::uint64_t ssd_floor = cfg.reserve_pages + 2;
  cfg.dram.capacity_pages =
      cfg.dram_pages ? *cfg.dram_pages : scaled_pages(cfg.dram_fraction, wsp, dram_floor);
  cfg.ro_ssd.capacity_pages =
      cfg.ro_pages ? *cfg.ro_pages : scaled_pages(cfg.ssd_fraction, wsp, ssd_floor);
  cfg.wo_ssd.capacity_pages =
      cfg.wo_pages ? *cfg.wo_pages : scaled_pages(cfg.ssd_fraction, wsp, ssd_floor);
  // Echo the resolved sizes so a report's config reproduces the run directly.
  cfg.dram_pages = cfg.dram.capacity_pages;
  cfg.ro_pages = cfg.ro_ssd.capacity_pages;
  cfg.wo_pages = cfg.wo_ssd.capacity_pages;
}

inline std::unique_ptr<CacheEngineBase> make_engine(const ExperimentConfig& cfg) {
  if (cfg.architecture == Architecture::Tica) {
    TicaConfig tc;
    tc.dram = cfg.dram;
    tc.ro_ssd = cfg.ro_ssd;
    tc.wo_ssd = cfg.wo_ssd;
    tc.hdd = cfg.hdd;
    tc.page_size = cfg.page_size;
    tc.def_write_fraction = cfg.def_write_fraction;
    tc.min_read_fraction = cfg.min_read_fraction;
    tc.reserve_pages = cfg.reserve_pages;
    tc.policy = cfg.policy;
    tc.adaptive = cfg.adaptive;
    return std::make_unique<TicaEngine>(tc);
  }
  BaselineConfig bc;
  bc.dram = cfg.dram;
  bc.hdd = cfg.hdd;
  bc.page_size = cfg.page_size;
  switch (cfg.architecture) {
    case Architecture::MirroredWb:
      bc.kind = BaselineConfig::Kind::DramMirroredWb;
      bc.ssd_a = cfg.wo_ssd;
      bc.ssd_b = cfg.wo_ssd;
      bc.ssd_b.name = "wo_ssd_b";
      break;
    case Architecture::SingleSsd:
      bc.kind = BaselineConfig::Kind::SingleLevelSsd;
      bc.ssd_a = cfg.wo_ssd;
      break;
    case Architecture::Raid1Ro:
      bc.kind = BaselineConfig::Kind::Raid1Pair;
      bc.ssd_a = cfg.ro_ssd;
      bc.ssd_b = cfg.ro_ssd;
      bc.ssd_b.name = "ro_ssd_b";
      break;
    case Architecture::Raid1Wo:
      bc.kind = BaselineConfig::Kind::Raid1Pair;
      bc.ssd_a = cfg.wo_ssd;
      bc.ssd_b = cfg.wo_ssd;
      bc.ssd_b.name = "wo_ssd_b";
      break;
    case Architecture::Raid1Mixed:
      bc.kind = BaselineConfig::Kind::Raid1Pair;
      bc.ssd_a = cfg.ro_ssd;
      bc.ssd_b = cfg.wo_ssd;
      break;
    default:
      throw ConfigError("unhandled architecture");
  }
  return std::make_unique<BaselineEngine>(bc);
}

// Drives one engine over one trace. Closed-loop: each request issues when the
// previous one completes. Open-loop: a request issues at its arrival time or
// when the previous completes, whichever is later (single outstanding
// request). The warm-up prefix is applied to state but excluded from the
// returned measurement window.
struct RunOptions {
  bool audit = false;
};

// Index of the request being executed, for failure-prefix reproduction.
struct RunProgress {
  std::uint64_t request_index = 0;
};

inline RunOutput run_experiment(ExperimentConfig cfg, const RunOptions& opts = {},
                                RunProgress* progress = nullptr) {
  cfg.validate();
  RunOutput out;
  std::vector<Request> trace = load_requests(cfg, &out.trace_skipped);
  out.workload = trace_stats(trace, cfg.page_size);
  resolve_sizes(cfg, out.workload);
  out.resolved = cfg;

  auto engine = make_engine(cfg);
  engine->set_audit(opts.audit);

  auto warmup_count =
      static_cast<std::uint64_t>(cfg.warmup_fraction * static_cast<double>(trace.size()));
  RunStats warm_snapshot;
  bool have_snapshot = false;

  SimTime completion = 0;
  std::uint64_t index = 0;
  for (const Request& r : trace) {
    if (progress) progress->request_index = index;
    if (warmup_count > 0 && index == warmup_count) {
      warm_snapshot = engine->stats(std::max(completion, engine->quiesce_time()));
      have_snapshot = true;
    }
    SimTime issue = cfg.clock == ClockMode::Closed
                        ? completion
                        : std::max(completion, static_cast<SimTime>(r.arrival_us));
    PageOpResult res = engine->execute(r, issue);
    completion = issue + res.latency_us;
    ++index;
  }
  SimTime end = std::max(completion, engine->quiesce_time());
  engine->finalize(end);
  end = std::max(end, engine->quiesce_time());
  out.full_stats = engine->stats(end);
  if (opts.audit) {
    engine->check_invariants();
    for (const auto& d : out.full_stats.devices)
      if (d.busy_us > out.full_stats.total_sim_us + 1e-6)
        throw InvariantViolation(d.role + ": busy time exceeds simulated time");
    if (out.full_stats.read_hits() + out.full_stats.hdd_reads != out.full_stats.user_reads)
      throw InvariantViolation("hit accounting: hits + hdd reads != user reads");
  }
  out.stats = have_snapshot ? stats_window(out.full_stats, warm_snapshot) : out.full_stats;
  return out;
}

}  // namespace tica
