#pragma once

#include <string>
#include <vector>

#include "tica/analytics.hpp"
#include "tica/config.hpp"
#include "tica/json_out.hpp"
#include "tica/stats.hpp"

namespace tica {

// Report assembly shared by the CLI and the tests. The JSON layout has a
// fixed key order and 12-significant-digit floats, so identical runs render
// byte-identically.

inline std::vector<const DeviceSnapshot*> ssd_devices(const RunStats& s) {
  std::vector<const DeviceSnapshot*> out;
  for (const auto& d : s.devices)
    if (d.kind == DeviceKind::Ssd) out.push_back(&d);
  return out;
}

struct ReportInputs {
  const ExperimentConfig& config;
  const WorkloadStats& workload;
  std::uint64_t trace_skipped = 0;
  const RunStats& stats;
};

inline std::string render_json_report(const ReportInputs& in) {
  const RunStats& s = in.stats;
  const ExperimentConfig& cfg = in.config;
  JsonWriter w;
  w.begin_object();
  w.kv("report_version", std::uint64_t{1});
  w.key("config");
  write_config_echo(w, cfg);
  w.key("workload").begin_object();
  w.kv("total_requests", in.workload.total_requests);
  w.kv("read_requests", in.workload.read_requests);
  w.kv("write_requests", in.workload.write_requests);
  w.kv("total_bytes", in.workload.total_bytes);
  w.kv("working_set_pages", in.workload.working_set_pages);
  w.kv("read_working_set_pages", in.workload.read_working_set_pages);
  w.kv("trace_lines_skipped", in.trace_skipped);
  w.end_object();

  w.key("results").begin_object();
  w.kv("requests", s.requests);
  w.kv("page_ops", s.page_ops);
  w.kv("user_reads", s.user_reads);
  w.kv("user_writes", s.user_writes);
  auto ssds = ssd_devices(s);
  w.key("hits").begin_object();
  w.kv("dram", s.dram_hits);
  if (!ssds.empty()) w.kv(ssds[0]->role, s.ro_hits);
  if (ssds.size() > 1) w.kv(ssds[1]->role, s.wo_hits);
  w.end_object();
  w.kv("hdd_reads", s.hdd_reads);
  if (s.has_hit_ratio())
    w.kv("hit_ratio", s.hit_ratio());
  else
    w.kv_null("hit_ratio");
  if (s.has_mean_latency())
    w.kv("mean_latency_us", s.mean_latency_us());
  else
    w.kv_null("mean_latency_us");
  w.kv("total_sim_us", s.total_sim_us);
  auto amplification = cwaf(s);
  if (amplification)
    w.kv("cwaf", *amplification);
  else
    w.kv_null("cwaf");
  w.key("ssd_writes").begin_object();
  for (const auto* d : ssds) w.kv(d->role, d->writes);
  w.kv("total", s.ssd_writes());
  w.end_object();
  EnergyOptions eopts;
  eopts.verbatim_dram_idle = cfg.eq2_verbatim;
  w.kv("energy_j", energy(s, eopts));
  w.kv("alpha_observed", s.alpha_observed());

  double alpha_used = cfg.alpha ? *cfg.alpha : s.alpha_observed();
  ReliabilityResult rel = reliability(cfg.dram, cfg.ro_ssd, cfg.wo_ssd, alpha_used);
  w.key("reliability").begin_object();
  w.kv("alpha_used", alpha_used);
  w.kv("r_tica", rel.r_tica);
  w.kv("r_mirrored", rel.r_mirrored);
  w.kv("u_tica", rel.u_tica);
  w.kv("u_mirrored", rel.u_mirrored);
  w.kv("reference_u_split", kReferenceUnreliabilitySplit);
  w.kv("reference_u_mirrored", kReferenceUnreliabilityMirrored);
  w.kv("note", kReliabilityNote);
  w.end_object();

  w.key("endurance").begin_object();
  for (const auto* d : ssds) w.kv(d->role, d->endurance_consumed(cfg.page_size));
  w.end_object();
  w.kv("cost_usd", cache_cost_usd(s.devices, cfg.page_size));
  w.key("policy").begin_object();
  w.kv("final_mode", to_string(s.final_mode));
  w.kv("switches", s.policy_switches);
  w.end_object();
  w.kv("flushes_completed", s.flushes_completed);
  w.kv("wed_copies", s.wed_copies);
  w.kv("writebacks", s.writebacks);
  w.key("devices").begin_object();
  for (const auto& d : s.devices) {
    w.key(d.role).begin_object();
    w.kv("reads", d.reads);
    w.kv("writes", d.writes);
    w.kv("trims", d.trims);
    w.kv("busy_us", d.busy_us);
    w.kv("idle_us", s.total_sim_us - d.busy_us);
    w.end_object();
  }
  w.end_object();
  w.end_object();  // results
  w.end_object();
  return w.str();
}

inline const std::vector<std::string>& report_csv_columns() {
  static const std::vector<std::string> cols = {
      "architecture",   "policy",       "clock",          "seed",
      "dram_pages",     "ro_pages",     "wo_pages",       "requests",
      "page_ops",       "user_reads",   "user_writes",    "hit_ratio",
      "mean_latency_us", "total_sim_us", "cwaf",          "ssd_writes_total",
      "energy_j",       "alpha_observed", "u_tica",       "u_mirrored",
      "cost_usd",       "final_mode",   "policy_switches"};
  return cols;
}

inline std::string report_csv_row(const ReportInputs& in) {
  const RunStats& s = in.stats;
  const ExperimentConfig& cfg = in.config;
  EnergyOptions eopts;
  eopts.verbatim_dram_idle = cfg.eq2_verbatim;
  double alpha_used = cfg.alpha ? *cfg.alpha : s.alpha_observed();
  ReliabilityResult rel = reliability(cfg.dram, cfg.ro_ssd, cfg.wo_ssd, alpha_used);
  auto amplification = cwaf(s);
  std::string row;
  auto add = [&](const std::string& v) {
    if (!row.empty()) row += ',';
    row += v;
  };
  add(to_string(cfg.architecture));
  add(to_string(cfg.policy));
  add(cfg.clock == ClockMode::Closed ? "closed" : "open");
  add(std::to_string(cfg.seed));
  add(std::to_string(cfg.dram.capacity_pages));
  add(std::to_string(cfg.ro_ssd.capacity_pages));
  add(std::to_string(cfg.wo_ssd.capacity_pages));
  add(std::to_string(s.requests));
  add(std::to_string(s.page_ops));
  add(std::to_string(s.user_reads));
  add(std::to_string(s.user_writes));
  add(s.has_hit_ratio() ? format_double(s.hit_ratio()) : "");
  add(s.has_mean_latency() ? format_double(s.mean_latency_us()) : "");
  add(format_double(s.total_sim_us));
  add(amplification ? format_double(*amplification) : "");
  add(std::to_string(s.ssd_writes()));
  add(format_double(energy(s, eopts)));
  add(format_double(s.alpha_observed()));
  add(format_double(rel.u_tica));
  add(format_double(rel.u_mirrored));
  add(format_double(cache_cost_usd(s.devices, cfg.page_size)));
  add(to_string(s.final_mode));
  add(std::to_string(s.policy_switches));
  return row;
}

inline std::string render_csv_report(const ReportInputs& in) {
  std::string out;
  const auto& cols = report_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';
  out += report_csv_row(in);
  out += '\n';
  return out;
}

}  // namespace tica
