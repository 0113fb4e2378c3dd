#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tica/adaptive.hpp"
#include "tica/device.hpp"
#include "tica/sim_types.hpp"

namespace tica {

enum class DeviceKind { Dram, Ssd, Hdd };

struct DeviceSnapshot {
  std::string role;  // dram, ro_ssd, wo_ssd, ssd, ssd_a, ssd_b, hdd
  DeviceKind kind = DeviceKind::Ssd;
  DeviceModel model;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t trims = 0;
  double busy_us = 0;
  SimTime last_release_us = 0;

  double endurance_consumed(std::uint64_t page_size_bytes) const {
    if (model.endurance_writes_per_gb <= 0) return 0.0;
    double gb_written = static_cast<double>(writes) * page_size_bytes / kGiB;
    return gb_written / (model.endurance_writes_per_gb * model.capacity_gb(page_size_bytes));
  }
};

inline DeviceSnapshot snapshot_device(const std::string& role, DeviceKind kind,
                                      const DeviceState& d) {
  return {role,      kind,           d.model(),   d.reads(),
          d.writes(), d.trims(),     d.busy_us(), d.last_release_us()};
}

// Counters for one run (or one measurement window of a run). Latency and hit
// accounting is per page-operation.
struct RunStats {
  std::uint64_t requests = 0;
  std::uint64_t page_ops = 0;
  std::uint64_t user_reads = 0;   // read page-operations
  std::uint64_t user_writes = 0;  // write page-operations
  std::uint64_t dram_hits = 0;
  std::uint64_t ro_hits = 0;
  std::uint64_t wo_hits = 0;
  std::uint64_t hdd_reads = 0;
  double latency_sum_us = 0;
  std::uint64_t latency_ops = 0;
  double total_sim_us = 0;
  // Dirty-page exposure split: time with the second copy in DRAM (pre-flush)
  // vs in the RO-SSD (post-flush).
  double alpha_pre_us = 0;
  double alpha_post_us = 0;
  std::uint64_t flushes_completed = 0;
  std::uint64_t wed_copies = 0;
  std::uint64_t writebacks = 0;
  std::uint64_t policy_switches = 0;
  PolicyMode final_mode = PolicyMode::Ef;
  std::vector<DeviceSnapshot> devices;

  std::uint64_t read_hits() const { return dram_hits + ro_hits + wo_hits; }

  bool has_hit_ratio() const { return user_reads > 0; }
  double hit_ratio() const {
    return user_reads ? static_cast<double>(read_hits()) / user_reads : 0.0;
  }

  bool has_mean_latency() const { return latency_ops > 0; }
  double mean_latency_us() const {
    return latency_ops ? latency_sum_us / latency_ops : 0.0;
  }

  double alpha_observed() const {
    double total = alpha_pre_us + alpha_post_us;
    return total > 0 ? alpha_pre_us / total : 1.0;
  }

  const DeviceSnapshot* find_device(const std::string& role) const {
    for (const auto& d : devices)
      if (d.role == role) return &d;
    return nullptr;
  }

  std::uint64_t ssd_writes() const {
    std::uint64_t n = 0;
    for (const auto& d : devices)
      if (d.kind == DeviceKind::Ssd) n += d.writes;
    return n;
  }
};

// Window = end - start, for warm-up exclusion. Device models and final state
// come from `end`; counters and accumulated times are differenced.
inline RunStats stats_window(const RunStats& end, const RunStats& start) {
  RunStats w = end;
  w.requests -= start.requests;
  w.page_ops -= start.page_ops;
  w.user_reads -= start.user_reads;
  w.user_writes -= start.user_writes;
  w.dram_hits -= start.dram_hits;
  w.ro_hits -= start.ro_hits;
  w.wo_hits -= start.wo_hits;
  w.hdd_reads -= start.hdd_reads;
  w.latency_sum_us -= start.latency_sum_us;
  w.latency_ops -= start.latency_ops;
  w.total_sim_us -= start.total_sim_us;
  w.alpha_pre_us -= start.alpha_pre_us;
  w.alpha_post_us -= start.alpha_post_us;
  w.flushes_completed -= start.flushes_completed;
  w.wed_copies -= start.wed_copies;
  w.writebacks -= start.writebacks;
  w.policy_switches -= start.policy_switches;
  for (std::size_t i = 0; i < w.devices.size() && i < start.devices.size(); ++i) {
    w.devices[i].reads -= start.devices[i].reads;
    w.devices[i].writes -= start.devices[i].writes;
    w.devices[i].trims -= start.devices[i].trims;
    w.devices[i].busy_us -= start.devices[i].busy_us;
  }
  return w;
}

}  // namespace tica
