#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tica/sim_types.hpp"

namespace tica {

constexpr double kGiB = 1024.0 * 1024.0 * 1024.0;

// Static device parameters. Latencies are per page; powers in watts.
// endurance_writes_per_gb == 0 means unlimited (DRAM, HDD).
struct DeviceModel {
  std::string name;
  std::uint64_t capacity_pages = 0;
  double read_latency_us = 0;
  double write_latency_us = 0;
  double read_power_w = 0;
  double write_power_w = 0;
  double idle_power_w = 0;
  double mttf_hours = 0;
  double cost_per_gb_usd = 0;
  double endurance_writes_per_gb = 0;

  double latency(Op op) const {
    return op == Op::Read ? read_latency_us : write_latency_us;
  }
  double power(Op op) const {
    return op == Op::Read ? read_power_w : write_power_w;
  }
  double capacity_gb(std::uint64_t page_size_bytes) const {
    return static_cast<double>(capacity_pages) * page_size_bytes / kGiB;
  }

  void validate() const {
    if (capacity_pages < 1) throw ConfigError(name + ": capacity_pages must be >= 1");
    if (read_latency_us <= 0 || write_latency_us <= 0)
      throw ConfigError(name + ": latencies must be > 0");
    if (read_power_w < 0 || write_power_w < 0 || idle_power_w < 0)
      throw ConfigError(name + ": powers must be >= 0");
    if (mttf_hours <= 0) throw ConfigError(name + ": mttf_hours must be > 0");
    if (endurance_writes_per_gb < 0)
      throw ConfigError(name + ": endurance_writes_per_gb must be >= 0");
  }
};

// One device access, for the event-log energy oracle.
struct AccessEvent {
  std::string device;
  Op op = Op::Read;
  std::uint64_t pages = 0;
  double latency_us = 0;
  double power_w = 0;
};

using AccessLog = std::vector<AccessEvent>;

// Running counters for one device. Single-channel serial service: accesses
// are totally ordered and never overlap.
class DeviceState {
 public:
  DeviceState() = default;
  explicit DeviceState(DeviceModel model) : model_(std::move(model)) {}

  const DeviceModel& model() const { return model_; }

  std::uint64_t reads() const { return reads_; }
  std::uint64_t writes() const { return writes_; }
  std::uint64_t trims() const { return trims_; }
  double busy_us() const { return busy_us_; }
  SimTime last_release_us() const { return last_release_us_; }

  void set_recorder(AccessLog* log) { log_ = log; }

  SimTime access(Op op, std::uint64_t pages, SimTime start_us) {
    double service = static_cast<double>(pages) * model_.latency(op);
    SimTime begin = start_us > last_release_us_ ? start_us : last_release_us_;
    SimTime completion = begin + service;
    busy_us_ += service;
    last_release_us_ = completion;
    if (op == Op::Read)
      reads_ += pages;
    else
      writes_ += pages;
    if (log_) log_->push_back({model_.name, op, pages, service, model_.power(op)});
    return completion;
  }

  void count_trim() { ++trims_; }

  double idle_time(SimTime total_sim_us) const {
    double idle = total_sim_us - busy_us_;
    if (idle < 0)
      throw AccountingError(model_.name + ": busy time " + std::to_string(busy_us_) +
                            " exceeds simulated time " + std::to_string(total_sim_us));
    return idle;
  }

  // Fraction of the rated write endurance consumed so far. Informational,
  // may exceed 1. Devices with unlimited endurance report 0.
  double endurance_consumed(std::uint64_t page_size_bytes) const {
    if (model_.endurance_writes_per_gb <= 0) return 0.0;
    double gb_written = static_cast<double>(writes_) * page_size_bytes / kGiB;
    double rated_gb = model_.endurance_writes_per_gb * model_.capacity_gb(page_size_bytes);
    return gb_written / rated_gb;
  }

 private:
  DeviceModel model_;
  std::uint64_t reads_ = 0;
  std::uint64_t writes_ = 0;
  std::uint64_t trims_ = 0;
  double busy_us_ = 0;
  SimTime last_release_us_ = 0;
  AccessLog* log_ = nullptr;
};

// Default models. MTTF, $/GB, Writes/GB and power figures follow datasheet
// values for the device classes; latencies are illustrative placeholders
// chosen to keep the expected ordering (RO read <= WO read, WO write << RO
// write, HDD far slower than any SSD) and should be overridden with measured
// numbers for a specific deployment.
inline DeviceModel default_dram_model(std::uint64_t capacity_pages = 1024) {
  DeviceModel m;
  m.name = "dram";
  m.capacity_pages = capacity_pages;
  m.read_latency_us = 1.0;
  m.write_latency_us = 1.0;
  m.read_power_w = 4.0;
  m.write_power_w = 4.0;
  m.idle_power_w = 4.0;
  m.mttf_hours = 4.0e6;
  m.cost_per_gb_usd = 7.875;
  m.endurance_writes_per_gb = 0;  // unlimited
  return m;
}

inline DeviceModel default_ro_ssd_model(std::uint64_t capacity_pages = 8192) {
  DeviceModel m;
  m.name = "ro_ssd";
  m.capacity_pages = capacity_pages;
  m.read_latency_us = 90.0;
  m.write_latency_us = 900.0;
  m.read_power_w = 3.3;
  m.write_power_w = 3.4;
  m.idle_power_w = 0.07;
  m.mttf_hours = 2.0e6;
  m.cost_per_gb_usd = 0.74;
  m.endurance_writes_per_gb = 1171;
  return m;
}

inline DeviceModel default_wo_ssd_model(std::uint64_t capacity_pages = 8192) {
  DeviceModel m;
  m.name = "wo_ssd";
  m.capacity_pages = capacity_pages;
  m.read_latency_us = 110.0;
  m.write_latency_us = 90.0;
  m.read_power_w = 2.4;
  m.write_power_w = 3.1;
  m.idle_power_w = 1.3;
  m.mttf_hours = 2.0e6;
  m.cost_per_gb_usd = 0.842;
  m.endurance_writes_per_gb = 6416;
  return m;
}

inline DeviceModel default_hdd_model(std::uint64_t capacity_pages = 1ull << 30) {
  DeviceModel m;
  m.name = "hdd";
  m.capacity_pages = capacity_pages;
  m.read_latency_us = 5000.0;
  m.write_latency_us = 5000.0;
  // The backing store is excluded from the cache energy model.
  m.read_power_w = 0.0;
  m.write_power_w = 0.0;
  m.idle_power_w = 0.0;
  m.mttf_hours = 1.0e6;
  m.cost_per_gb_usd = 0.03;
  m.endurance_writes_per_gb = 0;  // unlimited
  return m;
}

}  // namespace tica
