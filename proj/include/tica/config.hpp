#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "tica/adaptive.hpp"
#include "tica/device.hpp"
#include "tica/engine.hpp"
#include "tica/json_out.hpp"
#include "tica/trace.hpp"

namespace tica {

enum class Architecture { Tica, MirroredWb, SingleSsd, Raid1Ro, Raid1Wo, Raid1Mixed };

inline const char* to_string(Architecture a) {
  switch (a) {
    case Architecture::Tica: return "tica";
    case Architecture::MirroredWb: return "mirrored_wb";
    case Architecture::SingleSsd: return "single_ssd";
    case Architecture::Raid1Ro: return "raid1_ro";
    case Architecture::Raid1Wo: return "raid1_wo";
    case Architecture::Raid1Mixed: return "raid1_mixed";
  }
  return "?";
}

inline Architecture architecture_from_string(const std::string& s) {
  if (s == "tica") return Architecture::Tica;
  if (s == "mirrored_wb") return Architecture::MirroredWb;
  if (s == "single_ssd") return Architecture::SingleSsd;
  if (s == "raid1_ro") return Architecture::Raid1Ro;
  if (s == "raid1_wo") return Architecture::Raid1Wo;
  if (s == "raid1_mixed") return Architecture::Raid1Mixed;
  throw ConfigError("unknown architecture: " + s);
}

inline PolicyKind policy_from_string(const std::string& s) {
  if (s == "ef") return PolicyKind::Ef;
  if (s == "wed") return PolicyKind::Wed;
  if (s == "adaptive") return PolicyKind::Adaptive;
  throw ConfigError("unknown policy: " + s);
}

enum class ClockMode { Closed, Open };

inline ClockMode clock_from_string(const std::string& s) {
  if (s == "closed") return ClockMode::Closed;
  if (s == "open") return ClockMode::Open;
  throw ConfigError("unknown clock mode: " + s);
}

enum class ReportFormat { Json, Csv };

struct TraceSource {
  // Exactly one of `path` or `synthetic` is set.
  std::optional<std::string> path;
  TraceFormat format = TraceFormat::MsrCsv;
  std::optional<SyntheticSpec> synthetic;
};

struct ExperimentConfig {
  TraceSource trace;
  Architecture architecture = Architecture::Tica;
  PolicyKind policy = PolicyKind::Adaptive;
  ClockMode clock = ClockMode::Closed;
  std::uint64_t page_size = kDefaultPageSize;
  std::uint64_t seed = 1;

  // Cache sizing relative to the workload working set; absolute page counts
  // override the fractions when set.
  double dram_fraction = 0.01;
  double ssd_fraction = 0.10;
  std::optional<std::uint64_t> dram_pages;
  std::optional<std::uint64_t> ro_pages;
  std::optional<std::uint64_t> wo_pages;

  double def_write_fraction = 0.2;
  double min_read_fraction = 0.1;
  std::uint64_t reserve_pages = 4;
  AdaptiveParams adaptive;

  DeviceModel dram = default_dram_model();
  DeviceModel ro_ssd = default_ro_ssd_model();
  DeviceModel wo_ssd = default_wo_ssd_model();
  DeviceModel hdd = default_hdd_model();

  std::optional<double> alpha = 0.8;  // fixed reliability weight; unset -> observed
  bool eq2_verbatim = false;
  double warmup_fraction = 0.0;
  double max_error_fraction = 0.01;

  std::string output_path = "-";  // "-" = stdout
  ReportFormat output_format = ReportFormat::Json;

  void validate() const {
    bool has_file = trace.path.has_value();
    bool has_syn = trace.synthetic.has_value();
    if (has_file == has_syn)
      throw ConfigError("config: exactly one of trace file or synthetic spec required");
    if (has_syn) trace.synthetic->validate();
    if (dram_fraction <= 0 || dram_fraction > 1)
      throw ConfigError("config: dram_fraction must be in (0,1]");
    if (ssd_fraction <= 0 || ssd_fraction > 1)
      throw ConfigError("config: ssd_fraction must be in (0,1]");
    if (warmup_fraction < 0 || warmup_fraction >= 1)
      throw ConfigError("config: warmup_fraction must be in [0,1)");
    if (alpha && (*alpha < 0 || *alpha > 1))
      throw ConfigError("config: alpha must be in [0,1]");
    if (page_size < 1) throw ConfigError("config: page_size must be >= 1");
  }
};

// ---- JSON loading ----------------------------------------------------------

namespace detail {

inline void load_device(const nlohmann::json& j, DeviceModel& m) {
  if (j.contains("capacity_pages")) m.capacity_pages = j["capacity_pages"].get<std::uint64_t>();
  if (j.contains("read_latency_us")) m.read_latency_us = j["read_latency_us"].get<double>();
  if (j.contains("write_latency_us")) m.write_latency_us = j["write_latency_us"].get<double>();
  if (j.contains("read_power_w")) m.read_power_w = j["read_power_w"].get<double>();
  if (j.contains("write_power_w")) m.write_power_w = j["write_power_w"].get<double>();
  if (j.contains("idle_power_w")) m.idle_power_w = j["idle_power_w"].get<double>();
  if (j.contains("mttf_hours")) m.mttf_hours = j["mttf_hours"].get<double>();
  if (j.contains("cost_per_gb_usd")) m.cost_per_gb_usd = j["cost_per_gb_usd"].get<double>();
  if (j.contains("endurance_writes_per_gb"))
    m.endurance_writes_per_gb = j["endurance_writes_per_gb"].get<double>();
}

inline SyntheticSpec load_synthetic(const nlohmann::json& j) {
  SyntheticSpec s;
  if (j.contains("request_count")) s.request_count = j["request_count"].get<std::uint64_t>();
  if (j.contains("read_fraction")) s.read_fraction = j["read_fraction"].get<double>();
  if (j.contains("working_set_pages"))
    s.working_set_pages = j["working_set_pages"].get<std::uint64_t>();
  if (j.contains("locality")) {
    std::string loc = j["locality"].get<std::string>();
    if (loc == "uniform")
      s.locality = Locality::Uniform;
    else if (loc == "zipf")
      s.locality = Locality::Zipf;
    else
      throw ConfigError("synthetic: unknown locality " + loc);
  }
  if (j.contains("zipf_s")) s.zipf_s = j["zipf_s"].get<double>();
  if (j.contains("page_size_bytes")) s.page_size_bytes = j["page_size_bytes"].get<std::uint64_t>();
  if (j.contains("rng_seed")) s.rng_seed = j["rng_seed"].get<std::uint64_t>();
  return s;
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  ExperimentConfig c;
  if (j.contains("trace")) {
    const auto& t = j["trace"];
    if (t.contains("path")) c.trace.path = t["path"].get<std::string>();
    if (t.contains("format")) {
      std::string f = t["format"].get<std::string>();
      if (f == "msr")
        c.trace.format = TraceFormat::MsrCsv;
      else if (f == "jsonl")
        c.trace.format = TraceFormat::NativeJsonLines;
      else
        throw ConfigError("unknown trace format: " + f);
    }
    if (t.contains("synthetic")) c.trace.synthetic = detail::load_synthetic(t["synthetic"]);
  }
  if (j.contains("architecture"))
    c.architecture = architecture_from_string(j["architecture"].get<std::string>());
  if (j.contains("policy")) c.policy = policy_from_string(j["policy"].get<std::string>());
  if (j.contains("clock")) c.clock = clock_from_string(j["clock"].get<std::string>());
  if (j.contains("page_size")) c.page_size = j["page_size"].get<std::uint64_t>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("sizing")) {
    const auto& s = j["sizing"];
    if (s.contains("dram_fraction")) c.dram_fraction = s["dram_fraction"].get<double>();
    if (s.contains("ssd_fraction")) c.ssd_fraction = s["ssd_fraction"].get<double>();
    if (s.contains("dram_pages")) c.dram_pages = s["dram_pages"].get<std::uint64_t>();
    if (s.contains("ro_pages")) c.ro_pages = s["ro_pages"].get<std::uint64_t>();
    if (s.contains("wo_pages")) c.wo_pages = s["wo_pages"].get<std::uint64_t>();
  }
  if (j.contains("tica")) {
    const auto& t = j["tica"];
    if (t.contains("def_write_fraction"))
      c.def_write_fraction = t["def_write_fraction"].get<double>();
    if (t.contains("min_read_fraction"))
      c.min_read_fraction = t["min_read_fraction"].get<double>();
    if (t.contains("reserve_pages")) c.reserve_pages = t["reserve_pages"].get<std::uint64_t>();
  }
  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    if (t.contains("t_min")) c.adaptive.t_min = t["t_min"].get<double>();
    if (t.contains("t_max")) c.adaptive.t_max = t["t_max"].get<double>();
    if (t.contains("t_hdd")) c.adaptive.t_hdd = t["t_hdd"].get<double>();
    if (t.contains("t_read")) c.adaptive.t_read = t["t_read"].get<double>();
    if (t.contains("window_size")) c.adaptive.window_size = t["window_size"].get<std::uint64_t>();
    if (t.contains("sample_size")) c.adaptive.sample_size = t["sample_size"].get<std::uint64_t>();
    if (t.contains("steps")) c.adaptive.steps = t["steps"].get<int>();
    if (t.contains("capacity_prose_variant"))
      c.adaptive.capacity_prose_variant = t["capacity_prose_variant"].get<bool>();
  }
  if (j.contains("devices")) {
    const auto& d = j["devices"];
    if (d.contains("dram")) detail::load_device(d["dram"], c.dram);
    if (d.contains("ro_ssd")) detail::load_device(d["ro_ssd"], c.ro_ssd);
    if (d.contains("wo_ssd")) detail::load_device(d["wo_ssd"], c.wo_ssd);
    if (d.contains("hdd")) detail::load_device(d["hdd"], c.hdd);
  }
  if (j.contains("alpha")) {
    if (j["alpha"].is_null())
      c.alpha.reset();
    else
      c.alpha = j["alpha"].get<double>();
  }
  if (j.contains("eq2_verbatim")) c.eq2_verbatim = j["eq2_verbatim"].get<bool>();
  if (j.contains("warmup_fraction")) c.warmup_fraction = j["warmup_fraction"].get<double>();
  if (j.contains("max_error_fraction"))
    c.max_error_fraction = j["max_error_fraction"].get<double>();
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (o.contains("path")) c.output_path = o["path"].get<std::string>();
    if (o.contains("format")) {
      std::string f = o["format"].get<std::string>();
      if (f == "json")
        c.output_format = ReportFormat::Json;
      else if (f == "csv")
        c.output_format = ReportFormat::Csv;
      else
        throw ConfigError("unknown output format: " + f);
    }
  }
  return c;
}

inline ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

// Config echo, embedded in every report: enough to reproduce the run.
inline void write_config_echo(JsonWriter& w, const ExperimentConfig& c) {
  w.begin_object();
  w.key("trace").begin_object();
  if (c.trace.path) {
    w.kv("path", *c.trace.path);
    w.kv("format", c.trace.format == TraceFormat::MsrCsv ? "msr" : "jsonl");
  }
  if (c.trace.synthetic) {
    const auto& s = *c.trace.synthetic;
    w.key("synthetic").begin_object();
    w.kv("request_count", s.request_count);
    w.kv("read_fraction", s.read_fraction);
    w.kv("working_set_pages", s.working_set_pages);
    w.kv("locality", s.locality == Locality::Uniform ? "uniform" : "zipf");
    if (s.locality == Locality::Zipf) w.kv("zipf_s", s.zipf_s);
    w.kv("page_size_bytes", s.page_size_bytes);
    w.kv("rng_seed", s.rng_seed);
    w.end_object();
  }
  w.end_object();
  w.kv("architecture", to_string(c.architecture));
  w.kv("policy", to_string(c.policy));
  w.kv("clock", c.clock == ClockMode::Closed ? "closed" : "open");
  w.kv("page_size", c.page_size);
  w.kv("seed", c.seed);
  w.key("sizing").begin_object();
  w.kv("dram_fraction", c.dram_fraction);
  w.kv("ssd_fraction", c.ssd_fraction);
  if (c.dram_pages) w.kv("dram_pages", *c.dram_pages);
  if (c.ro_pages) w.kv("ro_pages", *c.ro_pages);
  if (c.wo_pages) w.kv("wo_pages", *c.wo_pages);
  w.end_object();
  w.key("tica").begin_object();
  w.kv("def_write_fraction", c.def_write_fraction);
  w.kv("min_read_fraction", c.min_read_fraction);
  w.kv("reserve_pages", c.reserve_pages);
  w.end_object();
  w.key("thresholds").begin_object();
  w.kv("t_min", c.adaptive.t_min);
  w.kv("t_max", c.adaptive.t_max);
  w.kv("t_hdd", c.adaptive.t_hdd);
  w.kv("t_read", c.adaptive.t_read);
  w.kv("window_size", c.adaptive.window_size);
  w.kv("sample_size", c.adaptive.sample_size);
  w.kv("steps", c.adaptive.steps);
  w.kv("capacity_prose_variant", c.adaptive.capacity_prose_variant);
  w.end_object();
  w.key("devices").begin_object();
  auto dev = [&](const char* role, const DeviceModel& m) {
    w.key(role).begin_object();
    w.kv("capacity_pages", m.capacity_pages);
    w.kv("read_latency_us", m.read_latency_us);
    w.kv("write_latency_us", m.write_latency_us);
    w.kv("read_power_w", m.read_power_w);
    w.kv("write_power_w", m.write_power_w);
    w.kv("idle_power_w", m.idle_power_w);
    w.kv("mttf_hours", m.mttf_hours);
    w.kv("cost_per_gb_usd", m.cost_per_gb_usd);
    w.kv("endurance_writes_per_gb", m.endurance_writes_per_gb);
    w.end_object();
  };
  dev("dram", c.dram);
  dev("ro_ssd", c.ro_ssd);
  dev("wo_ssd", c.wo_ssd);
  dev("hdd", c.hdd);
  w.end_object();
  if (c.alpha)
    w.kv("alpha", *c.alpha);
  else
    w.kv_null("alpha");
  w.kv("eq2_verbatim", c.eq2_verbatim);
  w.kv("warmup_fraction", c.warmup_fraction);
  w.kv("max_error_fraction", c.max_error_fraction);
  w.end_object();
}

}  // namespace tica
