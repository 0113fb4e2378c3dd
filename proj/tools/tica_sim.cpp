// tica_sim: trace-driven simulator for a three-level hybrid I/O cache
// (DRAM + read-optimized SSD + write-optimized SSD) with baseline
// architectures, policy switching, and energy/endurance/reliability reports.
//
// Subcommands: run, sweep, gen-trace, stats, compare-arch, audit.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "tica/analytics.hpp"
#include "tica/config.hpp"
#include "tica/runner.hpp"
#include "tica/runner_report.hpp"
#include "tica/trace.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTrace = 3;
constexpr int kExitInvariant = 4;

using namespace tica;

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output path: " + path);
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

// "k1=v1,k2=v2" synthetic spec, e.g.
//   count=100000,read_fraction=0.7,pages=50000,locality=zipf,s=0.9,seed=7
SyntheticSpec parse_synthetic_arg(const std::string& arg) {
  SyntheticSpec s;
  s.request_count = 10000;
  s.working_set_pages = 10000;
  std::stringstream ss(arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw ConfigError("synthetic: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (key == "count" || key == "request_count")
      s.request_count = std::stoull(value);
    else if (key == "read_fraction")
      s.read_fraction = std::stod(value);
    else if (key == "pages" || key == "working_set_pages")
      s.working_set_pages = std::stoull(value);
    else if (key == "locality")
      s.locality = value == "zipf" ? Locality::Zipf : Locality::Uniform;
    else if (key == "s" || key == "zipf_s") {
      s.zipf_s = std::stod(value);
      s.locality = Locality::Zipf;
    } else if (key == "seed")
      s.rng_seed = std::stoull(value);
    else if (key == "page_size")
      s.page_size_bytes = std::stoull(value);
    else
      throw ConfigError("synthetic: unknown key '" + key + "'");
  }
  return s;
}

TraceFormat format_from_string(const std::string& f) {
  if (f == "msr") return TraceFormat::MsrCsv;
  if (f == "jsonl") return TraceFormat::NativeJsonLines;
  throw ConfigError("unknown trace format: " + f);
}

// Dotted override used by sweeps; values are plain strings from the grid.
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "policy")
    cfg.policy = policy_from_string(value);
  else if (key == "architecture")
    cfg.architecture = architecture_from_string(value);
  else if (key == "clock")
    cfg.clock = clock_from_string(value);
  else if (key == "seed")
    cfg.seed = std::stoull(value);
  else if (key == "alpha")
    cfg.alpha = value == "observed" ? std::optional<double>() : std::stod(value);
  else if (key == "dram_fraction")
    cfg.dram_fraction = std::stod(value);
  else if (key == "ssd_fraction")
    cfg.ssd_fraction = std::stod(value);
  else if (key == "dram_pages")
    cfg.dram_pages = std::stoull(value);
  else if (key == "ro_pages")
    cfg.ro_pages = std::stoull(value);
  else if (key == "wo_pages")
    cfg.wo_pages = std::stoull(value);
  else if (key == "warmup_fraction")
    cfg.warmup_fraction = std::stod(value);
  else if (key == "t_min")
    cfg.adaptive.t_min = std::stod(value);
  else if (key == "t_max")
    cfg.adaptive.t_max = std::stod(value);
  else if (key == "t_hdd")
    cfg.adaptive.t_hdd = std::stod(value);
  else if (key == "t_read")
    cfg.adaptive.t_read = std::stod(value);
  else if (key == "trace")
    cfg.trace.path = value;
  else if (key == "format")
    cfg.trace.format = format_from_string(value);
  else if (key == "synthetic_seed") {
    if (!cfg.trace.synthetic) throw ConfigError("sweep: no synthetic spec to override");
    cfg.trace.synthetic->rng_seed = std::stoull(value);
  } else
    throw ConfigError("sweep: unknown parameter '" + key + "'");
}

struct CommonFlags {
  std::string config_path;
  std::string trace_path;
  std::string trace_format = "msr";
  std::string synthetic;
  std::string architecture;
  std::string policy;
  std::string clock;
  std::string output_path;
  std::string output_format;
  std::string alpha;
  double dram_fraction = -1, ssd_fraction = -1;
  std::int64_t dram_pages = -1, ro_pages = -1, wo_pages = -1;
  double warmup_fraction = -1;
  double t_min = -1, t_max = -1, t_hdd = -1, t_read = -1;
  std::int64_t page_size = -1;
  std::int64_t seed = -1;
  bool eq2_verbatim = false;
  bool prose_variant = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config_path, "JSON config file (flags override it)");
  cmd->add_option("--trace", f.trace_path, "trace file path");
  cmd->add_option("--format", f.trace_format, "trace format: msr | jsonl");
  cmd->add_option("--synthetic", f.synthetic,
                  "synthetic spec, e.g. count=10000,read_fraction=0.7,pages=5000");
  cmd->add_option("--architecture", f.architecture,
                  "tica | mirrored_wb | single_ssd | raid1_ro | raid1_wo | raid1_mixed");
  cmd->add_option("--policy", f.policy, "ef | wed | adaptive");
  cmd->add_option("--clock", f.clock, "closed | open");
  cmd->add_option("--seed", f.seed, "run seed (echoed in reports)");
  cmd->add_option("--page-size", f.page_size, "cache page size in bytes");
  cmd->add_option("--dram-fraction", f.dram_fraction, "DRAM size as fraction of working set");
  cmd->add_option("--ssd-fraction", f.ssd_fraction, "per-SSD size as fraction of working set");
  cmd->add_option("--dram-pages", f.dram_pages, "absolute DRAM pages (overrides fraction)");
  cmd->add_option("--ro-pages", f.ro_pages, "absolute RO-SSD pages");
  cmd->add_option("--wo-pages", f.wo_pages, "absolute WO-SSD pages");
  cmd->add_option("--warmup-fraction", f.warmup_fraction,
                  "prefix of requests applied to state but excluded from stats");
  cmd->add_option("--alpha", f.alpha, "reliability weight in [0,1], or 'observed'");
  cmd->add_option("--t-min", f.t_min, "EQ hit-ratio threshold");
  cmd->add_option("--t-max", f.t_max, "combined hit-ratio threshold");
  cmd->add_option("--t-hdd", f.t_hdd, "disk-read ratio threshold");
  cmd->add_option("--t-read", f.t_read, "read-hit ratio threshold");
  cmd->add_flag("--eq2-verbatim", f.eq2_verbatim,
                "charge the DRAM idle energy term at the RO-SSD idle power");
  cmd->add_flag("--capacity-prose-variant", f.prose_variant,
                "low-capacity detector variant: high DRAM hit ratio forces EF");
  cmd->add_option("--output", f.output_path, "output path ('-' = stdout)");
  cmd->add_option("--output-format", f.output_format, "json | csv");
}

ExperimentConfig build_config(const CommonFlags& f) {
  ExperimentConfig cfg;
  std::string config_path = f.config_path;
  if (config_path.empty()) {
    if (const char* env = std::getenv("TICA_SIM_CONFIG")) config_path = env;
  }
  if (!config_path.empty()) cfg = load_config_file(config_path);
  if (!f.trace_path.empty()) {
    cfg.trace.path = f.trace_path;
    cfg.trace.synthetic.reset();
    cfg.trace.format = format_from_string(f.trace_format);
  }
  if (!f.synthetic.empty()) {
    cfg.trace.synthetic = parse_synthetic_arg(f.synthetic);
    cfg.trace.path.reset();
  }
  if (!f.architecture.empty()) cfg.architecture = architecture_from_string(f.architecture);
  if (!f.policy.empty()) cfg.policy = policy_from_string(f.policy);
  if (!f.clock.empty()) cfg.clock = clock_from_string(f.clock);
  if (f.seed >= 0) cfg.seed = static_cast<std::uint64_t>(f.seed);
  if (f.page_size > 0) cfg.page_size = static_cast<std::uint64_t>(f.page_size);
  if (f.dram_fraction >= 0) cfg.dram_fraction = f.dram_fraction;
  if (f.ssd_fraction >= 0) cfg.ssd_fraction = f.ssd_fraction;
  if (f.dram_pages >= 0) cfg.dram_pages = static_cast<std::uint64_t>(f.dram_pages);
  if (f.ro_pages >= 0) cfg.ro_pages = static_cast<std::uint64_t>(f.ro_pages);
  if (f.wo_pages >= 0) cfg.wo_pages = static_cast<std::uint64_t>(f.wo_pages);
  if (f.warmup_fraction >= 0) cfg.warmup_fraction = f.warmup_fraction;
  if (!f.alpha.empty())
    cfg.alpha = f.alpha == "observed" ? std::optional<double>() : std::stod(f.alpha);
  if (f.t_min >= 0) cfg.adaptive.t_min = f.t_min;
  if (f.t_max >= 0) cfg.adaptive.t_max = f.t_max;
  if (f.t_hdd >= 0) cfg.adaptive.t_hdd = f.t_hdd;
  if (f.t_read >= 0) cfg.adaptive.t_read = f.t_read;
  if (f.eq2_verbatim) cfg.eq2_verbatim = true;
  if (f.prose_variant) cfg.adaptive.capacity_prose_variant = true;
  if (!f.output_path.empty()) cfg.output_path = f.output_path;
  if (!f.output_format.empty())
    cfg.output_format = f.output_format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  // The synthetic trace inherits the run page size unless it set its own.
  if (cfg.trace.synthetic && f.page_size > 0)
    cfg.trace.synthetic->page_size_bytes = cfg.page_size;
  return cfg;
}

std::string render_report(const ExperimentConfig& cfg, const RunOutput& out) {
  ReportInputs in{out.resolved, out.workload, out.trace_skipped, out.stats};
  return cfg.output_format == ReportFormat::Csv ? render_csv_report(in)
                                                : render_json_report(in);
}

int cmd_run(const CommonFlags& flags) {
  ExperimentConfig cfg = build_config(flags);
  RunOutput out = run_experiment(cfg);
  write_output(cfg.output_path, render_report(cfg, out));
  return 0;
}

const char* const kAuditInvariants[] = {
    "directory/LRU consistency",
    "capacity bounds (DRAM partitions, SSD occupancy, write-cache size)",
    "flush queue matches DRAM write partition",
    "ghost queue disjoint from cache and within capacity",
    "dirty-page redundancy (>= 2 copies at acknowledgment boundaries)",
    "busy/idle time conservation per device",
    "hit accounting (hits + HDD reads = read page ops)",
};

int cmd_audit(const CommonFlags& flags) {
  ExperimentConfig cfg = build_config(flags);
  RunProgress progress;
  try {
    RunOutput out = run_experiment(cfg, {.audit = true}, &progress);
    for (const char* inv : kAuditInvariants) std::cout << "PASS " << inv << "\n";
    if (!flags.output_path.empty())
      write_output(cfg.output_path, render_report(cfg, out));
    return 0;
  } catch (const InvariantViolation& e) {
    std::cout << "FAIL " << e.what() << " (request " << progress.request_index << ")\n";
    // Reproduction prefix: the trace up to and including the failing request.
    std::cerr << "# repro prefix (jsonl), " << progress.request_index + 1 << " requests\n";
    std::vector<Request> trace = load_requests(cfg);
    for (std::uint64_t i = 0; i <= progress.request_index && i < trace.size(); ++i)
      std::cerr << to_jsonl(trace[i]) << "\n";
    return kExitInvariant;
  }
}

struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

int cmd_sweep(const CommonFlags& flags, const std::vector<std::string>& axis_args,
              unsigned jobs) {
  ExperimentConfig base = build_config(flags);
  std::vector<SweepAxis> axes;
  for (const auto& arg : axis_args) {
    auto eq = arg.find('=');
    if (eq == std::string::npos)
      throw ConfigError("sweep: expected key=v1,v2,... got '" + arg + "'");
    SweepAxis axis;
    axis.key = arg.substr(0, eq);
    std::stringstream ss(arg.substr(eq + 1));
    std::string v;
    while (std::getline(ss, v, ',')) axis.values.push_back(v);
    if (axis.values.empty()) throw ConfigError("sweep: empty value list for " + axis.key);
    axes.push_back(std::move(axis));
  }
  if (axes.empty()) throw ConfigError("sweep: at least one --sweep axis required");

  std::size_t points = 1;
  for (const auto& a : axes) points *= a.values.size();

  struct Row {
    std::vector<std::string> values;
    std::string csv;
    std::string error;
  };
  std::vector<Row> rows(points);

  auto run_point = [&](std::size_t idx) {
    std::size_t rem = idx;
    ExperimentConfig cfg = base;
    Row& row = rows[idx];
    try {
      for (const auto& a : axes) {
        const std::string& v = a.values[rem % a.values.size()];
        rem /= a.values.size();
        row.values.push_back(v);
        apply_override(cfg, a.key, v);
      }
      RunOutput out = run_experiment(cfg);
      ReportInputs in{out.resolved, out.workload, out.trace_skipped, out.stats};
      row.csv = report_csv_row(in);
    } catch (const std::exception& e) {
      while (row.values.size() < axes.size()) row.values.push_back("");
      row.error = e.what();
    }
  };

  if (jobs <= 1) {
    for (std::size_t i = 0; i < points; ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mu;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t i;
          {
            std::lock_guard<std::mutex> lock(mu);
            if (next >= points) return;
            i = next++;
          }
          run_point(i);
        }
      });
    for (auto& th : pool) th.join();
  }

  std::string outbuf;
  for (const auto& a : axes) outbuf += a.key + ",";
  const auto& cols = report_csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) outbuf += cols[i] + ",";
  outbuf += "status,error\n";
  for (const auto& row : rows) {
    for (const auto& v : row.values) outbuf += v + ",";
    if (row.error.empty()) {
      outbuf += row.csv + ",ok,\n";
    } else {
      outbuf += std::string(cols.size(), ',');
      std::string msg = row.error;
      for (auto& ch : msg)
        if (ch == ',' || ch == '\n') ch = ';';
      outbuf += "error," + msg + "\n";
    }
  }
  write_output(base.output_path, outbuf);
  return 0;
}

int cmd_gen_trace(const std::string& spec_arg, const std::string& out_path) {
  SyntheticSpec spec = parse_synthetic_arg(spec_arg);
  std::vector<Request> trace = gen_synthetic(spec);
  if (out_path == "-")
    write_jsonl(trace, std::cout);
  else
    write_jsonl_file(trace, out_path);
  return 0;
}

int cmd_stats(const std::string& path, const std::string& format,
              std::uint64_t page_size) {
  LoadReport rep = load_trace(path, format_from_string(format), page_size);
  WorkloadStats s = trace_stats(rep.requests, page_size);
  JsonWriter w;
  w.begin_object();
  w.kv("path", path);
  w.kv("total_requests", s.total_requests);
  w.kv("read_requests", s.read_requests);
  w.kv("write_requests", s.write_requests);
  w.kv("total_bytes", s.total_bytes);
  w.kv("working_set_pages", s.working_set_pages);
  w.kv("read_working_set_pages", s.read_working_set_pages);
  w.kv("lines_skipped", rep.skipped);
  w.end_object();
  std::cout << w.str() << "\n";
  return 0;
}

int cmd_compare_arch(const CommonFlags& flags, bool csv) {
  ExperimentConfig cfg = build_config(flags);
  auto rows = compare_architectures(cfg.ro_ssd, cfg.wo_ssd);
  if (csv) {
    std::string out = "architecture,read_hit,write_buffer,read_miss_fill,write_back\n";
    for (const auto& r : rows)
      out += r.architecture + "," + format_double(r.read_hit) + "," +
             format_double(r.write_buffer) + "," + format_double(r.read_miss_fill) + "," +
             format_double(r.write_back) + "\n";
    write_output(flags.output_path.empty() ? "-" : flags.output_path, out);
  } else {
    JsonWriter w;
    w.begin_object();
    w.kv("normalized_to", "ro_ssd read latency");
    w.key("rows").begin_array();
    for (const auto& r : rows) {
      w.begin_object();
      w.kv("architecture", r.architecture);
      w.kv("read_hit", r.read_hit);
      w.kv("write_buffer", r.write_buffer);
      w.kv("read_miss_fill", r.read_miss_fill);
      w.kv("write_back", r.write_back);
      w.end_object();
    }
    w.end_array();
    w.end_object();
    write_output(flags.output_path.empty() ? "-" : flags.output_path, w.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"three-level hybrid I/O cache simulator"};
  app.require_subcommand(1);

  CommonFlags run_flags, audit_flags, sweep_flags, arch_flags;
  std::vector<std::string> sweep_axes;
  unsigned sweep_jobs = 1;
  std::string gen_spec, gen_out = "-";
  std::string stats_path, stats_format = "msr";
  std::int64_t stats_page_size = static_cast<std::int64_t>(kDefaultPageSize);
  bool arch_csv = false;

  auto* run = app.add_subcommand("run", "run one experiment and emit a report");
  add_common_flags(run, run_flags);

  auto* audit = app.add_subcommand(
      "audit", "run with full invariant checking; dumps a repro prefix on failure");
  add_common_flags(audit, audit_flags);

  auto* sweep = app.add_subcommand("sweep", "run a parameter grid, one CSV row per point");
  add_common_flags(sweep, sweep_flags);
  sweep->add_option("--sweep", sweep_axes, "axis as key=v1,v2,... (repeatable)")
      ->required();
  sweep->add_option("--jobs", sweep_jobs, "parallel sweep workers");

  auto* gen = app.add_subcommand("gen-trace", "generate a synthetic trace (jsonl)");
  gen->add_option("--spec", gen_spec, "synthetic spec (see run --synthetic)")->required();
  gen->add_option("-o,--output", gen_out, "output path ('-' = stdout)");

  auto* stats = app.add_subcommand("stats", "workload characteristics of a trace");
  stats->add_option("--trace", stats_path, "trace file")->required();
  stats->add_option("--format", stats_format, "msr | jsonl");
  stats->add_option("--page-size", stats_page_size, "page size in bytes");

  auto* arch = app.add_subcommand("compare-arch",
                                  "analytic per-operation latency of two-SSD layouts");
  add_common_flags(arch, arch_flags);
  arch->add_flag("--csv", arch_csv, "emit CSV instead of JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_flags);
    if (audit->parsed()) return cmd_audit(audit_flags);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, sweep_axes, sweep_jobs);
    if (gen->parsed()) return cmd_gen_trace(gen_spec, gen_out);
    if (stats->parsed())
      return cmd_stats(stats_path, stats_format,
                       static_cast<std::uint64_t>(stats_page_size));
    if (arch->parsed()) return cmd_compare_arch(arch_flags, arch_csv);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TraceError& e) {
    std::cerr << "trace error: " << e.what() << "\n";
    return kExitTrace;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
