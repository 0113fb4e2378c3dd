// Acceptance suite: one line per criterion. Exit code = number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "tica/analytics.hpp"
#include "tica/engine.hpp"
#include "tica/runner.hpp"
#include "tica/runner_report.hpp"

using namespace tica;

namespace {

int failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
  std::cout << (ok ? "[PASS] " : "[FAIL] ") << name;
  if (!ok && !detail.empty()) std::cout << " -- " << detail;
  std::cout << std::endl;
  if (!ok) ++failures;
}

// --- 1. Oracle equivalence over the randomized corpus -----------------------
void criterion_oracle_equivalence() {
  const std::uint64_t kTraces = 1000;
  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 1; seed <= kTraces; ++seed) {
    std::string diff = corpus::run_equivalence_case(seed, 5000);
    if (!diff.empty()) {
      report("oracle equivalence (1000 randomized traces)", false, diff);
      return;
    }
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream detail;
  detail << "ran in " << secs << " s";
  bool ok = secs < 60.0;
  std::cout << "       corpus runtime: " << secs << " s" << std::endl;
  report("oracle equivalence (1000 randomized traces, < 60 s)", ok, detail.str());
}

// --- 2. Redundancy at every acknowledgment boundary --------------------------
void criterion_redundancy_safety() {
  std::uint64_t bad = 0;
  for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
    std::mt19937_64 rng(seed);
    corpus::Case c = corpus::make_case(rng, 5000);
    TicaEngine eng(corpus::to_engine_config(c.params));
    corpus::drive_engine(eng, c, [&](TicaEngine& e) {
      std::uint64_t counts[3];
      e.single_failure_counts(counts);
      bad += counts[0] + counts[1] + counts[2];
    });
    if (bad) {
      report("redundancy: no single-device failure loses dirty pages", false,
             "seed " + std::to_string(seed));
      return;
    }
  }
  report("redundancy: no single-device failure loses dirty pages", bad == 0);
}

// --- 3. EF endurance identity and WED amplification ordering ----------------
void criterion_ef_endurance_identity() {
  TicaConfig cfg;
  cfg.dram = default_dram_model(64);
  cfg.ro_ssd = default_ro_ssd_model(128);
  cfg.wo_ssd = default_wo_ssd_model(128);
  cfg.policy = PolicyKind::Ef;
  TicaEngine eng(cfg);
  double t = 0;
  const std::uint64_t writes = 100;  // < usable WO capacity: no evictions
  for (std::uint64_t p = 0; p < writes; ++p) {
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  double end = std::max(t, eng.quiesce_time());
  eng.finalize(end);
  RunStats s = eng.stats(std::max(end, eng.quiesce_time()));
  auto amplification = cwaf(s);
  bool identity = s.find_device("wo_ssd")->writes == writes &&
                  s.find_device("ro_ssd")->writes == s.flushes_completed &&
                  s.flushes_completed <= writes && amplification &&
                  *amplification == 2.0;
  std::ostringstream d1;
  d1 << "wo=" << s.find_device("wo_ssd")->writes << " ro=" << s.find_device("ro_ssd")->writes
     << " flushes=" << s.flushes_completed << " cwaf=" << (amplification ? *amplification : -1);
  report("EF identity: WO writes = user writes, CWAF = 2.0 exactly", identity, d1.str());

  auto run_policy = [](PolicyKind k) {
    ExperimentConfig rc;
    SyntheticSpec spec;
    spec.request_count = 30000;
    spec.read_fraction = 0.85;
    spec.working_set_pages = 3000;
    spec.locality = Locality::Zipf;
    spec.zipf_s = 0.9;
    spec.rng_seed = 23;
    rc.trace.synthetic = spec;
    rc.policy = k;
    rc.dram_pages = 40;
    rc.ro_pages = 160;
    rc.wo_pages = 160;
    return run_experiment(rc);
  };
  auto ef = run_policy(PolicyKind::Ef);
  auto wed = run_policy(PolicyKind::Wed);
  auto cwaf_ef = cwaf(ef.stats);
  auto cwaf_wed = cwaf(wed.stats);
  bool ordering = cwaf_ef && cwaf_wed && *cwaf_wed > *cwaf_ef;
  std::ostringstream d2;
  if (cwaf_ef && cwaf_wed) d2 << "wed=" << *cwaf_wed << " ef=" << *cwaf_ef;
  report("CWAF(WED) > CWAF(EF) on a read-dominant zipf trace", ordering, d2.str());
}

// --- 4. Analytic per-operation latency table --------------------------------
void criterion_latency_table() {
  DeviceModel ro = default_ro_ssd_model(), wo = default_wo_ssd_model();
  auto rows = compare_architectures(ro, wo);
  const auto& mixed = rows[2];
  const auto& split = rows[3];
  bool ok = true;
  std::ostringstream d;
  // mixed mirror writes at the slower member: the RO-SSD write latency
  if (mixed.write_buffer != ro.write_latency_us / ro.read_latency_us) ok = false;
  // the split architecture writes at the WO-SSD write latency
  if (split.write_buffer != wo.write_latency_us / ro.read_latency_us) ok = false;
  if (split.read_hit != 1.0) ok = false;
  if (rows[0].write_buffer != ro.write_latency_us / ro.read_latency_us) ok = false;
  if (rows[1].read_hit != wo.read_latency_us / ro.read_latency_us) ok = false;
  double ratio = mixed.write_buffer / split.write_buffer;
  if (ratio != ro.write_latency_us / wo.write_latency_us) ok = false;
  if (!(ratio == 10.0)) ok = false;  // the shipped ~10x RO/WO write gap
  d << "mixed/split write ratio = " << ratio;
  report("latency table: mirrored max / split min structure, 10x write gap", ok,
         d.str());
}

// --- 5. Reliability formulas -------------------------------------------------
void criterion_reliability() {
  DeviceModel dram = default_dram_model(), ro = default_ro_ssd_model(),
              wo = default_wo_ssd_model();
  bool ok = true;
  std::ostringstream d;
  ReliabilityResult r8 = reliability(dram, ro, wo, 0.8);
  for (double v : {r8.u_dram, r8.u_ro, r8.u_wo, r8.u_tica, r8.u_mirrored})
    if (!(std::isfinite(v) && v > 0.0 && v < 1.0)) ok = false;
  if (!(std::isfinite(r8.r_tica) && std::isfinite(r8.r_mirrored))) ok = false;
  double prev = 1.0;
  for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    ReliabilityResult r = reliability(dram, ro, wo, a);
    if (!(r.u_tica < prev)) ok = false;  // monotone when R_D > R_ro
    prev = r.u_tica;
  }
  long double x = 1.0L / (static_cast<long double>(wo.mttf_hours) * 365.0L * 24.0L);
  long double u = -std::expm1l(-x);
  double mirrored_expected = static_cast<double>(u * u);
  if (std::abs(r8.u_mirrored / mirrored_expected - 1.0) > 1e-12) ok = false;
  // The externally reported values are NOT reproduced by the formula; the
  // report must carry them as reference-only with the documented note.
  if (std::abs(r8.u_tica - kReferenceUnreliabilitySplit) <
      0.5 * kReferenceUnreliabilitySplit)
    ok = false;
  ExperimentConfig rc;
  SyntheticSpec spec;
  spec.request_count = 500;
  spec.read_fraction = 0.5;
  spec.working_set_pages = 100;
  spec.rng_seed = 1;
  rc.trace.synthetic = spec;
  RunOutput out = run_experiment(rc);
  ReportInputs in{out.resolved, out.workload, out.trace_skipped, out.stats};
  std::string rep = render_json_report(in);
  if (rep.find("reference_u_split") == std::string::npos) ok = false;
  if (rep.find("not derivable") == std::string::npos) ok = false;
  d << "u_tica(0.8)=" << r8.u_tica << " vs reference 1.27e-5 (documented gap)";
  report("reliability: bounds, monotonicity, mirrored identity, discrepancy note",
         ok, d.str());
}

// --- 6. Energy oracle --------------------------------------------------------
void criterion_energy_oracle() {
  bool ok = true;
  std::ostringstream d;
  for (std::uint64_t seed = 2000; seed < 2030 && ok; ++seed) {
    std::mt19937_64 rng(seed);
    corpus::Case c = corpus::make_case(rng, 3000);
    TicaEngine eng(corpus::to_engine_config(c.params));
    AccessLog log;
    eng.dram_device().set_recorder(&log);
    eng.ro_device().set_recorder(&log);
    eng.wo_device().set_recorder(&log);
    eng.hdd_device().set_recorder(&log);
    corpus::EngineRun run = corpus::drive_engine(eng, c, [](TicaEngine&) {});
    double direct = energy(run.stats);
    double oracle = energy_from_log(log, run.stats);
    double rel = std::abs(direct - oracle) / std::max(1e-300, std::abs(oracle));
    if (rel > 1e-9) {
      ok = false;
      d << "seed " << seed << " rel err " << rel;
    }
  }
  // zero-request run: the idle floor exactly
  RunStats s;
  s.total_sim_us = 1e6;
  auto mk = [&](const char* role, DeviceKind k, DeviceModel m) {
    DeviceSnapshot ds;
    ds.role = role;
    ds.kind = k;
    ds.model = std::move(m);
    return ds;
  };
  s.devices = {mk("dram", DeviceKind::Dram, default_dram_model()),
               mk("ro_ssd", DeviceKind::Ssd, default_ro_ssd_model()),
               mk("wo_ssd", DeviceKind::Ssd, default_wo_ssd_model()),
               mk("hdd", DeviceKind::Hdd, default_hdd_model())};
  double floor_j = energy(s);
  if (floor_j != (4.0 + 0.07 + 1.3)) {
    ok = false;
    d << " idle floor " << floor_j;
  }
  report("energy: formula equals event-log oracle (<= 1e-9), idle floor exact", ok,
         d.str());
}

// --- 7. Adaptive switching ----------------------------------------------------
void criterion_adaptive_switching() {
  // Sequential scan with read working set = 4 x DRAM pages.
  const std::uint64_t dram_pages = 32;   // usable 28, detector window 56
  const std::uint64_t scan_pages = 4 * dram_pages;
  std::vector<Request> trace;
  for (int cycle = 0; cycle < 6; ++cycle)
    for (std::uint64_t p = 0; p < scan_pages; ++p)
      trace.push_back({trace.size(), p, 1, Op::Read});

  TicaConfig cfg;
  cfg.dram = default_dram_model(dram_pages);
  cfg.ro_ssd = default_ro_ssd_model(140);
  cfg.wo_ssd = default_wo_ssd_model(140);
  cfg.policy = PolicyKind::Adaptive;
  TicaEngine adaptive(cfg);
  std::uint64_t window = TicaEngine::fill_params(cfg).window_size;
  std::uint64_t first_wed_op = 0;
  bool switched = false;
  double t = 0;
  std::uint64_t op_index = 0;
  for (const Request& r : trace) {
    PageOpResult res = adaptive.page_op(r.lba, r.op, t);
    t += res.latency_us;
    ++op_index;
    if (!switched && adaptive.policy() == PolicyMode::Wed) {
      switched = true;
      first_wed_op = op_index;
    }
  }
  double end = std::max(t, adaptive.quiesce_time());
  adaptive.finalize(end);
  RunStats a_stats = adaptive.stats(std::max(end, adaptive.quiesce_time()));

  cfg.policy = PolicyKind::Ef;
  TicaEngine ef(cfg);
  t = 0;
  for (const Request& r : trace) {
    PageOpResult res = ef.page_op(r.lba, r.op, t);
    t += res.latency_us;
  }
  end = std::max(t, ef.quiesce_time());
  ef.finalize(end);
  RunStats e_stats = ef.stats(std::max(end, ef.quiesce_time()));

  bool ok = switched && first_wed_op <= 2 * window &&
            a_stats.hit_ratio() >= e_stats.hit_ratio();
  std::ostringstream d;
  d << "switch at op " << first_wed_op << " (window " << window << "), hit "
    << a_stats.hit_ratio() << " vs EF " << e_stats.hit_ratio();
  report("adaptive: scan trace switches EF->WED within 2 windows, hit ratio >= EF",
         ok, d.str());

  // write-only trace: the policy never leaves EF
  cfg.policy = PolicyKind::Adaptive;
  TicaEngine wo_only(cfg);
  t = 0;
  bool stayed_ef = true;
  for (std::uint64_t i = 0; i < 2000; ++i) {
    PageOpResult res = wo_only.page_op(i % 200, Op::Write, t);
    t += res.latency_us;
    if (wo_only.policy() != PolicyMode::Ef) stayed_ef = false;
  }
  RunStats w_stats = wo_only.stats(std::max(t, wo_only.quiesce_time()));
  report("adaptive: write-only trace never leaves EF",
         stayed_ef && w_stats.policy_switches == 0);
}

// --- 8. Device cost ordering ---------------------------------------------------
void criterion_cost() {
  double split = 0.74 + 0.842;
  double mirrored = 2 * 0.842;
  bool ok = split < mirrored;
  std::ostringstream d;
  d << split << " < " << mirrored << " $/GB for the SSD pair";
  report("cost: RO+WO pair is cheaper than the mirrored WO pair", ok, d.str());
}

// --- 9. Determinism -------------------------------------------------------------
void criterion_determinism() {
  ExperimentConfig cfg;
  SyntheticSpec spec;
  spec.request_count = 20000;
  spec.read_fraction = 0.7;
  spec.working_set_pages = 4000;
  spec.locality = Locality::Zipf;
  spec.zipf_s = 1.0;
  spec.rng_seed = 31;
  cfg.trace.synthetic = spec;
  cfg.policy = PolicyKind::Adaptive;
  cfg.seed = 31;
  RunOutput a = run_experiment(cfg);
  RunOutput b = run_experiment(cfg);
  ReportInputs ia{a.resolved, a.workload, a.trace_skipped, a.stats};
  ReportInputs ib{b.resolved, b.workload, b.trace_skipped, b.stats};
  std::string ra = render_json_report(ia);
  std::string rb = render_json_report(ib);
  bool ok = !ra.empty() && ra == rb &&
            render_csv_report(ia) == render_csv_report(ib);
  report("determinism: identical config + seed produce byte-identical reports", ok);
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_redundancy_safety();
  criterion_ef_endurance_identity();
  criterion_latency_table();
  criterion_reliability();
  criterion_energy_oracle();
  criterion_adaptive_switching();
  criterion_cost();
  criterion_determinism();
  if (failures == 0)
    std::cout << "all acceptance criteria passed" << std::endl;
  else
    std::cout << failures << " acceptance criteria FAILED" << std::endl;
  return failures;
}
