#include <gtest/gtest.h>

#include <random>

#include "tica/device.hpp"

using namespace tica;

namespace {

DeviceModel test_model(double rlat, double wlat) {
  DeviceModel m = default_wo_ssd_model(100);
  m.name = "dev";
  m.read_latency_us = rlat;
  m.write_latency_us = wlat;
  return m;
}

}  // namespace

TEST(Device, SingleReadOnIdleDevice) {
  DeviceState d(test_model(100, 50));
  EXPECT_EQ(d.access(Op::Read, 1, 0), 100.0);
  EXPECT_EQ(d.busy_us(), 100.0);
  EXPECT_EQ(d.reads(), 1u);
}

TEST(Device, BackToBackWritesSerialize) {
  DeviceState d(test_model(100, 80));
  EXPECT_EQ(d.access(Op::Write, 1, 0), 80.0);
  EXPECT_EQ(d.access(Op::Write, 1, 0), 160.0);  // queued behind the first
  EXPECT_EQ(d.writes(), 2u);
  EXPECT_EQ(d.busy_us(), 160.0);
}

TEST(Device, MultiPageAccessScalesService) {
  DeviceState d(test_model(10, 25));
  EXPECT_EQ(d.access(Op::Write, 4, 7), 7 + 100.0);
  EXPECT_EQ(d.writes(), 4u);
}

TEST(Device, RandomizedBusyMatchesBruteForceReplay) {
  std::mt19937_64 rng(21);
  DeviceState d(test_model(13, 29));
  // independent accumulation of the same sequence
  double busy = 0, release = 0;
  std::uint64_t reads = 0, writes = 0;
  double t = 0;
  for (int i = 0; i < 2000; ++i) {
    t += rng() % 40;
    bool wr = rng() % 2 == 0;
    std::uint64_t pages = 1 + rng() % 3;
    double completion = d.access(wr ? Op::Write : Op::Read, pages, t);
    double service = (wr ? 29.0 : 13.0) * pages;
    double begin = std::max(t, release);
    release = begin + service;
    busy += service;
    (wr ? writes : reads) += pages;
    ASSERT_EQ(completion, release);
    ASSERT_GE(completion, begin);  // completions totally ordered
  }
  EXPECT_EQ(d.busy_us(), busy);
  EXPECT_EQ(d.reads(), reads);
  EXPECT_EQ(d.writes(), writes);
}

TEST(Device, IdleTimeComplementsBusyTime) {
  DeviceState d(test_model(100, 100));
  EXPECT_EQ(d.idle_time(1000), 1000.0);  // untouched device
  d.access(Op::Read, 4, 0);
  EXPECT_EQ(d.idle_time(1000), 600.0);
  EXPECT_EQ(d.idle_time(1000) + d.busy_us(), 1000.0);
  EXPECT_THROW(d.idle_time(100), AccountingError);
}

TEST(Device, EnduranceFractionFromRatedWrites) {
  DeviceModel m = test_model(10, 10);
  m.capacity_pages = 262144;  // 1 GiB of 4K pages
  m.endurance_writes_per_gb = 100;
  DeviceState d(m);
  EXPECT_EQ(d.endurance_consumed(4096), 0.0);
  // exactly the rated total: 100 GiB written into 1 GiB capacity
  for (int i = 0; i < 100; ++i) d.access(Op::Write, 262144, 0);
  EXPECT_NEAR(d.endurance_consumed(4096), 1.0, 1e-12);
}

TEST(Device, EnduranceHandComputation) {
  DeviceModel m = test_model(10, 10);
  m.capacity_pages = 1000;
  m.endurance_writes_per_gb = 500;
  DeviceState d(m);
  d.access(Op::Write, 12345, 0);
  // (12345 * 4096 / 2^30) / (500 * 1000 * 4096 / 2^30)
  double expected = 12345.0 / (500.0 * 1000.0);
  EXPECT_NEAR(d.endurance_consumed(4096), expected, 1e-15);
}

TEST(Device, UnlimitedEnduranceReportsZero) {
  DeviceState d(default_dram_model(64));
  d.access(Op::Write, 100000, 0);
  EXPECT_EQ(d.endurance_consumed(4096), 0.0);
}

TEST(Device, DefaultModelsCarryDatasheetValues) {
  DeviceModel dram = default_dram_model();
  EXPECT_EQ(dram.mttf_hours, 4.0e6);
  EXPECT_EQ(dram.cost_per_gb_usd, 7.875);
  EXPECT_EQ(dram.read_power_w, 4.0);
  EXPECT_EQ(dram.write_power_w, 4.0);
  EXPECT_EQ(dram.idle_power_w, 4.0);
  EXPECT_EQ(dram.endurance_writes_per_gb, 0.0);

  DeviceModel ro = default_ro_ssd_model();
  EXPECT_EQ(ro.mttf_hours, 2.0e6);
  EXPECT_EQ(ro.cost_per_gb_usd, 0.74);
  EXPECT_EQ(ro.endurance_writes_per_gb, 1171.0);
  EXPECT_EQ(ro.read_power_w, 3.3);
  EXPECT_EQ(ro.write_power_w, 3.4);
  EXPECT_EQ(ro.idle_power_w, 0.07);

  DeviceModel wo = default_wo_ssd_model();
  EXPECT_EQ(wo.mttf_hours, 2.0e6);
  EXPECT_EQ(wo.cost_per_gb_usd, 0.842);
  EXPECT_EQ(wo.endurance_writes_per_gb, 6416.0);
  EXPECT_EQ(wo.read_power_w, 2.4);
  EXPECT_EQ(wo.write_power_w, 3.1);
  EXPECT_EQ(wo.idle_power_w, 1.3);

  // expected latency ordering across the shipped defaults
  EXPECT_LE(ro.read_latency_us, wo.read_latency_us);
  EXPECT_LT(wo.write_latency_us, ro.write_latency_us);
  EXPECT_GT(default_hdd_model().read_latency_us, wo.read_latency_us * 10);
}

TEST(Device, ModelValidationRejectsBadParameters) {
  DeviceModel m = test_model(10, 10);
  m.capacity_pages = 0;
  EXPECT_THROW(m.validate(), ConfigError);
  m = test_model(0, 10);
  EXPECT_THROW(m.validate(), ConfigError);
  m = test_model(10, 10);
  m.mttf_hours = 0;
  EXPECT_THROW(m.validate(), ConfigError);
}

TEST(Device, AccessLogRecordsEveryEvent) {
  DeviceState d(test_model(5, 9));
  AccessLog log;
  d.set_recorder(&log);
  d.access(Op::Read, 2, 0);
  d.access(Op::Write, 1, 0);
  ASSERT_EQ(log.size(), 2u);
  EXPECT_EQ(log[0].pages, 2u);
  EXPECT_EQ(log[0].latency_us, 10.0);
  EXPECT_EQ(log[1].power_w, test_model(5, 9).write_power_w);
}
