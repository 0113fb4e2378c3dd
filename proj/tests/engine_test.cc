#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "tica/engine.hpp"

using namespace tica;

namespace {

// Small engine: usable DRAM 16 (def 3, read capacity 13), usable SSDs 16.
TicaConfig small_config(PolicyKind policy = PolicyKind::Ef) {
  TicaConfig cfg;
  cfg.dram = default_dram_model(20);
  cfg.ro_ssd = default_ro_ssd_model(20);
  cfg.wo_ssd = default_wo_ssd_model(20);
  cfg.hdd = default_hdd_model();
  cfg.policy = policy;
  return cfg;
}

// Same but with flushes that never complete within the test horizon.
TicaConfig slow_flush_config(PolicyKind policy = PolicyKind::Ef) {
  TicaConfig cfg = small_config(policy);
  cfg.ro_ssd.write_latency_us = 1e7;
  return cfg;
}

}  // namespace

TEST(Lookup, PriorityAndMiss) {
  TicaEngine eng(small_config());
  EXPECT_EQ(eng.lookup(3), Level::Miss);

  eng.page_op(5, Op::Write, 0);            // ack 90, flush completes at 990
  EXPECT_EQ(eng.lookup(5), Level::Dram);   // write-partition copy wins lookup
  EXPECT_TRUE(eng.in_dram_write(5));

  eng.page_op(99, Op::Read, 1000);         // advances background flushes
  EXPECT_TRUE(eng.in_ro(5));
  EXPECT_TRUE(eng.in_wo(5));
  EXPECT_FALSE(eng.in_dram_write(5));
  EXPECT_EQ(eng.lookup(5), Level::RoSsd);  // RO beats WO when both hold it
}

TEST(HandleWrite, CleanCacheCriticalPath) {
  TicaEngine eng(small_config());
  PageOpResult r = eng.page_op(1, Op::Write, 0);
  EXPECT_EQ(r.served_by, ServedBy::WriteBuffered);
  // max(DRAM write, WO-SSD write) with both devices idle
  EXPECT_EQ(r.latency_us, 90.0);
  EXPECT_TRUE(eng.in_dram_write(1));
  EXPECT_TRUE(eng.in_wo(1));
  EXPECT_TRUE(eng.is_dirty(1));
  EXPECT_EQ(eng.flush_pending(), 1u);
}

TEST(HandleWrite, OverwriteTrimsStaleSsdCopies) {
  TicaEngine eng(small_config());
  eng.page_op(5, Op::Write, 0);
  eng.page_op(99, Op::Read, 1000);  // flush done: 5 now in RO and WO
  ASSERT_TRUE(eng.in_ro(5));
  std::uint64_t ro_trims = eng.ro_device().trims();
  std::uint64_t wo_trims = eng.wo_device().trims();
  eng.page_op(5, Op::Write, 10000);
  EXPECT_EQ(eng.ro_device().trims(), ro_trims + 1);
  EXPECT_EQ(eng.wo_device().trims(), wo_trims + 1);
  EXPECT_TRUE(eng.in_wo(5));    // rewritten copy
  EXPECT_FALSE(eng.in_ro(5));   // stale RO copy gone until the next flush
}

TEST(HandleWrite, WoCapacityPlusOneEvictsExactlyOneVictim) {
  TicaEngine eng(small_config());
  const std::uint64_t w = eng.usable_wo() + 1;
  std::uint64_t victim_evictions = 0;
  double t = 0;
  for (std::uint64_t p = 0; p < w; ++p) {
    PageOpResult r = eng.page_op(1000 + p, Op::Write, t);
    t += r.latency_us;
    for (const auto& e : r.evictions)
      if (e.dest == EvictDest::Hdd || e.dest == EvictDest::Dropped) ++victim_evictions;
  }
  EXPECT_EQ(victim_evictions, 1u);
  EXPECT_LE(eng.wo_occupancy(), eng.usable_wo());
}

TEST(HandleWrite, DirtyVictimWritesBackBeforeDiscard) {
  TicaEngine eng(small_config());
  double t = 0;
  for (std::uint64_t p = 0; p < eng.usable_wo() + 1; ++p) {
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  // the victim was flushed into the RO-SSD before eviction: one HDD
  // write-back plus a TRIM on each SSD
  EXPECT_EQ(eng.hdd_device().writes(), 1u);
  EXPECT_GE(eng.ro_device().trims(), 1u);
  EXPECT_GE(eng.wo_device().trims(), 1u);
}

TEST(HandleRead, MissOnEmptyCacheFaultsFromHdd) {
  TicaEngine eng(small_config());
  PageOpResult r = eng.page_op(42, Op::Read, 0);
  EXPECT_EQ(r.served_by, ServedBy::HddMiss);
  EXPECT_EQ(r.latency_us, 5000.0);
  EXPECT_TRUE(eng.in_dram_read(42));
}

TEST(HandleRead, RoHitTouchesBothSsdQueues) {
  TicaEngine eng(small_config());
  eng.page_op(5, Op::Write, 0);
  eng.page_op(6, Op::Write, 90);
  eng.page_op(99, Op::Read, 5000);  // both flushes complete
  ASSERT_TRUE(eng.in_ro(5));
  ASSERT_TRUE(eng.in_ro(6));
  ASSERT_EQ(eng.lru_wo().order().front(), 6u);

  PageOpResult r = eng.page_op(5, Op::Read, 20000);
  EXPECT_EQ(r.served_by, ServedBy::RoSsdHit);
  EXPECT_EQ(r.latency_us, 90.0);
  EXPECT_EQ(eng.lru_ro().order().front(), 5u);
  EXPECT_EQ(eng.lru_wo().order().front(), 5u);  // WO recency refreshed too
}

TEST(HandleRead, WoHitTouchesOnlyWoQueue) {
  TicaEngine eng(small_config(PolicyKind::Wed));
  // WED copy: pages enter the WO-SSD without ever being in the RO-SSD
  std::uint64_t cap = eng.read_capacity();
  double t = 0;
  for (std::uint64_t p = 0; p < cap + 1; ++p) {
    PageOpResult r = eng.page_op(p, Op::Read, t);
    t += r.latency_us;
  }
  ASSERT_TRUE(eng.in_wo(0));  // evicted read page copied to WO
  ASSERT_FALSE(eng.in_ro(0));
  PageOpResult r = eng.page_op(0, Op::Read, t);
  EXPECT_EQ(r.served_by, ServedBy::WoSsdHit);
  EXPECT_EQ(eng.lru_wo().order().front(), 0u);
}

TEST(HandleRead, EfEvictionsFillGhostQueueInLruOrder) {
  TicaEngine eng(small_config(PolicyKind::Ef));
  const std::uint64_t cap = eng.read_capacity();
  double t = 0;
  for (std::uint64_t p = 0; p < cap; ++p) {
    PageOpResult r = eng.page_op(p, Op::Read, t);
    t += r.latency_us;
  }
  // brute-force LRU oracle: distinct reads evict in insertion order
  std::vector<Page> expected_evictions;
  std::vector<Eviction> seen;
  for (std::uint64_t p = cap; p < cap + 8; ++p) {
    expected_evictions.push_back(p - cap);
    PageOpResult r = eng.page_op(p, Op::Read, t);
    t += r.latency_us;
    for (const auto& e : r.evictions) seen.push_back(e);
  }
  ASSERT_EQ(seen.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(seen[i].page, expected_evictions[i]);
    EXPECT_EQ(seen[i].dest, EvictDest::GhostQueue);
  }
  std::vector<Page> eq_newest_first(eng.eq().order().begin(), eng.eq().order().end());
  std::vector<Page> expected_eq(expected_evictions.rbegin(), expected_evictions.rend());
  EXPECT_EQ(eq_newest_first, expected_eq);
}

TEST(WriteCache, GrowthMatchesFormulaAndDecelerates) {
  TicaEngine eng(slow_flush_config());
  const double def = static_cast<double>(eng.def_write_cache_pages());
  const double cap = (16.0 - 1.0) / def;
  double w = 1.0;
  std::vector<double> grow_steps;
  double t = 0;
  for (std::uint64_t p = 0; p < 14; ++p) {
    // formula oracle, replayed independently of the engine
    std::uint64_t occ = p;  // one page per write, nothing flushes
    if (occ >= static_cast<std::uint64_t>(std::floor(w * def))) {
      double nw = std::min(w + std::exp2(-(w - 1.0)), cap);
      grow_steps.push_back(nw - w);
      w = nw;
    }
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
    ASSERT_EQ(eng.write_cache_norm(), w) << "write " << p;
  }
  ASSERT_GE(grow_steps.size(), 3u);
  EXPECT_EQ(grow_steps[0], 1.0);  // w: 1 -> 2
  EXPECT_EQ(grow_steps[1], 0.5);  // w: 2 -> 2.5
  for (std::size_t i = 1; i < grow_steps.size(); ++i)
    EXPECT_LT(grow_steps[i], grow_steps[i - 1]);
}

TEST(WriteCache, ShrinkFloorsAtBaseline) {
  TicaEngine eng(slow_flush_config());
  double t = 0;
  for (std::uint64_t p = 0; p < 4; ++p) {  // 4th write grows w to 2
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  ASSERT_EQ(eng.write_cache_norm(), 2.0);
  // fill the read partition, then one more miss shrinks: max(1, 2 - 2^1) = 1
  std::uint64_t cap = eng.read_capacity();
  for (std::uint64_t p = 0; p < cap; ++p) {
    PageOpResult r = eng.page_op(1000 + p, Op::Read, t);
    t += r.latency_us;
  }
  EXPECT_EQ(eng.write_cache_norm(), 2.0);
  PageOpResult r = eng.page_op(5000, Op::Read, t);
  t += r.latency_us;
  EXPECT_EQ(eng.write_cache_norm(), 1.0);
  // at the baseline the size stays put
  PageOpResult r2 = eng.page_op(5001, Op::Read, t);
  (void)r2;
  EXPECT_EQ(eng.write_cache_norm(), 1.0);
}

TEST(WriteCache, StormStaysWithinBounds) {
  TicaConfig cfg = small_config(PolicyKind::Adaptive);
  TicaEngine eng(cfg);
  eng.set_audit(true);  // bounds checked after every operation
  std::mt19937_64 rng(17);
  double t = 0;
  const double cap = (16.0 - 1.0) / eng.def_write_cache_pages();
  for (int i = 0; i < 2000; ++i) {
    Page p = rng() % 40;
    Op op = rng() % 2 ? Op::Read : Op::Write;
    PageOpResult r = eng.page_op(p, op, t);
    t += r.latency_us;
    ASSERT_GE(eng.write_cache_norm(), 1.0);
    ASSERT_LE(eng.write_cache_norm(), cap + 1e-9);
  }
}

TEST(FreeWo, CleanVictimNeedsNoWriteBack) {
  TicaEngine eng(small_config(PolicyKind::Wed));
  double t = 0;
  // fill WO entirely with clean eviction copies, then one more
  std::uint64_t total = eng.read_capacity() + eng.usable_wo() + 1;
  std::uint64_t dropped = 0;
  for (std::uint64_t p = 0; p < total; ++p) {
    PageOpResult r = eng.page_op(p, Op::Read, t);
    t += r.latency_us;
    for (const auto& e : r.evictions) dropped += e.dest == EvictDest::Dropped;
  }
  EXPECT_EQ(eng.hdd_device().writes(), 0u);  // nothing dirty, no write-back
  EXPECT_GE(dropped, 1u);
  EXPECT_LE(eng.wo_occupancy(), eng.usable_wo());
}

TEST(Flush, EmptyQueueIsNoop) {
  TicaEngine eng(small_config());
  eng.flush_service(1e9);
  EXPECT_EQ(eng.flush_pending(), 0u);
}

TEST(Flush, CompletionFreesDramSlotAndPopulatesRo) {
  TicaEngine eng(small_config());
  eng.page_op(7, Op::Write, 0);
  ASSERT_TRUE(eng.in_dram_write(7));
  eng.flush_service(990.0);  // ack 90 + RO write 900
  EXPECT_FALSE(eng.in_dram_write(7));
  EXPECT_TRUE(eng.in_ro(7));
  EXPECT_EQ(eng.flush_pending(), 0u);
}

TEST(Flush, BurstDrainsAtRoWriteRate) {
  TicaEngine eng(small_config());
  double t = 0;
  for (std::uint64_t p = 0; p < 5; ++p) {
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  eng.finalize(1e9);
  // acks at 90..450; serial RO writes complete at 990, 1890, 2790, 3690, 4590
  EXPECT_EQ(eng.ro_device().writes(), 5u);
  EXPECT_EQ(eng.ro_device().busy_us(), 4500.0);
  EXPECT_EQ(eng.ro_device().last_release_us(), 4590.0);
  EXPECT_EQ(eng.stats(1e9).flushes_completed, 5u);
}

TEST(FailDevice, SingleDeviceFailureLosesNothing) {
  TicaEngine eng(slow_flush_config());  // dirty pages stay in DRAM + WO
  double t = 0;
  for (std::uint64_t p = 0; p < 3; ++p) {
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  for (FailDevice d : {FailDevice::Dram, FailDevice::RoSsd, FailDevice::WoSsd}) {
    RecoverabilityReport rep = eng.fail_device(d);
    EXPECT_EQ(rep.dirty_pages, 3u);
    EXPECT_TRUE(rep.unrecoverable.empty());
  }
}

TEST(FailDevice, WoPlusDramBeforeFlushLosesUnflushedWrites) {
  TicaEngine eng(slow_flush_config());
  double t = 0;
  for (std::uint64_t p = 0; p < 3; ++p) {
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  RecoverabilityReport rep = eng.fail_devices(/*dram=*/true, /*ro=*/false, /*wo=*/true);
  EXPECT_EQ(rep.unrecoverable, (std::vector<Page>{0, 1, 2}));
}

TEST(FailDevice, AfterFlushRoCarriesTheSecondCopy) {
  TicaEngine eng(small_config());
  double t = 0;
  for (std::uint64_t p = 0; p < 3; ++p) {
    PageOpResult r = eng.page_op(p, Op::Write, t);
    t += r.latency_us;
  }
  eng.page_op(99, Op::Read, 1e6);  // all flushes complete
  RecoverabilityReport wo_dram = eng.fail_devices(true, false, true);
  EXPECT_TRUE(wo_dram.unrecoverable.empty());  // RO-SSD survives
  RecoverabilityReport wo_ro = eng.fail_devices(false, true, true);
  EXPECT_EQ(wo_ro.unrecoverable.size(), 3u);
}

TEST(Audit, DetectsDroppedRedundantCopy) {
  TicaEngine eng(slow_flush_config());
  eng.page_op(1, Op::Write, 0);
  EXPECT_NO_THROW(eng.check_invariants());
  eng.corrupt_drop_copy(1);  // dirty page now has a single copy
  EXPECT_THROW(eng.check_invariants(), InvariantViolation);
}

TEST(Engine, MultiPageRequestDecomposesSequentially) {
  TicaEngine eng(small_config());
  Request r{0, 10, 3, Op::Write};
  PageOpResult res = eng.execute(r, 0);
  // three page writes, each serialized on the WO-SSD: 3 x 90
  EXPECT_EQ(res.latency_us, 270.0);
  EXPECT_TRUE(eng.in_dram_write(10));
  EXPECT_TRUE(eng.in_dram_write(11));
  EXPECT_TRUE(eng.in_dram_write(12));
  EXPECT_EQ(eng.stats(1000).user_writes, 3u);
}

TEST(Engine, WriteCriticalPathBeatsMixedMirror) {
  TicaConfig cfg = small_config();
  TicaEngine eng(cfg);
  PageOpResult r = eng.page_op(1, Op::Write, 0);
  double mixed_raid_write =
      std::max(cfg.ro_ssd.write_latency_us, cfg.wo_ssd.write_latency_us);
  ASSERT_GT(cfg.ro_ssd.write_latency_us, cfg.wo_ssd.write_latency_us);
  EXPECT_LT(r.latency_us, mixed_raid_write);
}

TEST(Engine, ConfigValidationRejectsTinyDevices) {
  TicaConfig cfg = small_config();
  cfg.dram.capacity_pages = 5;  // equals reserve + 1
  EXPECT_THROW(TicaEngine{cfg}, ConfigError);
  cfg = small_config();
  cfg.wo_ssd.capacity_pages = 4;
  EXPECT_THROW(TicaEngine{cfg}, ConfigError);
}
