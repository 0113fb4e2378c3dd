#pragma once

#include <algorithm>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tica/device.hpp"
#include "tica/engine_base.hpp"
#include "tica/lru.hpp"
#include "tica/stats.hpp"

namespace tica {

// Reference architectures for comparison runs. All are plain LRU write-back
// caches; none of them partitions DRAM or distinguishes SSD roles, so the
// adaptive machinery stays exclusive to the three-level engine.
struct BaselineConfig {
  enum class Kind {
    DramMirroredWb,  // DRAM front + mirrored SSD pair, write-back
    SingleLevelSsd,  // one SSD, no DRAM
    Raid1Pair,       // mirrored SSD pair, no DRAM
  };
  Kind kind = Kind::DramMirroredWb;
  DeviceModel dram = default_dram_model();
  DeviceModel ssd_a = default_wo_ssd_model();
  DeviceModel ssd_b = default_wo_ssd_model();
  DeviceModel hdd = default_hdd_model();
  std::uint64_t page_size = kDefaultPageSize;

  bool has_dram() const { return kind == Kind::DramMirroredWb; }
  bool mirrored() const { return kind != Kind::SingleLevelSsd; }
};

// Generic DRAM-over-SSD write-back cache. Mirrored kinds write to both
// members and read from the statically faster one; every cached page lives
// in the SSD level, so DRAM evictions are free. Read misses fill both DRAM
// (when present) and the SSD level.
class BaselineEngine : public CacheEngineBase {
 public:
  explicit BaselineEngine(const BaselineConfig& cfg)
      : cfg_(cfg), dram_(cfg.dram), ssd_a_(cfg.ssd_a), ssd_b_(cfg.ssd_b), hdd_(cfg.hdd) {
    cfg_.hdd.validate();
    cfg_.ssd_a.validate();
    if (cfg_.mirrored()) {
      cfg_.ssd_b.validate();
      if (cfg_.ssd_a.capacity_pages != cfg_.ssd_b.capacity_pages)
        throw ConfigError("mirrored pair members must match in capacity");
      serve_b_ = cfg_.ssd_b.read_latency_us < cfg_.ssd_a.read_latency_us;
    }
    if (cfg_.has_dram()) cfg_.dram.validate();
  }

  PageOpResult page_op(Page page, Op op, SimTime issue_us) override {
    PageOpResult result;
    if (op == Op::Write)
      handle_write(page, issue_us, result);
    else
      handle_read(page, issue_us, result);
    ++stats_.page_ops;
    stats_.latency_sum_us += result.latency_us;
    ++stats_.latency_ops;
    if (audit()) {
      if (lru_ssd_.size() > cfg_.ssd_a.capacity_pages)
        throw InvariantViolation("baseline SSD over capacity");
      if (cfg_.has_dram() && lru_dram_.size() > cfg_.dram.capacity_pages)
        throw InvariantViolation("baseline DRAM over capacity");
      if (cfg_.mirrored() && ssd_a_.writes() != ssd_b_.writes())
        throw InvariantViolation("mirrored members diverged in write counts");
      if (++audit_tick_ % 256 == 0) check_invariants();
    }
    return result;
  }

  RunStats stats(SimTime total_sim_us) const override {
    RunStats s = stats_;
    s.requests = requests_;
    s.total_sim_us = total_sim_us;
    if (cfg_.has_dram())
      s.devices.push_back(snapshot_device("dram", DeviceKind::Dram, dram_));
    if (cfg_.mirrored()) {
      s.devices.push_back(snapshot_device("ssd_a", DeviceKind::Ssd, ssd_a_));
      s.devices.push_back(snapshot_device("ssd_b", DeviceKind::Ssd, ssd_b_));
    } else {
      s.devices.push_back(snapshot_device("ssd", DeviceKind::Ssd, ssd_a_));
    }
    s.devices.push_back(snapshot_device("hdd", DeviceKind::Hdd, hdd_));
    return s;
  }

  SimTime quiesce_time() const override {
    SimTime t = std::max(ssd_a_.last_release_us(), hdd_.last_release_us());
    if (cfg_.mirrored()) t = std::max(t, ssd_b_.last_release_us());
    if (cfg_.has_dram()) t = std::max(t, dram_.last_release_us());
    return t;
  }

  void check_invariants() const override {
    if (lru_ssd_.size() > cfg_.ssd_a.capacity_pages)
      throw InvariantViolation("baseline SSD over capacity");
    if (cfg_.has_dram() && lru_dram_.size() > cfg_.dram.capacity_pages)
      throw InvariantViolation("baseline DRAM over capacity");
    for (Page p : lru_dram_.order())
      if (!lru_ssd_.contains(p))
        throw InvariantViolation("baseline DRAM page missing from SSD level");
    for (Page p : dirty_)
      if (!lru_ssd_.contains(p))
        throw InvariantViolation("baseline dirty page missing from SSD level");
    if (cfg_.mirrored() && ssd_a_.writes() != ssd_b_.writes())
      throw InvariantViolation("mirrored members diverged in write counts");
  }

  bool in_dram(Page p) const { return lru_dram_.contains(p); }
  bool in_ssd(Page p) const { return lru_ssd_.contains(p); }

 private:
  void handle_write(Page page, SimTime now, PageOpResult& result) {
    result.served_by = ServedBy::WriteBuffered;
    invalidate(page);
    if (cfg_.has_dram() && lru_dram_.size() >= cfg_.dram.capacity_pages)
      lru_dram_.pop_tail();  // DRAM copy is redundant with the SSD one
    if (lru_ssd_.size() >= cfg_.ssd_a.capacity_pages) evict_ssd(now, result.evictions);
    SimTime ack = ssd_a_.access(Op::Write, 1, now);
    if (cfg_.mirrored()) ack = std::max(ack, ssd_b_.access(Op::Write, 1, now));
    if (cfg_.has_dram()) {
      ack = std::max(ack, dram_.access(Op::Write, 1, now));
      lru_dram_.touch(page);
    }
    lru_ssd_.touch(page);
    dirty_.insert(page);
    result.latency_us = ack - now;
    ++stats_.user_writes;
  }

  void handle_read(Page page, SimTime now, PageOpResult& result) {
    if (cfg_.has_dram() && lru_dram_.contains(page)) {
      SimTime done = dram_.access(Op::Read, 1, now);
      lru_dram_.touch(page);
      lru_ssd_.touch(page);  // recency propagates; the SSD level holds every page
      result.served_by = ServedBy::DramHit;
      result.latency_us = done - now;
      ++stats_.dram_hits;
    } else if (lru_ssd_.contains(page)) {
      DeviceState& member = serve_b_ ? ssd_b_ : ssd_a_;
      SimTime done = member.access(Op::Read, 1, now);
      lru_ssd_.touch(page);
      result.served_by = serve_b_ ? ServedBy::WoSsdHit : ServedBy::RoSsdHit;
      result.latency_us = done - now;
      if (serve_b_)
        ++stats_.wo_hits;
      else
        ++stats_.ro_hits;
    } else {
      SimTime done = hdd_.access(Op::Read, 1, now);
      if (lru_ssd_.size() >= cfg_.ssd_a.capacity_pages) evict_ssd(done, result.evictions);
      ssd_a_.access(Op::Write, 1, done);
      if (cfg_.mirrored()) ssd_b_.access(Op::Write, 1, done);
      lru_ssd_.touch(page);
      if (cfg_.has_dram()) {
        if (lru_dram_.size() >= cfg_.dram.capacity_pages) lru_dram_.pop_tail();
        dram_.access(Op::Write, 1, done);
        lru_dram_.touch(page);
      }
      result.served_by = ServedBy::HddMiss;
      result.latency_us = done - now;
      ++stats_.hdd_reads;
    }
    ++stats_.user_reads;
  }

  void invalidate(Page page) {
    lru_dram_.erase(page);
    if (lru_ssd_.contains(page)) {
      lru_ssd_.erase(page);
      ssd_a_.count_trim();
      if (cfg_.mirrored()) ssd_b_.count_trim();
    }
    dirty_.erase(page);
  }

  void evict_ssd(SimTime now, std::vector<Eviction>& evictions) {
    Page victim = lru_ssd_.pop_tail();
    bool was_dirty = dirty_.count(victim) != 0;
    if (was_dirty) {
      hdd_.access(Op::Write, 1, now);
      ++stats_.writebacks;
      dirty_.erase(victim);
    }
    ssd_a_.count_trim();
    if (cfg_.mirrored()) ssd_b_.count_trim();
    lru_dram_.erase(victim);
    evictions.push_back({victim, was_dirty ? EvictDest::Hdd : EvictDest::Dropped});
  }

  BaselineConfig cfg_;
  DeviceState dram_, ssd_a_, ssd_b_, hdd_;
  bool serve_b_ = false;
  LruQueue lru_dram_;
  LruQueue lru_ssd_;  // one logical level; mirrored members hold the same set
  std::unordered_set<Page> dirty_;
  std::uint64_t audit_tick_ = 0;
  RunStats stats_;
};

}  // namespace tica
