#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <list>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tica/adaptive.hpp"
#include "tica/device.hpp"
#include "tica/engine_base.hpp"
#include "tica/lru.hpp"
#include "tica/stats.hpp"

namespace tica {

struct TicaConfig {
  DeviceModel dram = default_dram_model();
  DeviceModel ro_ssd = default_ro_ssd_model();
  DeviceModel wo_ssd = default_wo_ssd_model();
  DeviceModel hdd = default_hdd_model();
  std::uint64_t page_size = kDefaultPageSize;
  // Baseline write partition and read partition floor, as fractions of the
  // usable DRAM pages.
  double def_write_fraction = 0.2;
  double min_read_fraction = 0.1;
  // Pages per cache device held back for internal operations.
  std::uint64_t reserve_pages = 4;
  PolicyKind policy = PolicyKind::Adaptive;
  AdaptiveParams adaptive;
};

enum class FailDevice { Dram, RoSsd, WoSsd };

struct RecoverabilityReport {
  std::uint64_t dirty_pages = 0;
  std::vector<Page> unrecoverable;
};

// Three-level engine: DRAM (read/write partitions) over RO-SSD over WO-SSD,
// with an HDD backing store. Writes commit to DRAM and WO-SSD before the
// acknowledgment and are flushed to the RO-SSD asynchronously; reads are
// served by the fastest level holding the page. Eviction of read-partition
// pages follows the active policy: EF drops them and remembers the id in a
// ghost queue, WED copies them to the WO-SSD.
//
// The exact step semantics are documented in docs/model.md; the randomized
// acceptance suite holds this implementation to an independent reference
// simulator, so any behavioral change must be reflected there.
class TicaEngine : public CacheEngineBase {
 public:
  explicit TicaEngine(const TicaConfig& cfg)
      : cfg_(cfg),
        dram_(cfg.dram),
        ro_(cfg.ro_ssd),
        wo_(cfg.wo_ssd),
        hdd_(cfg.hdd),
        controller_(cfg.policy, fill_params(cfg)) {
    validate();
    usable_dram_ = cfg_.dram.capacity_pages - cfg_.reserve_pages;
    usable_ro_ = cfg_.ro_ssd.capacity_pages - cfg_.reserve_pages;
    usable_wo_ = cfg_.wo_ssd.capacity_pages - cfg_.reserve_pages;
    def_pages_ = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(cfg_.def_write_fraction * usable_dram_));
    min_read_pages_ = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(cfg_.min_read_fraction * usable_dram_));
    if (def_pages_ + min_read_pages_ > usable_dram_)
      throw ConfigError("tica: DRAM too small for write partition baseline plus read floor");
    cap_w_ = static_cast<double>(usable_dram_ - min_read_pages_) / def_pages_;
  }

  static AdaptiveParams fill_params(const TicaConfig& cfg) {
    AdaptiveParams p = cfg.adaptive;
    std::uint64_t usable = cfg.dram.capacity_pages > cfg.reserve_pages
                               ? cfg.dram.capacity_pages - cfg.reserve_pages
                               : 1;
    if (p.window_size == 0) p.window_size = 2 * usable;
    if (p.sample_size == 0) p.sample_size = p.window_size;
    return p;
  }

  PageOpResult page_op(Page page, Op op, SimTime issue_us) override {
    PageOpResult result;
    flush_service(issue_us, &result.evictions);
    observe(page, op);
    if (op == Op::Write)
      handle_write(page, issue_us, result);
    else
      handle_read(page, issue_us, result);
    ++stats_.page_ops;
    stats_.latency_sum_us += result.latency_us;
    ++stats_.latency_ops;
    if (audit()) audit_step();
    return result;
  }

  // Per-op audit: constant-time bounds plus one flat directory pass for
  // presence coherence and dirty-page redundancy (every acknowledgment sits
  // between two page ops, so this covers every boundary). The hash-heavy
  // structural audit runs periodically and at end of run.
  void audit_step() {
    require(n_dram_read_ + n_dram_write_ <= usable_dram_, "DRAM over physical capacity");
    require(n_ro_ <= usable_ro_, "RO-SSD over capacity");
    require(n_wo_ <= usable_wo_, "WO-SSD over capacity");
    require(w_ >= 1.0 && w_ <= cap_w_ + 1e-9, "write cache size out of bounds");
    require(lru_dram_.size() == n_dram_read_ + n_dram_write_, "DRAM LRU desynced");
    require(lru_ro_.size() == n_ro_, "RO LRU desynced");
    require(lru_wo_.size() == n_wo_, "WO LRU desynced");
    require(eq_.size() <= read_capacity(), "EQ over capacity");
    require(flush_q_.size() == n_dram_write_, "flush queue desynced from write partition");
    for (const auto& [page, s] : dir_) {
      bool coherent = (!s.dram_read || (!s.ro && !s.wo)) && (!s.ro || s.wo) &&
                      (!s.dirty || s.wo);
      bool redundant =
          !s.dirty || (s.dram_write ? 1 : 0) + (s.ro ? 1 : 0) + (s.wo ? 1 : 0) >= 2;
      if (!coherent || !redundant)
        throw InvariantViolation(
            (coherent ? "dirty page with fewer than 2 copies: "
                      : "incoherent presence for page ") +
            std::to_string(page));
    }
    if (++audit_tick_ % 256 == 0) check_invariants();
  }

  // Highest-priority level holding the page. Pure.
  Level lookup(Page p) const {
    auto it = dir_.find(p);
    if (it == dir_.end()) return Level::Miss;
    const PageState& s = it->second;
    if (s.dram_read || s.dram_write) return Level::Dram;
    if (s.ro) return Level::RoSsd;
    if (s.wo) return Level::WoSsd;
    return Level::Miss;
  }

  // Completes (and issues) pending flushes up to `now`: the page gains a
  // clean RO-SSD copy and leaves the DRAM write partition.
  void flush_service(SimTime now, std::vector<Eviction>* evictions = nullptr) {
    while (!flush_q_.empty() && flush_q_.front().completion_us <= now) {
      FlushEntry e = flush_q_.front();
      flush_q_.pop_front();
      flush_index_.erase(e.page);
      PageState& s = dir_.at(e.page);
      if (n_ro_ >= usable_ro_) ro_evict(e.completion_us, evictions);
      s.ro = true;
      ++n_ro_;
      lru_ro_.touch(e.page);
      s.dram_write = false;
      --n_dram_write_;
      lru_dram_.erase(e.page);
      if (s.dirty && !s.flushed_at) s.flushed_at = e.completion_us;
      ++stats_.flushes_completed;
    }
  }

  RecoverabilityReport fail_devices(bool fail_dram, bool fail_ro, bool fail_wo) const {
    RecoverabilityReport rep;
    for (const auto& [page, s] : dir_) {
      if (!s.dirty) continue;
      ++rep.dirty_pages;
      int survivors = 0;
      if (!fail_dram && (s.dram_read || s.dram_write)) ++survivors;
      if (!fail_ro && s.ro) ++survivors;
      if (!fail_wo && s.wo) ++survivors;
      if (survivors == 0) rep.unrecoverable.push_back(page);
    }
    std::sort(rep.unrecoverable.begin(), rep.unrecoverable.end());
    return rep;
  }

  RecoverabilityReport fail_device(FailDevice d) const {
    return fail_devices(d == FailDevice::Dram, d == FailDevice::RoSsd,
                        d == FailDevice::WoSsd);
  }

  // Unrecoverable dirty pages for each single-device failure, in one pass.
  void single_failure_counts(std::uint64_t out[3]) const {
    out[0] = out[1] = out[2] = 0;
    for (const auto& [page, s] : dir_) {
      if (!s.dirty) continue;
      int dram = (s.dram_read || s.dram_write) ? 1 : 0;
      int ro = s.ro ? 1 : 0;
      int wo = s.wo ? 1 : 0;
      if (ro + wo == 0) ++out[0];
      if (dram + wo == 0) ++out[1];
      if (dram + ro == 0) ++out[2];
    }
  }

  RunStats stats(SimTime total_sim_us) const override {
    RunStats s = stats_;
    s.requests = requests_;
    s.total_sim_us = total_sim_us;
    accrue_alpha(total_sim_us, s.alpha_pre_us, s.alpha_post_us);
    s.policy_switches = controller_.switches();
    s.final_mode = controller_.current();
    s.devices = {snapshot_device("dram", DeviceKind::Dram, dram_),
                 snapshot_device("ro_ssd", DeviceKind::Ssd, ro_),
                 snapshot_device("wo_ssd", DeviceKind::Ssd, wo_),
                 snapshot_device("hdd", DeviceKind::Hdd, hdd_)};
    return s;
  }

  SimTime quiesce_time() const override {
    SimTime t = dram_.last_release_us();
    t = std::max(t, ro_.last_release_us());
    t = std::max(t, wo_.last_release_us());
    t = std::max(t, hdd_.last_release_us());
    return t;
  }

  void finalize(SimTime end_us) override { flush_service(end_us); }

  void check_invariants() const override {
    require(n_dram_read_ + n_dram_write_ <= usable_dram_, "DRAM over physical capacity");
    require(n_ro_ <= usable_ro_, "RO-SSD over capacity");
    require(n_wo_ <= usable_wo_, "WO-SSD over capacity");
    require(w_ >= 1.0 && w_ <= cap_w_ + 1e-9, "write cache size out of bounds");
    require(lru_dram_.size() == n_dram_read_ + n_dram_write_, "DRAM LRU desynced");
    require(lru_ro_.size() == n_ro_, "RO LRU desynced");
    require(lru_wo_.size() == n_wo_, "WO LRU desynced");
    require(eq_.size() <= read_capacity(), "EQ over capacity");
    require(flush_q_.size() == n_dram_write_, "flush queue desynced from write partition");
    std::uint64_t cnt_dr = 0, cnt_dw = 0, cnt_ro = 0, cnt_wo = 0;
    for (const auto& [page, s] : dir_) {
      cnt_dr += s.dram_read;
      cnt_dw += s.dram_write;
      cnt_ro += s.ro;
      cnt_wo += s.wo;
      require(s.dram_read || s.dram_write || s.ro || s.wo,
              "stale directory entry for page " + std::to_string(page));
      require(!(s.dram_read && s.dram_write), "page in both DRAM partitions");
      require(!s.dram_read || (!s.ro && !s.wo), "read-partition page also on SSD");
      require(!s.ro || s.wo, "RO-SSD copy without WO-SSD copy");
      require(!s.dirty || s.wo, "dirty page missing from WO-SSD");
      if (s.dirty)
        require((s.dram_write ? 1 : 0) + (s.ro ? 1 : 0) + (s.wo ? 1 : 0) >= 2,
                "dirty page " + std::to_string(page) + " has fewer than 2 copies");
      require(!eq_.contains(page), "cached page present in EQ");
      bool has_flush = flush_index_.count(page) != 0;
      require(has_flush == s.dram_write, "flush entry mismatch for page");
      if (s.dram_read || s.dram_write)
        require(lru_dram_.contains(page), "DRAM page missing from LRU");
      if (s.ro) require(lru_ro_.contains(page), "RO page missing from LRU");
      if (s.wo) require(lru_wo_.contains(page), "WO page missing from LRU");
    }
    require(cnt_dr == n_dram_read_ && cnt_dw == n_dram_write_, "DRAM occupancy desynced");
    require(cnt_ro == n_ro_ && cnt_wo == n_wo_, "SSD occupancy desynced");
    for (Page p : lru_dram_.order()) {
      auto it = dir_.find(p);
      require(it != dir_.end() && (it->second.dram_read || it->second.dram_write),
              "DRAM LRU entry without presence");
    }
  }

  // --- introspection (tests, audit tooling) ---
  PolicyMode policy() const { return controller_.current(); }
  const PolicyController& policy_controller() const { return controller_; }
  double write_cache_norm() const { return w_; }
  double write_cache_pages() const { return w_ * static_cast<double>(def_pages_); }
  std::uint64_t def_write_cache_pages() const { return def_pages_; }
  std::uint64_t write_slots() const {
    return static_cast<std::uint64_t>(std::floor(write_cache_pages()));
  }
  std::uint64_t read_capacity() const {
    auto ceil_w = static_cast<std::uint64_t>(std::ceil(write_cache_pages()));
    return usable_dram_ > ceil_w ? usable_dram_ - ceil_w : 0;
  }
  std::uint64_t usable_dram() const { return usable_dram_; }
  std::uint64_t usable_ro() const { return usable_ro_; }
  std::uint64_t usable_wo() const { return usable_wo_; }
  std::uint64_t dram_read_occupancy() const { return n_dram_read_; }
  std::uint64_t dram_write_occupancy() const { return n_dram_write_; }
  std::uint64_t ro_occupancy() const { return n_ro_; }
  std::uint64_t wo_occupancy() const { return n_wo_; }
  const GhostQueue& eq() const { return eq_; }
  std::size_t flush_pending() const { return flush_q_.size(); }
  bool in_dram_read(Page p) const { auto s = find(p); return s && s->dram_read; }
  bool in_dram_write(Page p) const { auto s = find(p); return s && s->dram_write; }
  bool in_ro(Page p) const { auto s = find(p); return s && s->ro; }
  bool in_wo(Page p) const { auto s = find(p); return s && s->wo; }
  bool is_dirty(Page p) const { auto s = find(p); return s && s->dirty; }
  const LruQueue& lru_dram() const { return lru_dram_; }
  const LruQueue& lru_ro() const { return lru_ro_; }
  const LruQueue& lru_wo() const { return lru_wo_; }
  DeviceState& dram_device() { return dram_; }
  DeviceState& ro_device() { return ro_; }
  DeviceState& wo_device() { return wo_; }
  DeviceState& hdd_device() { return hdd_; }

  // Test hook: corrupt the directory to exercise audit failure paths.
  void corrupt_drop_copy(Page p) {
    auto it = dir_.find(p);
    if (it == dir_.end()) return;
    if (it->second.ro) {
      it->second.ro = false;
      --n_ro_;
      lru_ro_.erase(p);
    } else if (it->second.dram_write) {
      it->second.dram_write = false;
      --n_dram_write_;
      lru_dram_.erase(p);
      auto fit = flush_index_.find(p);
      if (fit != flush_index_.end()) {
        flush_q_.erase(fit->second);
        flush_index_.erase(fit);
      }
    }
  }

 private:
  struct PageState {
    bool dram_read = false;
    bool dram_write = false;
    bool ro = false;
    bool wo = false;
    bool dirty = false;
    SimTime dirty_since = 0;
    std::optional<SimTime> flushed_at;
  };

  struct FlushEntry {
    Page page;
    SimTime completion_us;
  };

  const PageState* find(Page p) const {
    auto it = dir_.find(p);
    return it == dir_.end() ? nullptr : &it->second;
  }

  void validate() const {
    cfg_.dram.validate();
    cfg_.ro_ssd.validate();
    cfg_.wo_ssd.validate();
    cfg_.hdd.validate();
    if (cfg_.dram.capacity_pages <= cfg_.reserve_pages + 1)
      throw ConfigError("tica: DRAM capacity must exceed reserve pages + 1");
    if (cfg_.ro_ssd.capacity_pages <= cfg_.reserve_pages)
      throw ConfigError("tica: RO-SSD capacity must exceed reserve pages");
    if (cfg_.wo_ssd.capacity_pages <= cfg_.reserve_pages)
      throw ConfigError("tica: WO-SSD capacity must exceed reserve pages");
    if (cfg_.def_write_fraction <= 0 || cfg_.def_write_fraction >= 1)
      throw ConfigError("tica: def_write_fraction must be in (0,1)");
    if (cfg_.min_read_fraction <= 0 || cfg_.min_read_fraction >= 1)
      throw ConfigError("tica: min_read_fraction must be in (0,1)");
  }

  void observe(Page page, Op op) {
    PolicyController::Event e;
    Level level = lookup(page);
    e.is_read = op == Op::Read;
    e.hit_dram = level == Level::Dram;
    e.hit_eq = eq_.contains(page);
    e.hit_cache = level != Level::Miss;
    controller_.observe(e);
  }

  void handle_write(Page page, SimTime issue_us, PageOpResult& result) {
    result.served_by = ServedBy::WriteBuffered;
    SimTime now = issue_us;
    invalidate(page, now);

    // DRAM write partition admission: grow once, shed read-partition
    // overflow, then stall on flush completions until a slot frees.
    if (n_dram_write_ >= write_slots()) {
      w_ = std::min(w_ + std::exp2(-(w_ - 1.0)), cap_w_);
      eq_.trim(read_capacity());
      while (n_dram_read_ > read_capacity()) evict_read_tail(now, result.evictions);
      while (n_dram_write_ >= write_slots()) {
        SimTime freed_at = flush_q_.front().completion_us;
        flush_service(freed_at, &result.evictions);
        now = freed_at;  // request stalls until a write slot frees
      }
    }
    if (n_dram_read_ + n_dram_write_ >= usable_dram_) evict_read_tail(now, result.evictions);
    if (n_wo_ >= usable_wo_) free_wo(now, result.evictions);

    SimTime dram_done = dram_.access(Op::Write, 1, now);
    SimTime wo_done = wo_.access(Op::Write, 1, now);
    SimTime ack = std::max(dram_done, wo_done);

    PageState& s = dir_[page];
    s.dram_write = true;
    ++n_dram_write_;
    s.wo = true;
    ++n_wo_;
    s.dirty = true;
    s.dirty_since = ack;
    s.flushed_at.reset();
    lru_dram_.touch(page);
    lru_wo_.touch(page);

    SimTime flush_done = ro_.access(Op::Write, 1, ack);
    flush_q_.push_back({page, flush_done});
    flush_index_[page] = std::prev(flush_q_.end());

    result.latency_us = ack - issue_us;
    ++stats_.user_writes;
  }

  void handle_read(Page page, SimTime issue_us, PageOpResult& result) {
    auto it = dir_.find(page);
    PageState* s = it == dir_.end() ? nullptr : &it->second;
    if (s && (s->dram_read || s->dram_write)) {
      SimTime done = dram_.access(Op::Read, 1, issue_us);
      lru_dram_.touch(page);
      result.served_by = ServedBy::DramHit;
      result.latency_us = done - issue_us;
      ++stats_.dram_hits;
    } else if (s && s->ro) {
      SimTime done = ro_.access(Op::Read, 1, issue_us);
      lru_ro_.touch(page);
      if (s->wo) lru_wo_.touch(page);
      result.served_by = ServedBy::RoSsdHit;
      result.latency_us = done - issue_us;
      ++stats_.ro_hits;
    } else if (s && s->wo) {
      SimTime done = wo_.access(Op::Read, 1, issue_us);
      lru_wo_.touch(page);
      result.served_by = ServedBy::WoSsdHit;
      result.latency_us = done - issue_us;
      ++stats_.wo_hits;
    } else {
      // Miss: fault the page from the HDD into the DRAM read partition.
      SimTime hdd_done = hdd_.access(Op::Read, 1, issue_us);
      if (blocked_for_read_fill()) {
        if (w_ > 1.0) {
          w_ = std::max(1.0, w_ - std::exp2(w_ - 1.0));
        }
        if (blocked_for_read_fill()) {
          // Watcher race: whichever frees space first wins — the oldest
          // in-flight flush, or an immediate read-partition eviction once
          // the disk read returns.
          if (!flush_q_.empty() && flush_q_.front().completion_us <= hdd_done)
            flush_service(flush_q_.front().completion_us, &result.evictions);
          else
            evict_read_tail(hdd_done, result.evictions);
        }
      }
      dram_.access(Op::Write, 1, hdd_done);  // fill copy, off the critical path
      PageState& ns = dir_[page];
      ns.dram_read = true;
      ++n_dram_read_;
      lru_dram_.touch(page);
      eq_.erase(page);
      result.served_by = ServedBy::HddMiss;
      result.latency_us = hdd_done - issue_us;
      ++stats_.hdd_reads;
    }
    ++stats_.user_reads;
  }

  bool blocked_for_read_fill() const {
    return n_dram_read_ >= read_capacity() ||
           n_dram_read_ + n_dram_write_ >= usable_dram_;
  }

  // Remove any old copies of a page ahead of a fresh write; TRIMs are sent
  // to the SSDs that held it.
  void invalidate(Page page, SimTime now) {
    auto it = dir_.find(page);
    if (it != dir_.end()) {
      PageState& s = it->second;
      if (s.dirty) close_exposure(s, now);
      if (s.dram_read) {
        --n_dram_read_;
        lru_dram_.erase(page);
      }
      if (s.dram_write) {
        --n_dram_write_;
        lru_dram_.erase(page);
        cancel_flush(page);
      }
      if (s.ro) {
        --n_ro_;
        lru_ro_.erase(page);
        ro_.count_trim();
      }
      if (s.wo) {
        --n_wo_;
        lru_wo_.erase(page);
        wo_.count_trim();
      }
      dir_.erase(it);
    }
    eq_.erase(page);
  }

  void cancel_flush(Page page) {
    auto fit = flush_index_.find(page);
    if (fit == flush_index_.end()) return;
    flush_q_.erase(fit->second);
    flush_index_.erase(fit);
  }

  // Evict the least-recent read-partition page. Under WED the page is copied
  // to the WO-SSD; under EF only its id is remembered in the EQ.
  void evict_read_tail(SimTime now, std::vector<Eviction>& evictions) {
    Page victim = 0;
    bool found = lru_dram_.find_tail_if(
        [this](Page p) {
          auto it = dir_.find(p);
          return it != dir_.end() && it->second.dram_read;
        },
        victim);
    if (!found) throw InvariantViolation("read partition eviction with no read pages");
    PageState& s = dir_.at(victim);
    s.dram_read = false;
    --n_dram_read_;
    lru_dram_.erase(victim);
    if (controller_.current() == PolicyMode::Wed) {
      if (n_wo_ >= usable_wo_) free_wo(now, evictions);
      wo_.access(Op::Write, 1, now);
      PageState& ws = dir_[victim];  // may have been erased by free_wo
      ws.wo = true;
      ++n_wo_;
      lru_wo_.touch(victim);
      ++stats_.wed_copies;
      evictions.push_back({victim, EvictDest::WoSsd});
    } else {
      if (!s.wo && !s.ro) dir_.erase(victim);
      eq_.push(victim, read_capacity());
      evictions.push_back({victim, EvictDest::GhostQueue});
    }
  }

  // WO-SSD victim selection: the LRU tail leaves both SSDs (and the DRAM
  // write partition, cancelling its pending flush). A dirty victim is
  // written back to the HDD first.
  void free_wo(SimTime now, std::vector<Eviction>& evictions) {
    Page victim = lru_wo_.tail();
    PageState& s = dir_.at(victim);
    bool was_dirty = s.dirty;
    if (s.dirty) {
      hdd_.access(Op::Write, 1, now);
      ++stats_.writebacks;
      close_exposure(s, now);
      s.dirty = false;
    }
    if (s.ro) {
      s.ro = false;
      --n_ro_;
      lru_ro_.erase(victim);
      ro_.count_trim();
    }
    s.wo = false;
    --n_wo_;
    lru_wo_.erase(victim);
    wo_.count_trim();
    if (s.dram_write) {
      s.dram_write = false;
      --n_dram_write_;
      lru_dram_.erase(victim);
      cancel_flush(victim);
    }
    if (!s.dram_read) dir_.erase(victim);
    evictions.push_back({victim, was_dirty ? EvictDest::Hdd : EvictDest::Dropped});
  }

  // RO-SSD is full at flush completion: drop its LRU tail. If that tail is a
  // dirty page whose only other copy is the WO-SSD one, write it back first
  // so no single failure can lose it.
  void ro_evict(SimTime now, std::vector<Eviction>* evictions) {
    Page victim = lru_ro_.tail();
    PageState& s = dir_.at(victim);
    bool wrote_back = false;
    if (s.dirty && !s.dram_write) {
      hdd_.access(Op::Write, 1, now);
      ++stats_.writebacks;
      close_exposure(s, now);
      s.dirty = false;
      wrote_back = true;
    }
    s.ro = false;
    --n_ro_;
    lru_ro_.erase(victim);
    ro_.count_trim();
    if (evictions)
      evictions->push_back({victim, wrote_back ? EvictDest::Hdd : EvictDest::Dropped});
  }

  void close_exposure(PageState& s, SimTime now) {
    if (s.flushed_at) {
      alpha_pre_accum_ += *s.flushed_at - s.dirty_since;
      alpha_post_accum_ += now - *s.flushed_at;
    } else {
      alpha_pre_accum_ += now - s.dirty_since;
    }
    s.flushed_at.reset();
  }

  void accrue_alpha(SimTime now, double& pre, double& post) const {
    pre = alpha_pre_accum_;
    post = alpha_post_accum_;
    for (const auto& [page, s] : dir_) {
      if (!s.dirty) continue;
      if (s.flushed_at) {
        pre += *s.flushed_at - s.dirty_since;
        post += now - *s.flushed_at;
      } else {
        pre += now - s.dirty_since;
      }
    }
  }

  static void require(bool ok, const std::string& what) {
    if (!ok) throw InvariantViolation(what);
  }

  TicaConfig cfg_;
  DeviceState dram_, ro_, wo_, hdd_;
  PolicyController controller_;

  std::uint64_t usable_dram_ = 0, usable_ro_ = 0, usable_wo_ = 0;
  std::uint64_t def_pages_ = 0, min_read_pages_ = 0;
  double cap_w_ = 1.0;
  double w_ = 1.0;  // write partition size, normalized to def_pages_

  std::unordered_map<Page, PageState> dir_;
  std::uint64_t n_dram_read_ = 0, n_dram_write_ = 0, n_ro_ = 0, n_wo_ = 0;
  LruQueue lru_dram_, lru_ro_, lru_wo_;
  GhostQueue eq_;
  std::list<FlushEntry> flush_q_;
  std::unordered_map<Page, std::list<FlushEntry>::iterator> flush_index_;

  double alpha_pre_accum_ = 0;
  double alpha_post_accum_ = 0;
  std::uint64_t audit_tick_ = 0;
  RunStats stats_;
};

}  // namespace tica
