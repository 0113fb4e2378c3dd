#pragma once

#include <cstdint>

#include "tica/stats.hpp"
#include "tica/trace.hpp"

namespace tica {

// Common contract for the cache engines: one page-operation in, one result
// out. Engines own their device timelines and statistics; the run loop owns
// the clock (closed- or open-loop) and decomposes requests into page ops.
class CacheEngineBase {
 public:
  virtual ~CacheEngineBase() = default;

  virtual PageOpResult page_op(Page page, Op op, SimTime issue_us) = 0;

  // Full request: pages run back to back, each issuing at the previous
  // completion. Returns the result of the last page op with latency measured
  // from `issue_us` and evictions aggregated.
  PageOpResult execute(const Request& r, SimTime issue_us) {
    note_request();
    PageOpResult agg;
    SimTime t = issue_us;
    for (std::uint32_t k = 0; k < r.pages; ++k) {
      PageOpResult one = page_op(r.lba + k, r.op, t);
      t += one.latency_us;
      agg.served_by = one.served_by;
      for (auto& e : one.evictions) agg.evictions.push_back(e);
    }
    agg.latency_us = t - issue_us;
    return agg;
  }

  // Counters as of now; `total_sim_us` is the caller's clock.
  virtual RunStats stats(SimTime total_sim_us) const = 0;

  // Latest completion across user ops and background device work.
  virtual SimTime quiesce_time() const = 0;

  // Applies background completions that fall within the run (end-of-run
  // drain). Called once with the quiescence time before the final stats.
  virtual void finalize(SimTime) {}

  // Full consistency audit; throws InvariantViolation on failure.
  virtual void check_invariants() const {}

  void set_audit(bool on) { audit_ = on; }
  bool audit() const { return audit_; }

 protected:
  void note_request() { ++requests_; }
  std::uint64_t requests_ = 0;
  bool audit_ = false;
};

}  // namespace tica
