#pragma once

#include <cstdint>
#include <optional>

#include "tica/sim_types.hpp"

namespace tica {

enum class PolicyMode { Ef, Wed };

inline const char* to_string(PolicyMode m) { return m == PolicyMode::Ef ? "ef" : "wed"; }

enum class DecisionSource { Default, Capacity, Smbi };

struct PolicyDecision {
  PolicyMode mode = PolicyMode::Ef;
  DecisionSource source = DecisionSource::Default;
};

// Detector thresholds are ratios over the window/sample size.
struct AdaptiveParams {
  double t_min = 0.15;
  double t_max = 0.25;
  double t_hdd = 0.2;
  double t_read = 0.2;
  std::uint64_t window_size = 0;  // low-capacity detector; 2 x DRAM pages
  std::uint64_t sample_size = 0;  // SMBI sample; defaults to window_size
  int steps = 4;                  // SMBI wait-state length, in samples
  // Variant where a high DRAM hit ratio forces EF regardless of EQ hits
  // (conservative reading of the low-capacity rule). Off by default.
  bool capacity_prose_variant = false;
};

// Thrashing detector: watches DRAM read hits and ghost-queue (EQ) hits over a
// fixed window of requests and demands the WED policy when re-references of
// recently evicted pages would have hit a larger DRAM.
class CapacityEstimator {
 public:
  CapacityEstimator(const AdaptiveParams& p) : p_(p) {}

  struct Event {
    bool is_read = false;
    bool hit_dram = false;
    bool hit_eq = false;
  };

  // Returns the new demanded mode at window boundaries, nullopt otherwise.
  std::optional<PolicyMode> observe(const Event& e) {
    ++request_counter_;
    if (e.is_read) {
      if (e.hit_dram)
        ++dram_read_hit_;
      else if (e.hit_eq)
        ++eq_hit_;
    }
    if (request_counter_ < p_.window_size) return std::nullopt;
    double window = static_cast<double>(p_.window_size);
    double eq_ratio = eq_hit_ / window;
    double combined = (eq_hit_ + dram_read_hit_) / window;
    if (p_.capacity_prose_variant) {
      if (dram_read_hit_ / window > p_.t_max)
        mode_ = PolicyMode::Ef;
      else if (eq_ratio > p_.t_min)
        mode_ = PolicyMode::Wed;
      else
        mode_ = PolicyMode::Ef;
    } else {
      if (combined > p_.t_max)
        mode_ = PolicyMode::Wed;
      else if (eq_ratio > p_.t_min)
        mode_ = PolicyMode::Wed;
      else
        mode_ = PolicyMode::Ef;
    }
    request_counter_ = eq_hit_ = dram_read_hit_ = 0;
    return mode_;
  }

  PolicyMode mode() const { return mode_; }
  std::uint64_t request_counter() const { return request_counter_; }
  std::uint64_t eq_hits() const { return eq_hit_; }
  std::uint64_t dram_read_hits() const { return dram_read_hit_; }

 private:
  AdaptiveParams p_;
  std::uint64_t request_counter_ = 0;
  std::uint64_t eq_hit_ = 0;
  std::uint64_t dram_read_hit_ = 0;
  PolicyMode mode_ = PolicyMode::Ef;
};

// State-machine-based insertion: demands WED while the workload shows both
// many backing-store reads and a high cache hit ratio, with a wait state
// that keeps the detector out of WED for `steps` samples after a dropout.
class SmbiDetector {
 public:
  enum class State { Initial, Wed, Wait };

  explicit SmbiDetector(const AdaptiveParams& p) : p_(p), counter_(p.steps) {}

  struct Event {
    bool is_read = false;
    bool hit_cache = false;  // any cache level
  };

  std::optional<PolicyMode> observe(const Event& e) {
    ++request_counter_;
    if (e.is_read) {
      if (e.hit_cache)
        ++read_hit_;
      else
        ++disk_read_;
    }
    if (request_counter_ < p_.sample_size) return std::nullopt;
    double sample = static_cast<double>(p_.sample_size);
    double disk_ratio = disk_read_ / sample;
    double hit_ratio = read_hit_ / sample;
    switch (state_) {
      case State::Initial:
        if (disk_ratio > p_.t_hdd) {
          state_ = State::Wed;
          counter_ = p_.steps - 1;
        }
        break;
      case State::Wed:
        if (disk_ratio > p_.t_hdd) {
          state_ = hit_ratio > p_.t_read ? State::Wed : State::Wait;
        } else if (hit_ratio > p_.t_read) {
          state_ = State::Initial;
          counter_ = p_.steps;
        }
        break;
      case State::Wait:
        if (counter_ == 0 || hit_ratio > p_.t_read) {
          state_ = State::Initial;
          counter_ = p_.steps;
        } else {
          --counter_;
        }
        break;
    }
    request_counter_ = disk_read_ = read_hit_ = 0;
    return mode();
  }

  PolicyMode mode() const { return state_ == State::Wed ? PolicyMode::Wed : PolicyMode::Ef; }
  State state() const { return state_; }
  int counter() const { return counter_; }

 private:
  AdaptiveParams p_;
  State state_ = State::Initial;
  int counter_;
  std::uint64_t request_counter_ = 0;
  std::uint64_t disk_read_ = 0;
  std::uint64_t read_hit_ = 0;
};

// WED wins if either detector currently demands it.
inline PolicyDecision combine(PolicyMode capacity, PolicyMode smbi) {
  if (capacity == PolicyMode::Wed) return {PolicyMode::Wed, DecisionSource::Capacity};
  if (smbi == PolicyMode::Wed) return {PolicyMode::Wed, DecisionSource::Smbi};
  return {PolicyMode::Ef, DecisionSource::Default};
}

enum class PolicyKind { Ef, Wed, Adaptive };

inline const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Ef: return "ef";
    case PolicyKind::Wed: return "wed";
    case PolicyKind::Adaptive: return "adaptive";
  }
  return "?";
}

// Runs both detectors and tracks the engine-facing policy. Fixed EF/WED
// configurations bypass the detectors entirely.
class PolicyController {
 public:
  PolicyController(PolicyKind kind, const AdaptiveParams& params)
      : kind_(kind), capacity_(params), smbi_(params) {
    if (kind_ == PolicyKind::Wed) decision_.mode = PolicyMode::Wed;
  }

  struct Event {
    bool is_read = false;
    bool hit_dram = false;
    bool hit_eq = false;
    bool hit_cache = false;
  };

  void observe(const Event& e) {
    if (kind_ != PolicyKind::Adaptive) return;
    auto a = capacity_.observe({e.is_read, e.hit_dram, e.hit_eq});
    auto b = smbi_.observe({e.is_read, e.hit_cache});
    if (a || b) {
      PolicyDecision next = combine(capacity_.mode(), smbi_.mode());
      if (next.mode != decision_.mode) ++switches_;
      decision_ = next;
    }
  }

  PolicyMode current() const { return decision_.mode; }
  PolicyDecision decision() const { return decision_; }
  std::uint64_t switches() const { return switches_; }
  PolicyKind kind() const { return kind_; }

 private:
  PolicyKind kind_;
  CapacityEstimator capacity_;
  SmbiDetector smbi_;
  PolicyDecision decision_;
  std::uint64_t switches_ = 0;
};

}  // namespace tica
