#pragma once

#include <cassert>
#include <cstddef>
#include <list>
#include <unordered_map>

#include "tica/sim_types.hpp"

namespace tica {

// Strict-LRU recency queue: front = most recent, back = least recent.
// Ties break by insertion order (a touch reinserts at the front).
class LruQueue {
 public:
  bool contains(Page p) const { return index_.count(p) != 0; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }

  // Insert as most-recently-used, or move to front if already present.
  void touch(Page p) {
    auto it = index_.find(p);
    if (it != index_.end()) {
      order_.splice(order_.begin(), order_, it->second);
    } else {
      order_.push_front(p);
      index_[p] = order_.begin();
    }
  }

  void erase(Page p) {
    auto it = index_.find(p);
    if (it == index_.end()) return;
    order_.erase(it->second);
    index_.erase(it);
  }

  // Least-recently-used page; queue must be non-empty.
  Page tail() const {
    assert(!order_.empty());
    return order_.back();
  }

  Page pop_tail() {
    Page p = tail();
    erase(p);
    return p;
  }

  // Least-recent page satisfying pred (scan from the LRU end).
  template <typename Pred>
  bool find_tail_if(Pred pred, Page& out) const {
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      if (pred(*it)) {
        out = *it;
        return true;
      }
    }
    return false;
  }

  // MRU-first iteration, for audits and oracle comparison.
  const std::list<Page>& order() const { return order_; }

 private:
  std::list<Page> order_;
  std::unordered_map<Page, std::list<Page>::iterator> index_;
};

// Ghost queue of evicted page ids (no data). FIFO by eviction recency with a
// capacity cap; inserting an existing id refreshes it.
class GhostQueue {
 public:
  bool contains(Page p) const { return q_.contains(p); }
  std::size_t size() const { return q_.size(); }

  void push(Page p, std::size_t capacity) {
    q_.touch(p);
    trim(capacity);
  }

  void erase(Page p) { q_.erase(p); }

  void trim(std::size_t capacity) {
    while (q_.size() > capacity) q_.pop_tail();
  }

  const std::list<Page>& order() const { return q_.order(); }

 private:
  LruQueue q_;
};

}  // namespace tica
