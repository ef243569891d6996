#pragma once

#include <atomic>
#include <deque>
#include <mutex>
#include <optional>
#include <variant>

#include "certopt/box.hpp"

namespace certopt {

/// A certified upper bound of the global minimum together with the point that
/// realizes it. Senders must only publish interval-certified values.
struct UpperBoundMessage {
  double value = 0.0;
  Vector point;
};

/// A promising point to seed into the heuristic population.
struct InjectMessage {
  Vector point;
};

struct TerminateMessage {};

using Message = std::variant<UpperBoundMessage, InjectMessage, TerminateMessage>;

/// Single-slot mailbox with newest-wins overwrite. Stale upper bounds are
/// dominated by fresher ones, so dropping them loses nothing.
class LatestSlot {
 public:
  void publish(UpperBoundMessage msg) {
    std::lock_guard lock(mu_);
    slot_ = std::move(msg);
  }

  std::optional<UpperBoundMessage> take() {
    std::lock_guard lock(mu_);
    std::optional<UpperBoundMessage> out = std::move(slot_);
    slot_.reset();
    return out;
  }

 private:
  std::mutex mu_;
  std::optional<UpperBoundMessage> slot_;
};

/// Bounded FIFO that drops its oldest entry when full. Injections are
/// heuristic hints and may be lossy.
class DropOldestQueue {
 public:
  explicit DropOldestQueue(std::size_t capacity = 16) : capacity_(capacity) {}

  void publish(InjectMessage msg) {
    std::lock_guard lock(mu_);
    if (items_.size() >= capacity_) items_.pop_front();
    items_.push_back(std::move(msg));
  }

  std::optional<InjectMessage> take() {
    std::lock_guard lock(mu_);
    if (items_.empty()) return std::nullopt;
    InjectMessage out = std::move(items_.front());
    items_.pop_front();
    return out;
  }

 private:
  std::mutex mu_;
  std::size_t capacity_;
  std::deque<InjectMessage> items_;
};

/// The two directed channels of the cooperation scheme plus the termination
/// broadcast. All sends are non-blocking; receivers poll, so neither worker
/// can deadlock on the other.
struct CooperationChannels {
  LatestSlot upper_bounds;    // heuristic -> certifying engine
  DropOldestQueue injections; // certifying engine -> heuristic
  std::atomic<bool> terminate{false};

  void request_terminate() { terminate.store(true, std::memory_order_release); }
  bool should_terminate() const {
    return terminate.load(std::memory_order_acquire);
  }
};

}  // namespace certopt
