#pragma once

#include "dcfsim/phy/frame.hpp"

#include <cstddef>
#include <deque>
#include <functional>

namespace dcfsim {

/**
 * Drop-tail interface queue between the traffic sources and the MAC.
 *
 * At most one frame is outstanding at the MAC. While it is, the queue is
 * blocked and arrivals wait; the MAC's completion callback (resume) hands
 * over the next frame or unblocks the queue.
 */
class InterfaceQueue
{
  public:
    /// Hands a frame to the MAC together with the callback that must be
    /// invoked once the MAC is ready for the next one.
    using Target = std::function<void(Frame, std::function<void()>)>;

    InterfaceQueue(std::size_t capacity, Target target);

    InterfaceQueue(const InterfaceQueue&) = delete;
    InterfaceQueue& operator=(const InterfaceQueue&) = delete;

    /// Returns false (and drops the frame) when the queue is full.
    bool enqueue(Frame f);

    /// MAC completion callback. Throws ProtocolFault when no frame is
    /// outstanding.
    void resume();

    /// Called after a frame leaves the queue for the MAC.
    void on_dequeue(std::function<void(const Frame&)> hook) { dequeue_hook_ = std::move(hook); }

    bool blocked() const { return blocked_; }
    bool full() const { return q_.size() >= capacity_; }
    std::size_t size() const { return q_.size(); }
    std::size_t capacity() const { return capacity_; }
    /// Frames accepted but not yet completed: queued plus the outstanding one.
    std::size_t in_flight() const { return q_.size() + (blocked_ ? 1 : 0); }

    template <typename F>
    void for_each(F&& fn) const
    {
        for (const Frame& f : q_)
            fn(f);
    }

  private:
    void hand_over(Frame f);

    std::size_t capacity_;
    Target target_;
    std::deque<Frame> q_;
    bool blocked_ = false;
    std::function<void(const Frame&)> dequeue_hook_;
};

} // namespace dcfsim
