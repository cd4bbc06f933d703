#include "dcfsim/scenario/ifq.hpp"

#include "dcfsim/sim/errors.hpp"

#include <utility>

namespace dcfsim {

InterfaceQueue::InterfaceQueue(std::size_t capacity, Target target)
  : capacity_(capacity), target_(std::move(target))
{
    if (capacity_ == 0)
        throw InputError("ifq: capacity must be >= 1");
}

void
InterfaceQueue::hand_over(Frame f)
{
    blocked_ = true;
    target_(std::move(f), [this] { resume(); });
}

bool
InterfaceQueue::enqueue(Frame f)
{
    if (!blocked_) {
        hand_over(std::move(f));
        return true;
    }
    if (full())
        return false;
    q_.push_back(std::move(f));
    return true;
}

void
InterfaceQueue::resume()
{
    if (!blocked_)
        throw ProtocolFault("ifq: completion callback without an outstanding frame");
    if (q_.empty()) {
        blocked_ = false;
        return;
    }
    Frame f = std::move(q_.front());
    q_.pop_front();
    hand_over(f);
    if (dequeue_hook_)
        dequeue_hook_(f);
}

} // namespace dcfsim
