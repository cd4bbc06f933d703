#pragma once

#include "dcfsim/mac/backoff_timer.hpp"
#include "dcfsim/mac/mac_params.hpp"
#include "dcfsim/mac/mac_state.hpp"
#include "dcfsim/mac/trace.hpp"
#include "dcfsim/phy/frame.hpp"
#include "dcfsim/phy/phy_params.hpp"
#include "dcfsim/sim/timer.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>

namespace dcfsim {

class Rng;
class WirelessPhy;

/// Monotone source of frame uids shared by every node of one simulation.
class UidAllocator
{
  public:
    std::uint64_t operator()() { return next_++; }

  private:
    std::uint64_t next_ = 1;
};

/**
 * 802.11 DCF MAC for one node.
 *
 * Transmit path: send() parks the frame in pktTx (plus an RTS when the frame
 * exceeds the RTS threshold) and arms the backoff; backoff/defer expiry
 * transmits whatever is pending in priority order CTS/ACK, RTS, DATA.
 *
 * Receive path: recv() accepts frames the PHY could sense. The first arrival
 * is locked in as pktRx; a later overlapping arrival is discarded (capture)
 * if pktRx is at least CPThresh stronger, otherwise both are lost
 * (collision). recv_timer() runs when the locked frame ends.
 */
class Mac80211
{
  public:
    using UpTarget = std::function<void(const Frame&)>;
    using Callback = std::function<void()>;

    Mac80211(Scheduler& sched, Rng& rng, UidAllocator& uids, NodeId id, MacParams mac,
             PhyParams phy, WirelessPhy& netif);

    Mac80211(const Mac80211&) = delete;
    Mac80211& operator=(const Mac80211&) = delete;

    void set_trace(TraceSink sink) { trace_ = std::move(sink); }
    void set_uptarget(UpTarget up) { uptarget_ = std::move(up); }

    /// Downward entry. `done` is invoked once the MAC can accept the next frame.
    void send(Frame frame, Callback done);

    /// Upward entry from the interface.
    void recv(Frame frame);

    bool is_idle() const;
    void set_nav(std::uint32_t us);
    void check_backoff_timer();

    /// Airtime of a frame at the rate its type is sent with.
    double txtime(const Frame& f) const;
    double txtime(FrameType type, std::uint32_t size) const;

    NodeId id() const { return id_; }
    MacState rx_state() const { return rx_state_; }
    MacState tx_state() const { return tx_state_; }
    SimTime nav() const { return nav_; }
    std::uint32_t cw() const { return cw_; }
    std::uint32_t ssrc() const { return ssrc_; }
    std::uint32_t slrc() const { return slrc_; }
    bool tx_active() const { return tx_active_; }
    bool has_pending_tx() const { return pkt_tx_.has_value(); }
    bool has_pending_rts() const { return pkt_rts_.has_value(); }
    bool has_pending_ctrl() const { return pkt_ctrl_.has_value(); }
    const std::optional<Frame>& pending_tx() const { return pkt_tx_; }
    const std::optional<Frame>& receiving() const { return pkt_rx_; }
    const BackoffTimer& backoff() const { return backoff_; }
    const Timer& defer_timer() const { return defer_; }
    const Timer& send_timer() const { return send_; }
    const Timer& recv_timer() const { return recv_; }
    const Timer& nav_timer() const { return nav_timer_; }
    const MacParams& params() const { return mac_; }

    /// Round seconds up to whole microseconds for a duration/NAV field.
    static std::uint32_t usec(double seconds);

  private:
    SimTime now() const { return sched_.now(); }
    void emit(TraceKind kind, const Frame* f = nullptr, std::int64_t aux = 0, double value = 0.0,
              NodeId peer = 0);
    [[noreturn]] void fault(const std::string& what) const;

    void set_rx_state(MacState s);
    void set_tx_state(MacState s);
    void inc_cw();
    void rst_cw();
    void start_backoff(bool with_difs);

    bool uses_rts(const Frame& data) const;
    void make_rts_if_needed();
    Frame make_control(FrameType type, NodeId dst, std::uint32_t duration_us);

    void transmit(const Frame& f, double timeout);

    int check_pkt_ctrl();
    int check_pkt_rts();
    int check_pkt_tx();

    void backoff_handler();
    void defer_handler();
    void nav_handler();
    void recv_handler();
    void send_handler();

    void tx_resume();
    void rx_resume();

    void capture(const Frame& f);
    void collision(Frame f);

    void recv_rts(const Frame& f);
    void recv_cts(const Frame& f);
    void recv_data(const Frame& f);
    void recv_ack(const Frame& f);

    void retransmit_rts();
    void retransmit_data();

    Scheduler& sched_;
    Rng& rng_;
    UidAllocator& uids_;
    NodeId id_;
    MacParams mac_;
    PhyParams phy_;
    WirelessPhy& netif_;

    MacState rx_state_ = MacState::Idle;
    MacState tx_state_ = MacState::Idle;
    SimTime nav_ = 0.0;
    std::uint32_t cw_;
    std::uint32_t ssrc_ = 0;
    std::uint32_t slrc_ = 0;
    bool tx_active_ = false;
    std::uint32_t next_seq_ = 1;

    std::optional<Frame> pkt_rx_;
    std::optional<Frame> pkt_tx_;
    std::optional<Frame> pkt_rts_;
    std::optional<Frame> pkt_ctrl_;
    bool rx_collision_logged_ = false;

    Callback callback_;
    UpTarget uptarget_;
    TraceSink trace_;
    std::unordered_map<NodeId, std::uint32_t> seq_cache_;

    BackoffTimer backoff_;
    Timer defer_;
    Timer if_timer_;
    Timer nav_timer_;
    Timer recv_;
    Timer send_;
};

} // namespace dcfsim
