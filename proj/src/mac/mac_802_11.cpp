#include "dcfsim/mac/mac_802_11.hpp"

#include "dcfsim/phy/wireless_phy.hpp"
#include "dcfsim/sim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace dcfsim {

namespace {

// Float noise allowance on the inclusive capture test, so that an exact
// 10x power advantage computed through two path-loss evaluations still
// counts as meeting a 10 dB threshold.
constexpr double kCaptureRatioSlack = 1e-9;

} // namespace

Mac80211::Mac80211(Scheduler& sched, Rng& rng, UidAllocator& uids, NodeId id, MacParams mac,
                   PhyParams phy, WirelessPhy& netif)
  : sched_(sched),
    rng_(rng),
    uids_(uids),
    id_(id),
    mac_(mac),
    phy_(phy),
    netif_(netif),
    cw_(mac.cw_min),
    backoff_(sched, rng, mac.slot_time, [this] { backoff_handler(); }),
    defer_(sched, "defer", [this] { defer_handler(); }),
    if_timer_(sched, "interface", [this] { tx_active_ = false; }),
    nav_timer_(sched, "nav", [this] { nav_handler(); }),
    recv_(sched, "recv", [this] { recv_handler(); }),
    send_(sched, "send", [this] { send_handler(); })
{
    mac_.derive(phy_);
}

std::uint32_t
Mac80211::usec(double seconds)
{
    return static_cast<std::uint32_t>(std::ceil(seconds * 1e6 - 1e-6));
}

void
Mac80211::emit(TraceKind kind, const Frame* f, std::int64_t aux, double value, NodeId peer)
{
    if (!trace_)
        return;
    TraceRecord r;
    r.time = now();
    r.node = id_;
    r.kind = kind;
    r.aux = aux;
    r.value = value;
    r.peer = peer;
    if (f != nullptr) {
        r.uid = f->uid;
        r.frame_type = f->mac.type;
        r.flow = f->flow;
    }
    trace_(r);
}

void
Mac80211::fault(const std::string& what) const
{
    throw ProtocolFault("mac " + std::to_string(id_) + " at t=" + std::to_string(now()) + ": " +
                        what);
}

double
Mac80211::txtime(FrameType type, std::uint32_t size) const
{
    const double rate = is_control(type) ? mac_.basic_rate : phy_.data_rate;
    return dcfsim::txtime(size, rate, phy_.plcp_overhead);
}

double
Mac80211::txtime(const Frame& f) const
{
    return txtime(f.mac.type, f.size);
}

/* ---------------------------------------------------------------------
 * Carrier sense and state
 * ------------------------------------------------------------------- */

bool
Mac80211::is_idle() const
{
    return tx_state_ == MacState::Idle && rx_state_ == MacState::Idle && nav_ <= now();
}

void
Mac80211::set_rx_state(MacState s)
{
    if (!is_rx_state(s))
        fault("rx_state cannot become " + std::string(to_string(s)));
    rx_state_ = s;
    emit(TraceKind::RxState, nullptr, static_cast<std::int64_t>(s));
    check_backoff_timer();
}

void
Mac80211::set_tx_state(MacState s)
{
    if (!is_tx_state(s))
        fault("tx_state cannot become " + std::string(to_string(s)));
    tx_state_ = s;
    emit(TraceKind::TxState, nullptr, static_cast<std::int64_t>(s));
    check_backoff_timer();
}

void
Mac80211::check_backoff_timer()
{
    if (is_idle() && backoff_.paused()) {
        backoff_.resume(mac_.difs);
        emit(TraceKind::BackoffResume, nullptr, backoff_.slots_left());
    }
    if (!is_idle() && backoff_.counting()) {
        backoff_.pause();
        emit(TraceKind::BackoffPause, nullptr, backoff_.slots_left());
    }
}

void
Mac80211::set_nav(std::uint32_t us)
{
    const double t = us * 1e-6;
    if (now() + t > nav_) {
        nav_ = now() + t;
        if (nav_timer_.busy())
            nav_timer_.cancel();
        nav_timer_.start(t);
        emit(TraceKind::Nav, nullptr, us, nav_);
    }
}

void
Mac80211::inc_cw()
{
    cw_ = std::min((cw_ << 1) + 1, mac_.cw_max);
    emit(TraceKind::Cw, nullptr, cw_);
}

void
Mac80211::rst_cw()
{
    cw_ = mac_.cw_min;
    emit(TraceKind::Cw, nullptr, cw_);
}

void
Mac80211::start_backoff(bool with_difs)
{
    const bool idle = is_idle();
    backoff_.start(cw_, idle, with_difs ? mac_.difs : 0.0);
    emit(TraceKind::BackoffStart, nullptr, backoff_.last_draw(), idle ? 1.0 : 0.0);
}

/* ---------------------------------------------------------------------
 * Frame construction
 * ------------------------------------------------------------------- */

bool
Mac80211::uses_rts(const Frame& data) const
{
    return data.size > mac_.rts_threshold && data.mac.dst != kBroadcast;
}

Frame
Mac80211::make_control(FrameType type, NodeId dst, std::uint32_t duration_us)
{
    Frame f;
    f.uid = uids_();
    f.direction = Direction::Down;
    f.mac.type = type;
    f.mac.src = id_;
    f.mac.dst = dst;
    f.mac.duration_us = duration_us;
    switch (type) {
    case FrameType::Rts:
        f.size = mac_.rts_size;
        break;
    case FrameType::Cts:
        f.size = mac_.cts_size;
        break;
    case FrameType::Ack:
        f.size = mac_.ack_size;
        break;
    case FrameType::Data:
        fault("make_control called for DATA");
    }
    return f;
}

void
Mac80211::make_rts_if_needed()
{
    if (!pkt_tx_ || pkt_rts_ || !uses_rts(*pkt_tx_))
        return;
    const double nav = 3 * mac_.sifs + txtime(FrameType::Cts, mac_.cts_size) + txtime(*pkt_tx_) +
                       txtime(FrameType::Ack, mac_.ack_size);
    pkt_rts_ = make_control(FrameType::Rts, pkt_tx_->mac.dst, usec(nav));
}

/* ---------------------------------------------------------------------
 * Transmission
 * ------------------------------------------------------------------- */

void
Mac80211::transmit(const Frame& f, double timeout)
{
    const double airtime = txtime(f);
    tx_active_ = true;

    // Anything we were receiving is lost while we talk over it.
    if (rx_state_ != MacState::Idle && pkt_rx_)
        pkt_rx_->error = true;

    Frame out = f;
    out.direction = Direction::Down;
    netif_.send_down(out, airtime);
    send_.start(timeout);
    if (if_timer_.busy())
        fault("transmit while the interface is still active");
    if_timer_.start(airtime);
}

int
Mac80211::check_pkt_ctrl()
{
    if (!pkt_ctrl_)
        return -1;
    if (tx_state_ == MacState::Cts || tx_state_ == MacState::Ack)
        return -1;

    double timeout = 0.0;
    switch (pkt_ctrl_->mac.type) {
    case FrameType::Cts:
        // A CTS is only sent into an idle medium.
        if (!is_idle()) {
            emit(TraceKind::RxDrop, &*pkt_ctrl_, static_cast<std::int64_t>(RxDropReason::Busy));
            pkt_ctrl_.reset();
            // Nothing else is armed for a pending DATA frame at this point.
            tx_resume();
            return 0;
        }
        set_tx_state(MacState::Cts);
        // Wait for the DATA the CTS announces.
        timeout = txtime(*pkt_ctrl_) + 2 * mac_.max_propagation_delay +
                  pkt_ctrl_->mac.duration_us * 1e-6 - mac_.sifs -
                  txtime(FrameType::Ack, mac_.ack_size);
        break;
    case FrameType::Ack:
        // ACKs go out SIFS after the DATA regardless of carrier state.
        set_tx_state(MacState::Ack);
        timeout = txtime(*pkt_ctrl_);
        break;
    default:
        fault("pktCtrl holds a non-control frame");
    }
    emit(TraceKind::Transmit, &*pkt_ctrl_, 1, 0.0, pkt_ctrl_->mac.dst);
    transmit(*pkt_ctrl_, timeout);
    return 0;
}

int
Mac80211::check_pkt_rts()
{
    if (!pkt_rts_)
        return -1;
    if (!is_idle()) {
        start_backoff(false);
        return 0;
    }
    set_tx_state(MacState::Rts);
    const double timeout = txtime(*pkt_rts_) + mac_.sifs + txtime(FrameType::Cts, mac_.cts_size) +
                           2 * mac_.max_propagation_delay;
    emit(TraceKind::Transmit, &*pkt_rts_, ssrc_ + 1, 0.0, pkt_rts_->mac.dst);
    transmit(*pkt_rts_, timeout);
    return 0;
}

int
Mac80211::check_pkt_tx()
{
    if (!pkt_tx_)
        return -1;
    if (!is_idle()) {
        make_rts_if_needed();
        start_backoff(false);
        return 0;
    }
    set_tx_state(MacState::Send);
    double timeout = txtime(*pkt_tx_);
    if (pkt_tx_->mac.dst != kBroadcast)
        timeout += mac_.sifs + txtime(FrameType::Ack, mac_.ack_size) +
                   2 * mac_.max_propagation_delay;
    emit(TraceKind::Transmit, &*pkt_tx_, pkt_tx_->mac.retry_count + 1, 0.0, pkt_tx_->mac.dst);
    transmit(*pkt_tx_, timeout);
    return 0;
}

/* ---------------------------------------------------------------------
 * Timer handlers
 * ------------------------------------------------------------------- */

void
Mac80211::backoff_handler()
{
    emit(TraceKind::BackoffExpire);
    if (pkt_ctrl_) {
        if (!send_.busy() && !defer_.busy())
            fault("backoff expired with a response pending but no timer armed");
        return;
    }
    if (check_pkt_rts() == 0)
        return;
    if (check_pkt_tx() == 0)
        return;
    // Post-transmission backoff with an empty queue.
    emit(TraceKind::BackoffIdle);
}

void
Mac80211::defer_handler()
{
    if (!pkt_ctrl_ && !pkt_rts_ && !pkt_tx_)
        fault("defer expired with nothing pending");
    if (check_pkt_ctrl() == 0)
        return;
    if (backoff_.busy())
        fault("defer expired while the backoff is busy");
    if (check_pkt_rts() == 0)
        return;
    check_pkt_tx();
}

void
Mac80211::nav_handler()
{
    check_backoff_timer();
}

void
Mac80211::recv_handler()
{
    if (!pkt_rx_)
        fault("recv timer expired without a frame");
    if (rx_state_ != MacState::Recv && rx_state_ != MacState::Coll)
        fault("recv timer expired in rx_state " + std::string(to_string(rx_state_)));

    Frame f = std::move(*pkt_rx_);
    pkt_rx_.reset();

    if (tx_active_) {
        // We were talking; the frame was never heard. No NAV update.
        emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(RxDropReason::WhileTransmitting), 0.0,
             f.txinfo.tx_node);
        rx_resume();
        return;
    }

    if (rx_state_ == MacState::Coll || f.error) {
        const auto reason = rx_state_ == MacState::Coll ? RxDropReason::Collision : RxDropReason::Error;
        emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(reason), 0.0, f.txinfo.tx_node);
        if (mac_.eifs_enabled)
            set_nav(usec(mac_.eifs + txtime(f)));
        rx_resume();
        return;
    }

    const NodeId dst = f.mac.dst;
    if (dst != id_)
        set_nav(f.mac.duration_us);

    if (dst != id_ && dst != kBroadcast) {
        rx_resume();
        return;
    }

    switch (f.mac.type) {
    case FrameType::Rts:
        recv_rts(f);
        break;
    case FrameType::Cts:
        recv_cts(f);
        break;
    case FrameType::Data:
        recv_data(f);
        break;
    case FrameType::Ack:
        recv_ack(f);
        break;
    }
    rx_resume();
}

void
Mac80211::send_handler()
{
    switch (tx_state_) {
    case MacState::Rts:
        // No CTS.
        retransmit_rts();
        break;
    case MacState::Cts:
        // CTS sent, DATA never came.
        pkt_ctrl_.reset();
        break;
    case MacState::Send:
        // No ACK (or end of a broadcast).
        retransmit_data();
        break;
    case MacState::Ack:
        pkt_ctrl_.reset();
        break;
    case MacState::Idle:
        break;
    default:
        fault("send timer expired in tx_state " + std::string(to_string(tx_state_)));
    }
    tx_resume();
}

void
Mac80211::tx_resume()
{
    if (send_.busy())
        fault("tx_resume with the send timer running");
    if (defer_.busy())
        fault("tx_resume with the defer timer running");

    if (pkt_ctrl_) {
        defer_.start(mac_.sifs);
    } else if (pkt_rts_) {
        if (!backoff_.busy())
            start_backoff(true);
    } else if (pkt_tx_) {
        if (!backoff_.busy()) {
            if (uses_rts(*pkt_tx_))
                defer_.start(mac_.sifs); // CTS received: DATA follows after SIFS
            else
                start_backoff(true);
        }
    } else if (callback_) {
        Callback cb = std::move(callback_);
        callback_ = nullptr;
        cb();
    }
    set_tx_state(MacState::Idle);
}

void
Mac80211::rx_resume()
{
    if (pkt_rx_)
        fault("rx_resume with a frame still locked");
    rx_collision_logged_ = false;
    set_rx_state(MacState::Idle);
}

/* ---------------------------------------------------------------------
 * Outgoing entry
 * ------------------------------------------------------------------- */

void
Mac80211::send(Frame frame, Callback done)
{
    if (frame.direction != Direction::Down)
        fault("send() on an upward frame");
    if (pkt_tx_)
        fault("send() while a data frame is outstanding");

    callback_ = std::move(done);

    frame.size += mac_.data_header_size;
    frame.mac.type = FrameType::Data;
    frame.mac.src = id_;
    frame.mac.retry_count = 0;
    frame.mac.seq = next_seq_++;
    frame.mac.duration_us =
        frame.mac.dst == kBroadcast
            ? 0
            : usec(mac_.sifs + txtime(FrameType::Ack, mac_.ack_size));
    pkt_tx_ = std::move(frame);
    make_rts_if_needed();

    if (!backoff_.busy()) {
        if (is_idle()) {
            // Already deferring for a response: tx_resume picks the frame up.
            if (!defer_.busy())
                start_backoff(true);
        } else {
            start_backoff(false);
        }
    }
}

/* ---------------------------------------------------------------------
 * Incoming entry
 * ------------------------------------------------------------------- */

void
Mac80211::recv(Frame frame)
{
    if (frame.direction != Direction::Up)
        fault("recv() on a downward frame");
    if (!frame.txinfo.rx_power)
        fault("recv() on a frame without rx power");

    // The air is busy but we are talking: keep the frame for carrier sense only.
    if (tx_active_ && !frame.error)
        frame.error = true;

    if (rx_state_ == MacState::Idle) {
        const double airtime = txtime(frame);
        pkt_rx_ = std::move(frame);
        rx_collision_logged_ = false;
        set_rx_state(MacState::Recv);
        recv_.start(airtime);
        return;
    }

    // Pairwise comparison against the frame already locked in.
    const double ratio = *pkt_rx_->txinfo.rx_power / *frame.txinfo.rx_power;
    if (ratio >= frame.txinfo.capture_threshold * (1.0 - kCaptureRatioSlack))
        capture(frame);
    else
        collision(std::move(frame));
}

void
Mac80211::capture(const Frame& f)
{
    emit(TraceKind::Capture, &f, pkt_rx_->txinfo.tx_node, 0.0, f.txinfo.tx_node);
    // Keep carrier sense honest for the duration of the discarded frame.
    set_nav(usec(txtime(f)));
}

void
Mac80211::collision(Frame f)
{
    if (rx_state_ == MacState::Recv)
        set_rx_state(MacState::Coll);
    if (rx_state_ != MacState::Coll)
        fault("collision outside RECV/COLL");

    if (!rx_collision_logged_) {
        emit(TraceKind::Collision, &*pkt_rx_, 0, 0.0, pkt_rx_->txinfo.tx_node);
        rx_collision_logged_ = true;
    }
    emit(TraceKind::Collision, &f, 0, 0.0, f.txinfo.tx_node);

    // Keep whichever frame lasts longer so the medium is considered busy
    // until it actually clears.
    const double airtime = txtime(f);
    if (airtime > recv_.remaining()) {
        recv_.cancel();
        f.error = true;
        pkt_rx_ = std::move(f);
        recv_.start(airtime);
    } else {
        pkt_rx_->error = true;
    }
}

/* ---------------------------------------------------------------------
 * Per-type receive handling (frame addressed to this node)
 * ------------------------------------------------------------------- */

void
Mac80211::recv_rts(const Frame& f)
{
    if (tx_state_ != MacState::Idle || pkt_ctrl_) {
        emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(RxDropReason::Busy), 0.0,
             f.txinfo.tx_node);
        return;
    }
    const double cts_air = txtime(FrameType::Cts, mac_.cts_size);
    const double remaining = f.mac.duration_us * 1e-6 - mac_.sifs - cts_air;
    pkt_ctrl_ = make_control(FrameType::Cts, f.mac.src, usec(std::max(remaining, 0.0)));
    if (defer_.busy())
        defer_.cancel();
    tx_resume();
}

void
Mac80211::recv_cts(const Frame& f)
{
    if (tx_state_ != MacState::Rts) {
        emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(RxDropReason::InvalidState), 0.0,
             f.txinfo.tx_node);
        return;
    }
    if (!pkt_rts_ || !pkt_tx_)
        fault("CTS received without an outstanding RTS/DATA");
    pkt_rts_.reset();
    send_.cancel();
    ssrc_ = 0;
    rst_cw();
    tx_resume();
}

void
Mac80211::recv_data(const Frame& f)
{
    const NodeId dst = f.mac.dst;
    const NodeId src = f.mac.src;

    if (dst != kBroadcast) {
        if (uses_rts(f)) {
            if (tx_state_ != MacState::Cts) {
                emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(RxDropReason::Busy), 0.0,
                     f.txinfo.tx_node);
                return;
            }
            pkt_ctrl_.reset();
            send_.cancel();
            ssrc_ = 0;
            rst_cw();
            pkt_ctrl_ = make_control(FrameType::Ack, src, 0);
            tx_resume();
        } else {
            if (pkt_ctrl_) {
                emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(RxDropReason::Busy), 0.0,
                     f.txinfo.tx_node);
                return;
            }
            pkt_ctrl_ = make_control(FrameType::Ack, src, 0);
            if (!send_.busy())
                tx_resume();
        }

        auto [it, fresh] = seq_cache_.try_emplace(src, f.mac.seq);
        if (!fresh) {
            if (it->second == f.mac.seq) {
                emit(TraceKind::Duplicate, &f, f.payload, 0.0, src);
                return;
            }
            it->second = f.mac.seq;
        }
    }

    emit(TraceKind::Deliver, &f, f.payload, 0.0, src);
    if (uptarget_)
        uptarget_(f);
}

void
Mac80211::recv_ack(const Frame& f)
{
    if (tx_state_ != MacState::Send) {
        emit(TraceKind::RxDrop, &f, static_cast<std::int64_t>(RxDropReason::InvalidState), 0.0,
             f.txinfo.tx_node);
        return;
    }
    if (!pkt_tx_)
        fault("ACK received without an outstanding DATA frame");

    const Frame done = std::move(*pkt_tx_);
    pkt_tx_.reset();
    send_.cancel();
    emit(TraceKind::TxSuccess, &done, done.mac.retry_count + 1, 0.0, done.mac.dst);

    if (uses_rts(done))
        slrc_ = 0;
    else
        ssrc_ = 0;
    rst_cw();

    // Post-backoff before the next frame.
    if (backoff_.busy())
        fault("ACK received while the backoff is busy");
    start_backoff(false);
    tx_resume();
}

/* ---------------------------------------------------------------------
 * Retransmission
 * ------------------------------------------------------------------- */

void
Mac80211::retransmit_rts()
{
    if (!pkt_tx_ || !pkt_rts_)
        fault("RTS timeout without RTS/DATA pending");
    if (backoff_.busy())
        fault("RTS timeout while the backoff is busy");

    ++ssrc_;
    if (ssrc_ >= mac_.short_retry_limit) {
        emit(TraceKind::TxDrop, &*pkt_tx_, pkt_tx_->mac.retry_count + 1, 0.0, pkt_tx_->mac.dst);
        pkt_rts_.reset();
        pkt_tx_.reset();
        ssrc_ = 0;
        rst_cw();
    } else {
        inc_cw();
        start_backoff(false);
    }
}

void
Mac80211::retransmit_data()
{
    if (!pkt_tx_)
        fault("DATA timeout without DATA pending");
    if (pkt_rts_)
        fault("DATA timeout with an RTS still pending");
    if (backoff_.busy())
        fault("DATA timeout while the backoff is busy");

    if (pkt_tx_->mac.dst == kBroadcast) {
        // Broadcasts are never acknowledged.
        emit(TraceKind::TxSuccess, &*pkt_tx_, 1, 0.0, kBroadcast);
        pkt_tx_.reset();
        rst_cw();
        start_backoff(false);
        return;
    }

    const bool long_frame = uses_rts(*pkt_tx_);
    std::uint32_t& count = long_frame ? slrc_ : ssrc_;
    const std::uint32_t limit = long_frame ? mac_.long_retry_limit : mac_.short_retry_limit;

    ++count;
    if (count >= limit) {
        emit(TraceKind::TxDrop, &*pkt_tx_, pkt_tx_->mac.retry_count + 1, 0.0, pkt_tx_->mac.dst);
        pkt_tx_.reset();
        count = 0;
        rst_cw();
    } else {
        ++pkt_tx_->mac.retry_count;
        make_rts_if_needed();
        inc_cw();
        start_backoff(false);
    }
}

} // namespace dcfsim
