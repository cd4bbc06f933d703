#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string_view>

namespace dcfsim {

using NodeId = std::uint32_t;
inline constexpr NodeId kBroadcast = 0xffffffffu;

/// Index of a traffic flow within a scenario; kNoFlow for control frames.
using FlowId = std::int32_t;
inline constexpr FlowId kNoFlow = -1;

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Vec3&) const = default;
};

inline double
distance(const Vec3& a, const Vec3& b)
{
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

enum class FrameType : std::uint8_t { Rts, Cts, Data, Ack };
enum class Direction : std::uint8_t { Up, Down };

std::string_view to_string(FrameType t);

inline bool
is_control(FrameType t)
{
    return t != FrameType::Data;
}

struct MacHeader
{
    FrameType type = FrameType::Data;
    std::uint32_t duration_us = 0; ///< NAV field
    NodeId src = 0;
    NodeId dst = 0;
    std::uint32_t retry_count = 0;
    std::uint32_t seq = 0;
};

/// Transmit-side stamp plus the power computed by the receiving interface.
struct TxInfo
{
    NodeId tx_node = 0;
    double tx_power = 0.0;        ///< W
    double gt = 1.0;
    double gr = 1.0;
    double antenna_height = 0.0;  ///< m
    Vec3 tx_position;
    double lambda = 0.0;          ///< m
    double capture_threshold = 10.0; ///< linear power ratio (CPThresh)
    std::optional<double> rx_power; ///< set once by the receiving interface
};

struct Frame
{
    std::uint64_t uid = 0;
    Direction direction = Direction::Down;
    std::uint32_t size = 0; ///< bytes on air, MAC header included
    bool error = false;
    MacHeader mac;
    TxInfo txinfo;
    FlowId flow = kNoFlow;
    std::uint32_t payload = 0; ///< application bytes carried by a DATA frame
};

} // namespace dcfsim
