#include "dcfsim/phy/phy_params.hpp"

#include "dcfsim/phy/frame.hpp"
#include "dcfsim/sim/errors.hpp"

#include <cmath>

namespace dcfsim {

std::string_view
to_string(FrameType t)
{
    switch (t) {
    case FrameType::Rts:
        return "RTS";
    case FrameType::Cts:
        return "CTS";
    case FrameType::Data:
        return "DATA";
    case FrameType::Ack:
        return "ACK";
    }
    return "?";
}

void
PhyParams::validate() const
{
    if (!(cs_thresh > 0.0))
        throw InputError("phy: cs_thresh must be > 0");
    if (!(rx_thresh > cs_thresh))
        throw InputError("phy: rx_thresh must be greater than cs_thresh");
    if (!std::isfinite(cp_thresh_db))
        throw InputError("phy: cp_thresh_db must be finite");
    if (!(data_rate > 0.0))
        throw InputError("phy: data_rate must be > 0");
    if (!(plcp_overhead >= 0.0))
        throw InputError("phy: plcp_overhead must be >= 0");
}

double
PhyParams::cp_ratio() const
{
    return std::pow(10.0, cp_thresh_db / 10.0);
}

double
txtime(std::uint32_t size, double rate, double plcp_overhead)
{
    if (size == 0)
        throw InputError("txtime: frame size must be > 0");
    if (!(rate > 0.0))
        throw InputError("txtime: rate must be > 0");
    return plcp_overhead + 8.0 * static_cast<double>(size) / rate;
}

double
txtime(std::uint32_t size, const PhyParams& phy)
{
    return txtime(size, phy.data_rate, phy.plcp_overhead);
}

std::string_view
to_string(ReceptionClass c)
{
    switch (c) {
    case ReceptionClass::NotSensed:
        return "not_sensed";
    case ReceptionClass::SensedError:
        return "sensed_error";
    case ReceptionClass::Decodable:
        return "decodable";
    }
    return "?";
}

ReceptionClass
classify(double pr, const PhyParams& phy)
{
    if (pr < phy.cs_thresh)
        return ReceptionClass::NotSensed;
    if (pr < phy.rx_thresh)
        return ReceptionClass::SensedError;
    return ReceptionClass::Decodable;
}

} // namespace dcfsim
