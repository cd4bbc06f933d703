#pragma once

#include <cstdint>

namespace dcfsim {

struct PhyParams;

/// DCF timing and retry parameters. Defaults are 802.11b DSSS values.
struct MacParams
{
    double slot_time = 20e-6;
    double sifs = 10e-6;
    double difs = 50e-6;  ///< sifs + 2 slots
    double eifs = 0.0;    ///< 0 means "derive": sifs + difs + ACK airtime at basic rate
    std::uint32_t cw_min = 31;
    std::uint32_t cw_max = 1023;
    std::uint32_t short_retry_limit = 7;
    std::uint32_t long_retry_limit = 4;
    std::uint32_t rts_threshold = 3000; ///< bytes; frames larger than this use RTS/CTS
    bool eifs_enabled = true;
    double basic_rate = 1e6; ///< control frames
    double max_propagation_delay = 2e-6; ///< allowance per leg in response timeouts

    std::uint32_t rts_size = 20;
    std::uint32_t cts_size = 14;
    std::uint32_t ack_size = 14;
    std::uint32_t data_header_size = 28;

    /// Fill derived fields (eifs) from the PHY.
    void derive(const PhyParams& phy);

    /// Throws InputError on inconsistent values.
    void validate() const;

    bool operator==(const MacParams&) const = default;
};

} // namespace dcfsim
