#pragma once

#include <cstdint>
#include <string_view>

namespace dcfsim {

struct PhyParams
{
    double cs_thresh = 0.0;        ///< W; 0 means "derive from the radio"
    double rx_thresh = 0.0;        ///< W; 0 means "derive from the radio"
    double cp_thresh_db = 10.0;
    double data_rate = 11e6;       ///< bit/s
    double plcp_overhead = 192e-6; ///< s, long preamble + PLCP header

    /// Throws InputError unless rx_thresh > cs_thresh > 0 and rates are positive.
    void validate() const;

    /// Capture threshold as a linear power ratio.
    double cp_ratio() const;

    bool operator==(const PhyParams&) const = default;
};

/// plcp + 8 * size / rate.
double txtime(std::uint32_t size, double rate, double plcp_overhead);
/// Airtime of `size` bytes at the PHY data rate.
double txtime(std::uint32_t size, const PhyParams& phy);

enum class ReceptionClass { NotSensed, SensedError, Decodable };

std::string_view to_string(ReceptionClass c);

/// Three-way threshold test; both upper classes include their lower bound.
ReceptionClass classify(double pr, const PhyParams& phy);

} // namespace dcfsim
