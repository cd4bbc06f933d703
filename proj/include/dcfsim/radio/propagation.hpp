#pragma once

namespace dcfsim::radio {

inline constexpr double kSpeedOfLight = 299792458.0; // m/s
inline constexpr double kPi = 3.14159265358979323846;

/// Link-budget parameters shared by the path-loss models.
struct RadioParams
{
    double pt = 0.28183815;       ///< transmit power, W
    double gt = 1.0;              ///< transmit antenna gain
    double gr = 1.0;              ///< receive antenna gain
    double ht = 1.5;              ///< transmit antenna height, m
    double hr = 1.5;              ///< receive antenna height, m
    double system_loss = 1.0;     ///< L >= 1
    double lambda = kSpeedOfLight / 914e6; ///< carrier wavelength, m

    /// Throws InputError unless every field is positive and L >= 1.
    void validate() const;

    bool operator==(const RadioParams&) const = default;
};

/// Default parameter set: the 914 MHz radio whose two-ray ranges come out at
/// 250 m (reception) and 550 m (carrier sense).
RadioParams default_radio();

/// Distances that define the default reception and carrier-sense thresholds.
inline constexpr double kDefaultRxRange = 250.0;
inline constexpr double kDefaultCsRange = 550.0;

/// Friis free space: Pt Gt Gr lambda^2 / ((4 pi d)^2 L).
double friis_pr(const RadioParams& p, double d);

/// 4 pi ht hr / lambda.
double crossover_dist(double ht, double hr, double lambda);

/// Two-ray ground reflection: Friis below the crossover distance,
/// Pt Gt Gr ht^2 hr^2 / (d^4 L) at and beyond it.
double two_ray_pr(const RadioParams& p, double d);

/// Inverse of two_ray_pr: the distance at which the received power equals
/// `threshold`.
double get_dist(double threshold, const RadioParams& p);

/// Default RXThresh / CSThresh derived from the given radio.
double default_rx_thresh(const RadioParams& p);
double default_cs_thresh(const RadioParams& p);

} // namespace dcfsim::radio
