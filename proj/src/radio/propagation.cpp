#include "dcfsim/radio/propagation.hpp"

#include "dcfsim/sim/errors.hpp"

#include <cmath>
#include <string>

namespace dcfsim::radio {

namespace {

void
require_positive(double v, const char* what)
{
    if (!(v > 0.0) || !std::isfinite(v))
        throw InputError(std::string(what) + " must be a positive finite number");
}

} // namespace

void
RadioParams::validate() const
{
    require_positive(pt, "pt");
    require_positive(gt, "gt");
    require_positive(gr, "gr");
    require_positive(ht, "ht");
    require_positive(hr, "hr");
    require_positive(lambda, "lambda");
    if (!(system_loss >= 1.0) || !std::isfinite(system_loss))
        throw InputError("system_loss must be >= 1");
}

RadioParams
default_radio()
{
    return RadioParams{};
}

double
friis_pr(const RadioParams& p, double d)
{
    require_positive(d, "distance");
    const double m = 4.0 * kPi * d;
    return p.pt * p.gt * p.gr * p.lambda * p.lambda / (m * m * p.system_loss);
}

double
crossover_dist(double ht, double hr, double lambda)
{
    require_positive(ht, "ht");
    require_positive(hr, "hr");
    require_positive(lambda, "lambda");
    return 4.0 * kPi * ht * hr / lambda;
}

double
two_ray_pr(const RadioParams& p, double d)
{
    require_positive(d, "distance");
    if (d < crossover_dist(p.ht, p.hr, p.lambda))
        return friis_pr(p, d);
    const double h2 = p.ht * p.ht * p.hr * p.hr;
    const double d2 = d * d;
    return p.pt * p.gt * p.gr * h2 / (d2 * d2 * p.system_loss);
}

double
get_dist(double threshold, const RadioParams& p)
{
    require_positive(threshold, "threshold");
    const double dc = crossover_dist(p.ht, p.hr, p.lambda);
    const double gain = p.pt * p.gt * p.gr;

    // Power is strictly decreasing in d, so the threshold lies in the
    // fourth-power regime iff it is no larger than the power at crossover.
    const double h2 = p.ht * p.ht * p.hr * p.hr;
    const double dc2 = dc * dc;
    const double p_cross = gain * h2 / (dc2 * dc2 * p.system_loss);
    if (threshold <= p_cross)
        return std::pow(gain * h2 / (threshold * p.system_loss), 0.25);

    return std::sqrt(gain * p.lambda * p.lambda / (threshold * p.system_loss)) / (4.0 * kPi);
}

double
default_rx_thresh(const RadioParams& p)
{
    return two_ray_pr(p, kDefaultRxRange);
}

double
default_cs_thresh(const RadioParams& p)
{
    return two_ray_pr(p, kDefaultCsRange);
}

} // namespace dcfsim::radio
