#include "dcfsim/radio/fading.hpp"

#include "dcfsim/sim/errors.hpp"
#include "dcfsim/sim/rng.hpp"

#include <cmath>

namespace dcfsim::radio {

std::string_view
to_string(FadingModel m)
{
    return m == FadingModel::Rayleigh ? "rayleigh" : "none";
}

std::optional<FadingModel>
fading_from_string(std::string_view s)
{
    if (s == "none")
        return FadingModel::None;
    if (s == "rayleigh")
        return FadingModel::Rayleigh;
    return std::nullopt;
}

double
apply_fading(FadingModel model, double pr_mean, Rng& rng)
{
    if (!(pr_mean > 0.0) || !std::isfinite(pr_mean))
        throw InputError("apply_fading: mean power must be > 0");
    if (model == FadingModel::None)
        return pr_mean;
    return rng.exponential(pr_mean);
}

} // namespace dcfsim::radio
