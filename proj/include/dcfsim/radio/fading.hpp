#pragma once

#include <optional>
#include <string_view>

namespace dcfsim {
class Rng;
}

namespace dcfsim::radio {

enum class FadingModel { None, Rayleigh };

std::string_view to_string(FadingModel m);
std::optional<FadingModel> fading_from_string(std::string_view s);

/// Received power after fading. Rayleigh amplitude fading makes power
/// exponentially distributed around the path-loss mean; each call is an
/// independent draw (no time correlation).
double apply_fading(FadingModel model, double pr_mean, Rng& rng);

} // namespace dcfsim::radio
