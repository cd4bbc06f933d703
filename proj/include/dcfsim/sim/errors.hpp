#pragma once

#include <stdexcept>
#include <string>

namespace dcfsim {

/// Rejected argument or configuration value.
class InputError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

/// A protocol invariant was broken (timer misuse, bad state transition,
/// overlapping transmit). Raised to abort the run loudly.
class ProtocolFault : public std::logic_error
{
  public:
    using std::logic_error::logic_error;
};

} // namespace dcfsim
