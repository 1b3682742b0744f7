// Error hierarchy shared by all mlturn modules.
#pragma once

#include <stdexcept>
#include <string>

namespace mlturn {

/// Base class of every recoverable error thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A per-unit-length matrix (or a quantity derived from one) is not positive
/// definite; the cross-section data cannot describe a passive coupled pair.
class NonPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// The source-side admittance is zero, negative, or otherwise unusable.
/// The bounce model requires a finite, strictly positive source admittance.
class DegenerateSource : public Error {
public:
    using Error::Error;
};

/// A peak-measurement window contains no samples of the waveform.
class EmptyWindow : public Error {
public:
    using Error::Error;
};

/// A frequency-domain denominator underflowed; the transfer function cannot
/// be evaluated at this bin (signals a misconfigured oracle grid).
class ResonancePole : public Error {
public:
    using Error::Error;
};

/// The oracle time window cannot contain the settled response.
class WindowTooShort : public Error {
public:
    using Error::Error;
};

/// A run configuration file is malformed or violates an invariant.
/// Carries the JSON field path of the offending entry.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error("config field '" + field + "': " + message), field_(std::move(field)) {}

    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace mlturn
