#pragma once

#include <stdexcept>
#include <string>

namespace muskat {

// Bad user-facing configuration (grid sizes, config files, CLI input).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input violates a documented domain contract (non-decaying line field,
// wrong grid kind, non-finite samples).
struct DomainViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Caller broke an operation precondition (on-interface probe point,
// non-extremum node, sign-indefinite data).
struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Time integration failure, annotated with where it happened.
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double time, long step)
        : std::runtime_error(what + " (t=" + std::to_string(time) +
                             ", step=" + std::to_string(step) + ")"),
          time(time), step(step) {}
    double time;
    long step;
};

}  // namespace muskat
