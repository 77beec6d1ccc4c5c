#pragma once

#include <stdexcept>
#include <string>

namespace lim {

/// Caller broke an operation's precondition (e.g. evaluating `?`).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A name (learner, family) did not resolve, or a spec is ill-formed.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exponential search ran past its configured cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace lim
