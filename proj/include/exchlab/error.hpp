#pragma once

#include <stdexcept>
#include <string>

namespace exchlab {

/// Precondition or shape violation in a library call.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A conditional sampler exhausted its rejection budget.
class ConditionUnsatisfiable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Experiment configuration failed to load or validate.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace exchlab
