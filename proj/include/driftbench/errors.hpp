#pragma once

#include <stdexcept>
#include <string>

namespace driftbench {

/// All active mixture weights vanished at some time step.
class DegenerateScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A covariance could not be factorized, or a density collapsed to zero
/// even in log space.
class NumericalDegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed scenario or learner config file; message names the offending
/// field or component path.
class ScenarioParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Name does not match any catalog entry.
class UnknownScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A learner was driven outside its supported setting (e.g. a third class
/// shown to the two-class SGD classifier).
class UnsupportedConfigurationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace driftbench
