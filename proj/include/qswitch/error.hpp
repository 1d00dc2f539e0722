#pragma once

#include <stdexcept>
#include <string>

namespace qswitch {

/// Bad run configuration: unknown/missing keys, malformed values, or a
/// protocol set up so it cannot do what was asked.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// The integrator lost trace or positivity beyond the quality thresholds.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace qswitch
