#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace rassim {

/// Configuration / schema problems. Collects every offending key so a bad
/// config is reported in one pass.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::string what) : std::runtime_error(std::move(what)) {}
    ConfigError(std::string what, std::vector<std::string> issues)
        : std::runtime_error(join(std::move(what), issues)), issues_(std::move(issues)) {}

    const std::vector<std::string>& issues() const { return issues_; }

private:
    static std::string join(std::string what, const std::vector<std::string>& issues) {
        for (const auto& i : issues) {
            what += "\n  - ";
            what += i;
        }
        return what;
    }
    std::vector<std::string> issues_;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerically invalid request (non-Hermitian input, degenerate spectrum,
/// zero denominator).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rassim
