#pragma once

#include <stdexcept>
#include <string>

namespace noisyatom {

// Raised when a numerical object the caller asked for does not exist
// (singular solve, vanishing denominator, zero-variance series). The kind
// string is stable and ends up in machine-readable error records.
class NumericalError : public std::runtime_error {
public:
    NumericalError(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

}  // namespace noisyatom
