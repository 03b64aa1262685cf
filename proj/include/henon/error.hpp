#pragma once

#include <stdexcept>
#include <string>

namespace henon {

// Every failure carries a stable, machine-readable code (e.g.
// "division-by-zero-interval", "mu0-possibly-zero") plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

} // namespace henon
