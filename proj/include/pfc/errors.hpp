#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

// Raised for invalid scan/estimate parameters; the CLI maps it to exit status 2.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace pfc
