#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pfc {

// Non-negative exact rational in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational make(std::uint64_t num, std::uint64_t den);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    long double to_long_double() const {
        return static_cast<long double>(num) / static_cast<long double>(den);
    }
    std::string str() const;

    friend bool operator==(const Rational&, const Rational&) = default;
};

// Accepts "1.7", "17/10" or "2"; "1.7" parses to exactly 17/10.
// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

} // namespace pfc
