#include "pfc/rational.hpp"

#include <charconv>
#include <numeric>
#include <stdexcept>

namespace pfc {

Rational Rational::make(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    return g == 0 ? Rational{0, 1} : Rational{num / g, den / g};
}

std::string Rational::str() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

std::uint64_t parse_digits(std::string_view s, std::string_view whole) {
    if (s.empty()) throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("malformed rational '" + std::string(whole) + "'");
    return v;
}

} // namespace

Rational parse_rational(std::string_view text) {
    if (const auto slash = text.find('/'); slash != std::string_view::npos)
        return Rational::make(parse_digits(text.substr(0, slash), text), parse_digits(text.substr(slash + 1), text));
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return Rational::make(parse_digits(text, text), 1);
    const std::string_view int_part = text.substr(0, dot);
    const std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.size() > 18) throw std::invalid_argument("too many decimal digits in '" + std::string(text) + "'");
    std::uint64_t den = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
    const std::uint64_t ip = int_part.empty() ? 0 : parse_digits(int_part, text);
    const std::uint64_t fp = frac_part.empty() ? 0 : parse_digits(frac_part, text);
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed rational '.'");
    if (ip > (UINT64_MAX - fp) / den) throw std::invalid_argument("rational out of range '" + std::string(text) + "'");
    return Rational::make(ip * den + fp, den);
}

} // namespace pfc
