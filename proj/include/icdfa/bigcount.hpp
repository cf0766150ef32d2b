#ifndef ICDFA_BIGCOUNT_HPP
#define ICDFA_BIGCOUNT_HPP

// Arbitrary-precision counts. Everything that counts automata goes through
// BigCount; no floating point is involved in counting.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace icdfa {

using BigCount = boost::multiprecision::cpp_int;

inline BigCount pow_big(std::uint64_t base, std::uint64_t exponent)
{
    return boost::multiprecision::pow(BigCount(base), static_cast<unsigned>(exponent));
}

inline std::string to_decimal(const BigCount& value)
{
    return value.str();
}

/// Parses a plain non-negative decimal integer. Signs, whitespace, hex
/// prefixes and exponents are all rejected.
inline BigCount parse_decimal(std::string_view text)
{
    if (text.empty())
        throw std::invalid_argument("empty number");
    for (char c : text)
        if (c < '0' || c > '9')
            throw std::invalid_argument("not a non-negative decimal integer: '" + std::string(text) + "'");
    return BigCount(std::string(text));
}

/// Narrowing conversion that refuses to truncate.
inline std::uint64_t to_u64(const BigCount& value)
{
    if (value < 0 || value > BigCount(std::numeric_limits<std::uint64_t>::max()))
        throw std::overflow_error("count does not fit in 64 bits: " + value.str());
    return static_cast<std::uint64_t>(value);
}

} // namespace icdfa

#endif
