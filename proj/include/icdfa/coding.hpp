#ifndef ICDFA_CODING_HPP
#define ICDFA_CODING_HPP

// Optimal coding of canonical strings: rank(s) is the zero-based position of
// s in generation order, unrank is its inverse. A rank splits into
//   block offset: the number of strings whose flag sequence precedes flags(s);
//   digit value:  the mixed-radix value of the non-flag positions of s.
//
// For the block offset, a flag sequence g precedes f iff at the first index i
// where they differ g_i > f_i. Fixing f_1..f_{i-1} and g_i = j, the strings
// in those blocks number
//   W(i, j) = P_i * i^(j - f_{i-1} - 1) * N(i, j),
// where P_i = prod_{m=1}^{i-2} (m+1)^(f_{m+1} - f_m - 1) counts the digits in
// the gaps already fixed and i^(...) the digits between f_{i-1} and j.

#include "icdfa/counting.hpp"
#include "icdfa/enumeration.hpp"
#include "icdfa/icdfa_string.hpp"

#include <stdexcept>
#include <type_traits>
#include <vector>

namespace icdfa {

namespace detail {

inline void check_table(const CountTable& table, int k, int n)
{
    if (table.symbols() != k || table.states() != n)
        throw std::invalid_argument("count table was built for (" + std::to_string(table.symbols()) + ", "
                                    + std::to_string(table.states()) + "), not (" + std::to_string(k) + ", "
                                    + std::to_string(n) + ")");
}

/// Radix of each position under the given flags; 0 marks a flag.
inline std::vector<int> radices(int k, int n, const std::vector<int>& flags)
{
    std::vector<int> r(static_cast<std::size_t>(k) * n, 0);
    for (int j = 0; j <= n - 1; ++j) {
        int lo = (j == 0) ? -1 : flags[static_cast<std::size_t>(j - 1)];
        int hi = (j == n - 1) ? k * n : flags[static_cast<std::size_t>(j)];
        for (int i = lo + 1; i < hi; ++i)
            r[static_cast<std::size_t>(i)] = j + 1;
    }
    return r;
}

} // namespace detail

/// Number of strings in the flag blocks that precede `flags`.
inline BigCount block_offset(const FlagSequence& flags, const CountTable& table)
{
    const int k = flags.symbols();
    const int n = flags.states();
    detail::check_table(table, k, n);
    BigCount offset = 0;
    BigCount fixed = 1; // P_i
    for (int i = 1; i <= n - 1; ++i) {
        const int prev = flags.at(i - 1);
        const int fi = flags.at(i);
        // j runs over (f_i, ik-1]; i^(j - prev - 1) grows with j
        BigCount radix_power = pow_big(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(fi - prev));
        for (int j = fi + 1; j <= i * k - 1; ++j) {
            offset += fixed * radix_power * table.at(i, j);
            radix_power *= i;
        }
        fixed *= pow_big(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(fi - prev - 1));
    }
    return offset;
}

/// Mixed-radix value of the non-flag digits, most significant first.
inline BigCount digit_value(const IcdfaString& s, const FlagSequence& flags)
{
    auto radix = detail::radices(s.symbols_count(), s.states(), flags.positions());
    BigCount value = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        int r = radix[i];
        if (r <= 1)
            continue;
        value *= r;
        value += s[i];
    }
    return value;
}

inline BigCount rank(const IcdfaString& s, const CountTable& table)
{
    detail::check_table(table, s.symbols_count(), s.states());
    auto flags = flags_of(s);
    return block_offset(flags, table) + digit_value(s, flags);
}

inline IcdfaString unrank(BigCount m, const CountTable& table)
{
    const int k = table.symbols();
    const int n = table.states();
    if (m < 0 || m >= table.total())
        throw std::out_of_range("rank " + m.str() + " is outside [0, " + table.total().str() + ")");

    // Flags, left to right, by subtracting whole blocks in generation order.
    std::vector<int> flags;
    flags.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    BigCount fixed = 1;
    int prev = -1;
    for (int i = 1; i <= n - 1; ++i) {
        int j = i * k - 1;
        BigCount radix_power = pow_big(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j - prev - 1));
        for (;; --j) {
            BigCount weight = fixed * radix_power * table.at(i, j);
            if (m < weight)
                break;
            m -= weight;
            radix_power /= i; // exact; never reached for i = 1 past the last block
            if (j - 1 <= prev)
                throw std::logic_error("unrank ran out of flag positions");
        }
        fixed *= pow_big(static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j - prev - 1));
        flags.push_back(j);
        prev = j;
    }

    // Remaining digits, right to left, by division with remainder.
    std::vector<State> s(static_cast<std::size_t>(k) * n, 0);
    for (int j = 1; j <= n - 1; ++j)
        s[static_cast<std::size_t>(flags[static_cast<std::size_t>(j - 1)])] = j;
    auto radix = detail::radices(k, n, flags);
    for (std::size_t i = s.size(); i-- > 0 && m > 0;) {
        int r = radix[i];
        if (r <= 1)
            continue;
        BigCount q, rem;
        boost::multiprecision::divide_qr(m, BigCount(r), q, rem);
        s[i] = static_cast<State>(rem);
        m = std::move(q);
    }
    if (m != 0)
        throw std::logic_error("unrank left a residue");
    return make_unchecked(k, n, std::move(s));
}

/// Visits the strings with ranks in [from, to) in generation order.
template <class Visitor>
std::uint64_t enumerate_range(const CountTable& table, const BigCount& from, const BigCount& to, Visitor&& visitor)
{
    if (from < 0 || from > to || to > table.total())
        throw std::out_of_range("rank range [" + from.str() + ", " + to.str() + ") is outside [0, "
                                + table.total().str() + ")");
    if (from == to)
        return 0;
    const std::uint64_t steps = to_u64(to - from);
    Generator g(unrank(from, table));
    std::uint64_t count = 0;
    while (count < steps) {
        ++count;
        if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const IcdfaString&>, bool>) {
            if (!visitor(g.current()))
                break;
        } else {
            visitor(g.current());
        }
        if (count < steps && !g.advance())
            throw std::logic_error("generator exhausted inside a rank range");
    }
    return count;
}

/// Bits needed to code one structure: ceil(log2 B).
inline std::size_t code_length_bits(const CountTable& table)
{
    if (table.total() <= 1)
        return 0;
    BigCount top = table.total() - 1;
    return boost::multiprecision::msb(top) + 1;
}

} // namespace icdfa

#endif
