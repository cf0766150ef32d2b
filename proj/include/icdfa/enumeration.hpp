#ifndef ICDFA_ENUMERATION_HPP
#define ICDFA_ENUMERATION_HPP

// Exact generation of all canonical strings for (k, n).
//
// Generation order: flag sequences in descending lexicographic order, starting
// from (k-1, 2k-1, ..., (n-1)k-1) and ending at (0, 1, ..., n-2). Within one
// flag sequence the remaining positions are counted lexicographically as
// mixed-radix digits: a position between f_j and f_{j+1} takes values in
// [0, j] (radix j+1), with f_0 = -1 and f_n = kn. Positions before f_1 are
// therefore pinned to 0.

#include "icdfa/bigcount.hpp"
#include "icdfa/icdfa_string.hpp"

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace icdfa {

inline IcdfaString first_string(int k, int n)
{
    if (k < 1 || n < 1)
        throw std::invalid_argument("first_string needs k >= 1 and n >= 1");
    std::vector<State> s(static_cast<std::size_t>(k) * n, 0);
    for (int i = 1; i <= n - 1; ++i)
        s[static_cast<std::size_t>(i * k - 1)] = i;
    return make_unchecked(k, n, std::move(s));
}

inline IcdfaString last_string(int k, int n)
{
    if (k < 1 || n < 1)
        throw std::invalid_argument("last_string needs k >= 1 and n >= 1");
    std::vector<State> s(static_cast<std::size_t>(k) * n, n - 1);
    for (int i = 0; i < n - 1; ++i)
        s[static_cast<std::size_t>(i)] = i + 1;
    return make_unchecked(k, n, std::move(s));
}

inline FlagSequence first_flags(int k, int n)
{
    std::vector<int> f;
    for (int i = 1; i <= n - 1; ++i)
        f.push_back(k * i - 1);
    return FlagSequence(k, n, std::move(f));
}

namespace detail {

/// In-place step of the flag order; positions holds f_1..f_{n-1}. Returns
/// false once the sequence wraps around past (0, 1, ..., n-2).
inline bool step_flags(int k, std::vector<int>& positions)
{
    for (int i = static_cast<int>(positions.size()); i >= 1; --i) {
        int& f = positions[static_cast<std::size_t>(i - 1)];
        int prev = (i == 1) ? -1 : positions[static_cast<std::size_t>(i - 2)];
        if (f - 1 == prev) {
            f = k * i - 1;
            continue;
        }
        --f;
        return true;
    }
    return false;
}

} // namespace detail

/// Successor of a flag sequence in generation order, nullopt after the last.
inline std::optional<FlagSequence> next_flags(const FlagSequence& flags)
{
    std::vector<int> positions = flags.positions();
    if (!detail::step_flags(flags.symbols(), positions))
        return std::nullopt;
    return FlagSequence(flags.symbols(), flags.states(), std::move(positions));
}

/// Walks the generation order. Owns its current string; not shareable.
class Generator {
public:
    Generator(int k, int n) : current_(first_string(k, n))
    {
        flags_ = first_flags(k, n).positions();
        reset_radices();
    }

    explicit Generator(const IcdfaString& start) : current_(start)
    {
        flags_ = flags_of(start).positions();
        reset_radices();
    }

    bool exhausted() const noexcept { return exhausted_; }
    const IcdfaString& current() const noexcept { return current_; }
    FlagSequence flags() const { return FlagSequence(current_.k_, current_.n_, flags_); }

    /// Moves to the successor; returns false (and becomes exhausted) after the last string.
    bool advance()
    {
        if (exhausted_)
            return false;
        auto& s = current_.s_;
        for (std::size_t i = s.size(); i-- > 0;) {
            State r = radix_[i];
            if (r == 0)
                continue; // flag
            if (s[i] + 1 < r) {
                ++s[i];
                return true;
            }
            s[i] = 0;
        }
        if (!detail::step_flags(current_.k_, flags_)) {
            exhausted_ = true;
            return false;
        }
        std::fill(s.begin(), s.end(), 0);
        reset_radices();
        return true;
    }

private:
    void reset_radices()
    {
        const int n = current_.n_;
        auto& s = current_.s_;
        radix_.assign(s.size(), 0);
        // gap j lies strictly between f_j and f_{j+1}
        for (int j = 0; j <= n - 1; ++j) {
            int lo = (j == 0) ? -1 : flags_[static_cast<std::size_t>(j - 1)];
            int hi = (j == n - 1) ? static_cast<int>(s.size()) : flags_[static_cast<std::size_t>(j)];
            for (int i = lo + 1; i < hi; ++i)
                radix_[static_cast<std::size_t>(i)] = j + 1;
            if (j >= 1)
                s[static_cast<std::size_t>(lo)] = j;
        }
    }

    IcdfaString current_;
    std::vector<int> flags_;
    std::vector<State> radix_; // 0 marks a flag position
    bool exhausted_ = false;
};

/// Successor of s in generation order, nullopt after the last string.
inline std::optional<IcdfaString> next_icdfa(const IcdfaString& s)
{
    Generator g(s);
    if (!g.advance())
        return std::nullopt;
    return g.current();
}

/// Calls visitor(const IcdfaString&) on every canonical string in generation
/// order. A visitor returning bool stops the walk by returning false.
/// Returns the number of strings visited.
template <class Visitor>
std::uint64_t enumerate(int k, int n, Visitor&& visitor)
{
    Generator g(k, n);
    std::uint64_t count = 0;
    do {
        ++count;
        if constexpr (std::is_same_v<std::invoke_result_t<Visitor&, const IcdfaString&>, bool>) {
            if (!visitor(g.current()))
                break;
        } else {
            visitor(g.current());
        }
    } while (g.advance());
    return count;
}

inline std::uint64_t enumerate(int k, int n)
{
    return enumerate(k, n, [](const IcdfaString&) {});
}

/// A contiguous rank range [start, end) of the generation order.
struct Slice {
    int k = 0;
    int n = 0;
    std::size_t index = 0;
    BigCount start;
    BigCount end;

    BigCount size() const { return end - start; }
    friend bool operator==(const Slice&, const Slice&) = default;
};

/// Splits [0, total) into `parts` contiguous ranges whose sizes differ by at
/// most one (larger ones first). parts > total yields total singleton slices.
inline std::vector<Slice> make_slices(int k, int n, const BigCount& total, std::uint64_t parts)
{
    if (parts < 1)
        throw std::invalid_argument("make_slices needs at least one part");
    if (total < 1)
        throw std::invalid_argument("make_slices needs a non-empty space");
    if (BigCount(parts) > total)
        parts = to_u64(total);
    BigCount base, extra;
    boost::multiprecision::divide_qr(total, BigCount(parts), base, extra);
    const std::uint64_t larger = to_u64(extra);
    std::vector<Slice> out;
    out.reserve(parts);
    BigCount at = 0;
    for (std::uint64_t i = 0; i < parts; ++i) {
        BigCount len = base + (i < larger ? 1 : 0);
        out.push_back(Slice{k, n, static_cast<std::size_t>(i), at, at + len});
        at += len;
    }
    return out;
}

// Slice manifest:
//   k n B parts
//   index start end      (one line per slice)

inline void write_manifest(std::ostream& out, const BigCount& total, const std::vector<Slice>& slices)
{
    if (slices.empty())
        throw std::invalid_argument("empty slice list");
    out << slices.front().k << ' ' << slices.front().n << ' ' << total << ' ' << slices.size() << '\n';
    for (const auto& s : slices)
        out << s.index << ' ' << s.start << ' ' << s.end << '\n';
}

struct Manifest {
    int k = 0;
    int n = 0;
    BigCount total;
    std::vector<Slice> slices;
};

inline Manifest read_manifest(std::istream& in)
{
    Manifest m;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty slice manifest");
    std::istringstream hs(line);
    std::string total_text;
    std::size_t parts = 0;
    if (!(hs >> m.k >> m.n >> total_text >> parts) || m.k < 1 || m.n < 1)
        throw std::runtime_error("bad manifest header '" + line + "'");
    m.total = parse_decimal(total_text);
    BigCount expect_start = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream rs(line);
        std::size_t index = 0;
        std::string a, b;
        if (!(rs >> index >> a >> b))
            throw std::runtime_error("bad manifest row '" + line + "'");
        Slice s{m.k, m.n, index, parse_decimal(a), parse_decimal(b)};
        if (index != m.slices.size() || s.start != expect_start || s.end <= s.start || s.end > m.total)
            throw std::runtime_error("manifest row '" + line + "' breaks the contiguous cover");
        expect_start = s.end;
        m.slices.push_back(std::move(s));
    }
    if (m.slices.size() != parts || expect_start != m.total)
        throw std::runtime_error("manifest does not cover [0, B)");
    return m;
}

} // namespace icdfa

#endif
