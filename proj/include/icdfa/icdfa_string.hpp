#ifndef ICDFA_ICDFA_STRING_HPP
#define ICDFA_ICDFA_STRING_HPP

// Canonical strings of initially-connected complete DFA structures.
//
// A structure with n states over k symbols is the flat sequence s of length
// kn with s[q*k + c] = delta(q, c) under breadth-first state numbering. A
// sequence is canonical iff
//   R1: a label m >= 2 only occurs after some occurrence of m-1;
//   R2: label m >= 1 occurs somewhere in s[0 .. km-1].
// The first occurrences of labels 1..n-1 are the flags. R1/R2 on the string
// are equivalent to the flags being strictly increasing (G1) with f_m < km (G2).

#include "icdfa/dfa.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace icdfa {

enum class Violation {
    none,
    length, // s.size() != k*n
    range,  // some entry outside [0, n-1]
    r1,     // label m >= 2 occurs before the first m-1
    r2,     // label m does not occur in s[0 .. km-1]
};

inline const char* violation_name(Violation v)
{
    switch (v) {
    case Violation::none: return "ok";
    case Violation::length: return "length";
    case Violation::range: return "range";
    case Violation::r1: return "R1";
    case Violation::r2: return "R2";
    }
    return "?";
}

/// Outcome of validate: the first violated rule and its witness.
struct Validation {
    Violation violation = Violation::none;
    /// Offending position for range/R1, the missing label for R2, the actual length for length.
    long long witness = -1;

    bool ok() const noexcept { return violation == Violation::none; }
    explicit operator bool() const noexcept { return ok(); }
    std::string describe() const
    {
        switch (violation) {
        case Violation::none: return "ok";
        case Violation::length: return "length: got " + std::to_string(witness) + " entries";
        case Violation::range: return "range: entry at index " + std::to_string(witness);
        case Violation::r1: return "R1: label at index " + std::to_string(witness) + " precedes its predecessor";
        case Violation::r2: return "R2: label " + std::to_string(witness) + " does not occur early enough";
        }
        return "?";
    }
};

inline Validation validate(int k, int n, const std::vector<State>& s)
{
    if (k < 1 || n < 1 || s.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(n))
        return {Violation::length, static_cast<long long>(s.size())};
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] < 0 || s[i] >= n)
            return {Violation::range, static_cast<long long>(i)};
    // Scanning left to right, the largest label seen so far is the only one
    // allowed to be exceeded, and only by one.
    State top = 0;
    std::vector<long long> first(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] > top + 1 && s[i] >= 2)
            return {Violation::r1, static_cast<long long>(i)};
        if (s[i] > top)
            top = s[i];
        if (first[static_cast<std::size_t>(s[i])] < 0)
            first[static_cast<std::size_t>(s[i])] = static_cast<long long>(i);
    }
    for (int m = 1; m < n; ++m) {
        long long f = first[static_cast<std::size_t>(m)];
        if (f < 0 || f >= static_cast<long long>(k) * m)
            return {Violation::r2, m};
    }
    return {};
}

class Generator;

/// First-occurrence index of each label 1..n-1 (empty when n = 1).
/// Conventions used throughout: f_0 = -1 and f_n = k*n.
class FlagSequence {
public:
    FlagSequence(int k, int n, std::vector<int> positions) : k_(k), n_(n), positions_(std::move(positions))
    {
        if (k_ < 1 || n_ < 1)
            throw std::invalid_argument("flags need k >= 1 and n >= 1");
        if (positions_.size() != static_cast<std::size_t>(n_ - 1))
            throw std::invalid_argument("flag sequence must have n-1 entries");
        for (int j = 1; j < n_; ++j) {
            if (at(j) <= at(j - 1))
                throw std::invalid_argument("flags must be strictly increasing (G1)");
            if (at(j) >= k_ * j)
                throw std::invalid_argument("flag " + std::to_string(j) + " at " + std::to_string(at(j))
                                            + " violates f_m < km (G2)");
        }
    }

    int symbols() const noexcept { return k_; }
    int states() const noexcept { return n_; }
    /// f_j for j in [0, n]; j = 0 and j = n are the sentinels -1 and kn.
    int at(int j) const
    {
        if (j == 0)
            return -1;
        if (j == n_)
            return k_ * n_;
        return positions_[static_cast<std::size_t>(j - 1)];
    }
    const std::vector<int>& positions() const noexcept { return positions_; }

    friend bool operator==(const FlagSequence&, const FlagSequence&) = default;

private:
    int k_;
    int n_;
    std::vector<int> positions_;
};

class IcdfaString {
public:
    IcdfaString(int k, int n, std::vector<State> symbols) : k_(k), n_(n), s_(std::move(symbols))
    {
        auto v = validate(k_, n_, s_);
        if (!v)
            throw std::invalid_argument("not a canonical string (" + v.describe() + ")");
    }

    int symbols_count() const noexcept { return k_; }
    int states() const noexcept { return n_; }
    std::size_t size() const noexcept { return s_.size(); }
    State operator[](std::size_t i) const { return s_[i]; }
    const std::vector<State>& symbols() const noexcept { return s_; }

    friend bool operator==(const IcdfaString&, const IcdfaString&) = default;

private:
    struct unchecked_t {};
    IcdfaString(unchecked_t, int k, int n, std::vector<State> symbols) : k_(k), n_(n), s_(std::move(symbols)) {}
    friend IcdfaString make_unchecked(int k, int n, std::vector<State> symbols);
    friend class Generator;

    int k_;
    int n_;
    std::vector<State> s_;
};

/// For producers that guarantee validity by construction (generator, unrank, sampler).
inline IcdfaString make_unchecked(int k, int n, std::vector<State> symbols)
{
    return IcdfaString(IcdfaString::unchecked_t{}, k, n, std::move(symbols));
}

inline FlagSequence flags_of(const IcdfaString& s)
{
    const int n = s.states();
    std::vector<int> positions;
    positions.reserve(static_cast<std::size_t>(n > 0 ? n - 1 : 0));
    State next = 1;
    for (std::size_t i = 0; i < s.size() && next < n; ++i)
        if (s[i] == next) {
            positions.push_back(static_cast<int>(i));
            ++next;
        }
    return FlagSequence(s.symbols_count(), n, std::move(positions));
}

inline Dfa to_dfa(const IcdfaString& s)
{
    return Dfa(s.states(), s.symbols_count(), s.symbols(), 0);
}

inline Dfa to_dfa(const IcdfaString& s, std::vector<bool> finals)
{
    return Dfa(s.states(), s.symbols_count(), s.symbols(), 0, std::move(finals));
}

/// Canonical string of an initially-connected automaton's structure.
inline IcdfaString string_of(const Dfa& dfa)
{
    return make_unchecked(dfa.symbols(), dfa.states(), canonical_form(dfa).symbols);
}

// k-ary tree bitmaps. The breadth-first, left-to-right traversal of a k-ary
// tree with n internal nodes, root excluded, lists kn nodes; writing 1 for an
// internal node and 0 for a leaf gives a bitmap whose 1-positions are a flag
// sequence. Block j+1 of k bits holds the children of the j-th internal node.

inline std::vector<bool> flags_to_bitmap(const FlagSequence& flags)
{
    std::vector<bool> bits(static_cast<std::size_t>(flags.symbols()) * flags.states(), false);
    for (int f : flags.positions())
        bits[static_cast<std::size_t>(f)] = true;
    return bits;
}

inline FlagSequence bitmap_to_flags(int k, int n, const std::vector<bool>& bits)
{
    if (k < 1 || n < 1 || bits.size() != static_cast<std::size_t>(k) * static_cast<std::size_t>(n))
        throw std::invalid_argument("bitmap must have length k*n");
    std::vector<int> positions;
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            positions.push_back(static_cast<int>(i));
    if (positions.size() != static_cast<std::size_t>(n - 1))
        throw std::invalid_argument("bitmap must contain exactly n-1 ones");
    return FlagSequence(k, n, std::move(positions)); // throws on G2
}

inline std::string bitmap_text(const std::vector<bool>& bits)
{
    std::string out;
    for (bool b : bits)
        out.push_back(b ? '1' : '0');
    return out;
}

// Text format: "k n : s_0 s_1 ... s_{kn-1}"

inline std::string to_text(const IcdfaString& s)
{
    std::string out = std::to_string(s.symbols_count()) + ' ' + std::to_string(s.states()) + " :";
    for (State v : s.symbols()) {
        out.push_back(' ');
        out += std::to_string(v);
    }
    return out;
}

class StringParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline IcdfaString parse_icdfa_string(const std::string& line)
{
    std::istringstream in(line);
    long long k = 0, n = 0;
    std::string colon;
    if (!(in >> k >> n >> colon) || colon != ":")
        throw StringParseError("expected 'k n : s_0 ...', got '" + line + "'");
    if (k < 1 || n < 1 || k > (1 << 16) || n > (1 << 20))
        throw StringParseError("k and n out of range in '" + line + "'");
    std::vector<State> s;
    std::string token;
    while (in >> token) {
        try {
            std::size_t used = 0;
            long long v = std::stoll(token, &used);
            if (used != token.size() || v < 0 || v >= n)
                throw std::out_of_range(token);
            s.push_back(static_cast<State>(v));
        } catch (const std::exception&) {
            throw StringParseError("bad string entry '" + token + "'");
        }
    }
    auto v = validate(static_cast<int>(k), static_cast<int>(n), s);
    if (!v)
        throw StringParseError("'" + line + "' is not canonical (" + v.describe() + ")");
    return make_unchecked(static_cast<int>(k), static_cast<int>(n), std::move(s));
}

} // namespace icdfa

#endif
