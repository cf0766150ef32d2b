#ifndef ICDFA_DFA_HPP
#define ICDFA_DFA_HPP

// Complete deterministic automata over dense labels: states are 0..n-1,
// symbols 0..k-1, and the symbol order is the integer order.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace icdfa {

using State = std::int32_t;

class Dfa {
public:
    /// delta is row-major: delta[q * k + c] is the target of state q on symbol c.
    Dfa(int n, int k, std::vector<State> delta, State initial, std::vector<bool> finals)
        : n_(n), k_(k), delta_(std::move(delta)), initial_(initial), finals_(std::move(finals))
    {
        if (n_ < 1 || k_ < 1)
            throw std::invalid_argument("automaton needs n >= 1 and k >= 1");
        if (delta_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_))
            throw std::invalid_argument("transition table must have n*k entries");
        for (std::size_t i = 0; i < delta_.size(); ++i)
            if (delta_[i] < 0 || delta_[i] >= n_)
                throw std::invalid_argument("transition " + std::to_string(i) + " targets invalid state "
                                            + std::to_string(delta_[i]));
        if (initial_ < 0 || initial_ >= n_)
            throw std::invalid_argument("initial state out of range");
        if (finals_.empty())
            finals_.assign(static_cast<std::size_t>(n_), false);
        if (finals_.size() != static_cast<std::size_t>(n_))
            throw std::invalid_argument("final-state set must have n entries");
    }

    /// Structure only: no final states.
    Dfa(int n, int k, std::vector<State> delta, State initial = 0)
        : Dfa(n, k, std::move(delta), initial, std::vector<bool>(static_cast<std::size_t>(n), false))
    {
    }

    int states() const noexcept { return n_; }
    int symbols() const noexcept { return k_; }
    State initial() const noexcept { return initial_; }
    State next(State q, int c) const { return delta_[static_cast<std::size_t>(q) * k_ + c]; }
    bool is_final(State q) const { return finals_[static_cast<std::size_t>(q)]; }
    const std::vector<State>& transitions() const noexcept { return delta_; }
    const std::vector<bool>& finals() const noexcept { return finals_; }

    Dfa with_finals(std::vector<bool> finals) const
    {
        return Dfa(n_, k_, delta_, initial_, std::move(finals));
    }

    friend bool operator==(const Dfa&, const Dfa&) = default;

private:
    int n_;
    int k_;
    std::vector<State> delta_;
    State initial_;
    std::vector<bool> finals_;
};

inline bool is_initially_connected(const Dfa& dfa)
{
    std::vector<bool> seen(static_cast<std::size_t>(dfa.states()), false);
    std::vector<State> stack{dfa.initial()};
    seen[static_cast<std::size_t>(dfa.initial())] = true;
    int reached = 1;
    while (!stack.empty()) {
        State q = stack.back();
        stack.pop_back();
        for (int c = 0; c < dfa.symbols(); ++c) {
            State t = dfa.next(q, c);
            if (!seen[static_cast<std::size_t>(t)]) {
                seen[static_cast<std::size_t>(t)] = true;
                ++reached;
                stack.push_back(t);
            }
        }
    }
    return reached == dfa.states();
}

/// Breadth-first canonical relabeling, finals ignored.
struct CanonicalForm {
    /// Flat string: symbols[q*k + c] is the canonical target of canonical state q on c.
    std::vector<State> symbols;
    /// permutation[original] = canonical label; the initial state maps to 0.
    std::vector<State> permutation;
};

inline CanonicalForm canonical_form(const Dfa& dfa)
{
    const int n = dfa.states();
    const int k = dfa.symbols();
    CanonicalForm out;
    out.permutation.assign(static_cast<std::size_t>(n), -1);
    out.symbols.resize(static_cast<std::size_t>(n) * k);

    std::vector<State> order;
    order.reserve(static_cast<std::size_t>(n));
    out.permutation[static_cast<std::size_t>(dfa.initial())] = 0;
    order.push_back(dfa.initial());
    // order doubles as the BFS queue: labels are handed out in discovery order
    for (std::size_t head = 0; head < order.size(); ++head) {
        State q = order[head];
        for (int c = 0; c < k; ++c) {
            State t = dfa.next(q, c);
            auto& label = out.permutation[static_cast<std::size_t>(t)];
            if (label < 0) {
                label = static_cast<State>(order.size());
                order.push_back(t);
            }
            out.symbols[head * k + c] = label;
        }
    }
    if (order.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("automaton is not initially connected");
    return out;
}

/// The automaton relabeled by its canonical permutation: initial 0,
/// breadth-first state order, finals carried along.
inline Dfa canonicalize(const Dfa& dfa)
{
    auto form = canonical_form(dfa);
    std::vector<bool> finals(static_cast<std::size_t>(dfa.states()), false);
    for (State q = 0; q < dfa.states(); ++q)
        finals[static_cast<std::size_t>(form.permutation[q])] = dfa.is_final(q);
    return Dfa(dfa.states(), dfa.symbols(), std::move(form.symbols), 0, std::move(finals));
}

inline bool are_isomorphic(const Dfa& a, const Dfa& b)
{
    if (!is_initially_connected(a) || !is_initially_connected(b))
        throw std::invalid_argument("isomorphism is only decided for initially-connected automata");
    if (a.states() != b.states() || a.symbols() != b.symbols())
        return false;
    return canonicalize(a) == canonicalize(b);
}

inline Dfa complement(const Dfa& dfa)
{
    std::vector<bool> finals = dfa.finals();
    finals.flip();
    return dfa.with_finals(std::move(finals));
}

/// Renames states: state q of the input becomes mapping[q]. mapping must be a permutation.
inline Dfa relabel(const Dfa& dfa, const std::vector<State>& mapping)
{
    const int n = dfa.states();
    const int k = dfa.symbols();
    if (mapping.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("relabeling must cover every state");
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    for (State m : mapping) {
        if (m < 0 || m >= n || used[static_cast<std::size_t>(m)])
            throw std::invalid_argument("relabeling is not a permutation");
        used[static_cast<std::size_t>(m)] = true;
    }
    std::vector<State> delta(static_cast<std::size_t>(n) * k);
    std::vector<bool> finals(static_cast<std::size_t>(n));
    for (State q = 0; q < n; ++q) {
        for (int c = 0; c < k; ++c)
            delta[static_cast<std::size_t>(mapping[q]) * k + c] = mapping[static_cast<std::size_t>(dfa.next(q, c))];
        finals[static_cast<std::size_t>(mapping[q])] = dfa.is_final(q);
    }
    return Dfa(n, k, std::move(delta), mapping[static_cast<std::size_t>(dfa.initial())], std::move(finals));
}

inline bool accepts(const Dfa& dfa, const std::vector<int>& word)
{
    State q = dfa.initial();
    for (int c : word)
        q = dfa.next(q, c);
    return dfa.is_final(q);
}

// Text format:
//   n k
//   <k targets>          (one row per state)
//   initial: <state>
//   finals: <n-bit string, index i = state i>

inline std::string finals_bits(const Dfa& dfa)
{
    std::string bits;
    for (bool f : dfa.finals())
        bits.push_back(f ? '1' : '0');
    return bits;
}

inline void write_dfa(std::ostream& out, const Dfa& dfa)
{
    out << dfa.states() << ' ' << dfa.symbols() << '\n';
    for (State q = 0; q < dfa.states(); ++q) {
        for (int c = 0; c < dfa.symbols(); ++c)
            out << (c ? " " : "") << dfa.next(q, c);
        out << '\n';
    }
    out << "initial: " << dfa.initial() << '\n';
    out << "finals: " << finals_bits(dfa) << '\n';
}

inline std::string to_text(const Dfa& dfa)
{
    std::ostringstream out;
    write_dfa(out, dfa);
    return out.str();
}

class DfaParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line)
{
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            return true;
    }
    return false;
}

inline std::string expect_line(std::istream& in, const char* what)
{
    std::string line;
    if (!next_content_line(in, line))
        throw DfaParseError(std::string("unexpected end of input, expected ") + what);
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    return line;
}

inline std::string after_key(const std::string& line, const std::string& key)
{
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    if (head != key)
        throw DfaParseError("expected '" + key + "', got '" + line + "'");
    std::string value;
    ls >> value;
    std::string extra;
    if (ls >> extra)
        throw DfaParseError("trailing token '" + extra + "' after " + key);
    return value;
}

} // namespace detail

/// Reads one automaton record. Returns nullopt at clean end of input.
inline std::optional<Dfa> read_dfa(std::istream& in)
{
    std::string line;
    if (!detail::next_content_line(in, line))
        return std::nullopt;

    std::istringstream header(line);
    long long n = 0, k = 0;
    std::string extra;
    if (!(header >> n >> k) || (header >> extra))
        throw DfaParseError("bad header line '" + line + "', expected 'n k'");
    if (n < 1 || k < 1 || n > (1 << 20) || k > (1 << 16))
        throw DfaParseError("header '" + line + "' out of range");

    std::vector<State> delta;
    delta.reserve(static_cast<std::size_t>(n * k));
    for (long long q = 0; q < n; ++q) {
        std::string row = detail::expect_line(in, "a transition row");
        std::istringstream rs(row);
        for (long long c = 0; c < k; ++c) {
            std::string token;
            if (!(rs >> token))
                throw DfaParseError("row " + std::to_string(q) + " has fewer than k entries");
            long long t = 0;
            try {
                std::size_t used = 0;
                t = std::stoll(token, &used);
                if (used != token.size())
                    throw std::invalid_argument(token);
            } catch (const std::exception&) {
                throw DfaParseError("bad transition target '" + token + "' in row " + std::to_string(q));
            }
            if (t < 0 || t >= n)
                throw DfaParseError("transition target '" + token + "' out of range in row " + std::to_string(q));
            delta.push_back(static_cast<State>(t));
        }
        std::string token;
        if (rs >> token)
            throw DfaParseError("row " + std::to_string(q) + " has extra entry '" + token + "'");
    }

    std::string init_text = detail::after_key(detail::expect_line(in, "'initial:'"), "initial:");
    long long initial = -1;
    try {
        std::size_t used = 0;
        initial = std::stoll(init_text, &used);
        if (used != init_text.size())
            throw std::invalid_argument(init_text);
    } catch (const std::exception&) {
        throw DfaParseError("bad initial state '" + init_text + "'");
    }
    if (initial < 0 || initial >= n)
        throw DfaParseError("initial state '" + init_text + "' out of range");

    std::string bits = detail::after_key(detail::expect_line(in, "'finals:'"), "finals:");
    if (bits.size() != static_cast<std::size_t>(n))
        throw DfaParseError("finals '" + bits + "' must have exactly n characters");
    std::vector<bool> finals;
    for (char b : bits) {
        if (b != '0' && b != '1')
            throw DfaParseError("finals '" + bits + "' must be a 0/1 string");
        finals.push_back(b == '1');
    }
    return Dfa(static_cast<int>(n), static_cast<int>(k), std::move(delta), static_cast<State>(initial),
               std::move(finals));
}

inline Dfa parse_dfa(const std::string& text)
{
    std::istringstream in(text);
    auto dfa = read_dfa(in);
    if (!dfa)
        throw DfaParseError("no automaton in input");
    return *dfa;
}

} // namespace icdfa

#endif
