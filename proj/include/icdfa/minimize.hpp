#ifndef ICDFA_MINIMIZE_HPP
#define ICDFA_MINIMIZE_HPP

// Hopcroft partition refinement for complete DFAs.

#include "icdfa/dfa.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace icdfa {

/// Refines the states of one transition structure into equivalence classes
/// for any number of final-state sets. The reverse transitions are built once
/// per structure by load(); refine() can then be called repeatedly.
class HopcroftPartitioner {
public:
    HopcroftPartitioner(int n, int k) : n_(n), k_(k)
    {
        if (n < 1 || k < 1)
            throw std::invalid_argument("partitioner needs n >= 1 and k >= 1");
        const auto un = static_cast<std::size_t>(n);
        const auto uk = static_cast<std::size_t>(k);
        inv_offset_.resize(uk * (un + 1));
        inv_source_.resize(uk * un);
        elems_.resize(un);
        pos_.resize(un);
        block_.resize(un);
        first_.resize(un);
        end_.resize(un);
        marked_end_.resize(un);
        pending_.resize(un * uk);
        scratch_.reserve(un);
        touched_.reserve(un);
        worklist_.reserve(un * uk);
    }

    explicit HopcroftPartitioner(const Dfa& dfa) : HopcroftPartitioner(dfa.states(), dfa.symbols())
    {
        load(dfa.transitions());
    }

    int states() const noexcept { return n_; }
    int symbols() const noexcept { return k_; }

    /// delta is row-major, n*k entries.
    void load(std::span<const State> delta)
    {
        if (delta.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_))
            throw std::invalid_argument("transition table size does not match the partitioner");
        loaded_ = true;
        const auto un = static_cast<std::size_t>(n_);
        std::fill(inv_offset_.begin(), inv_offset_.end(), 0);
        for (std::size_t q = 0; q < un; ++q)
            for (int c = 0; c < k_; ++c)
                ++inv_offset_[static_cast<std::size_t>(c) * (un + 1) + static_cast<std::size_t>(delta[q * k_ + c]) + 1];
        for (int c = 0; c < k_; ++c) {
            auto* off = &inv_offset_[static_cast<std::size_t>(c) * (un + 1)];
            for (std::size_t q = 0; q < un; ++q)
                off[q + 1] += off[q];
        }
        scratch_.assign(inv_offset_.begin(), inv_offset_.end()); // fill cursors
        for (std::size_t q = 0; q < un; ++q)
            for (int c = 0; c < k_; ++c) {
                auto t = static_cast<std::size_t>(delta[q * k_ + c]);
                auto& cursor = scratch_[static_cast<std::size_t>(c) * (un + 1) + t];
                inv_source_[static_cast<std::size_t>(c) * un + static_cast<std::size_t>(cursor)] = static_cast<State>(q);
                ++cursor;
            }
        scratch_.clear();
    }

    /// Number of equivalence classes when `is_final(q)` gives the final states.
    template <class IsFinal>
    int refine_by(IsFinal&& is_final)
    {
        if (!loaded_)
            throw std::logic_error("partitioner has no transition structure loaded");
        const int n = n_;
        int front = 0;
        int back = n;
        for (State q = 0; q < n; ++q) {
            int p = is_final(q) ? front++ : --back;
            elems_[static_cast<std::size_t>(p)] = q;
            pos_[static_cast<std::size_t>(q)] = p;
        }
        blocks_ = 0;
        if (front > 0)
            open_block(0, front);
        if (front < n)
            open_block(front, n);
        std::fill(pending_.begin(), pending_.end(), false);
        worklist_.clear();
        if (blocks_ == 1)
            return 1;
        const int seed = (end_[0] - first_[0] <= end_[1] - first_[1]) ? 0 : 1;
        for (int c = 0; c < k_; ++c)
            push(seed, c);

        const auto un = static_cast<std::size_t>(n);
        while (!worklist_.empty()) {
            auto [splitter, c] = worklist_.back();
            worklist_.pop_back();
            pending_[static_cast<std::size_t>(splitter) * k_ + c] = false;

            // copy: marking below may permute the splitter's own range
            scratch_.assign(elems_.begin() + first_[splitter], elems_.begin() + end_[splitter]);
            const auto* off = &inv_offset_[static_cast<std::size_t>(c) * (un + 1)];
            const auto* src = &inv_source_[static_cast<std::size_t>(c) * un];
            for (State q : scratch_)
                for (int i = off[q]; i < off[q + 1]; ++i)
                    mark(src[i]);

            for (int b : touched_) {
                const int marked = marked_end_[b] - first_[b];
                if (marked == end_[b] - first_[b]) {
                    marked_end_[b] = first_[b];
                    continue;
                }
                // marked prefix becomes a new block
                const int nb = blocks_;
                open_block(first_[b], marked_end_[b]);
                first_[b] = marked_end_[b];
                marked_end_[b] = first_[b];
                const bool new_smaller = (end_[nb] - first_[nb]) <= (end_[b] - first_[b]);
                for (int s = 0; s < k_; ++s) {
                    if (pending_[static_cast<std::size_t>(b) * k_ + s])
                        push(nb, s);
                    else
                        push(new_smaller ? nb : b, s);
                }
            }
            touched_.clear();
        }
        return blocks_;
    }

    int refine(const std::vector<bool>& finals)
    {
        if (finals.size() != static_cast<std::size_t>(n_))
            throw std::invalid_argument("final-state set size does not match the partitioner");
        return refine_by([&](State q) { return static_cast<bool>(finals[static_cast<std::size_t>(q)]); });
    }

    /// Bit q of mask marks state q final; n <= 64.
    int refine_mask(std::uint64_t mask)
    {
        if (n_ > 64)
            throw std::invalid_argument("mask refinement supports at most 64 states");
        return refine_by([mask](State q) { return ((mask >> q) & 1U) != 0; });
    }

    /// Class of state q after the last refine; classes are 0..classes-1.
    int class_of(State q) const { return block_[static_cast<std::size_t>(q)]; }
    int classes() const noexcept { return blocks_; }

private:
    void open_block(int from, int to)
    {
        const int b = blocks_++;
        first_[static_cast<std::size_t>(b)] = from;
        end_[static_cast<std::size_t>(b)] = to;
        marked_end_[static_cast<std::size_t>(b)] = from;
        for (int i = from; i < to; ++i)
            block_[static_cast<std::size_t>(elems_[static_cast<std::size_t>(i)])] = b;
    }

    void push(int b, int c)
    {
        auto& flag = pending_[static_cast<std::size_t>(b) * k_ + c];
        if (!flag) {
            flag = true;
            worklist_.emplace_back(b, c);
        }
    }

    void mark(State p)
    {
        const int b = block_[static_cast<std::size_t>(p)];
        const int at = pos_[static_cast<std::size_t>(p)];
        int& boundary = marked_end_[static_cast<std::size_t>(b)];
        if (at < boundary)
            return;
        if (boundary == first_[static_cast<std::size_t>(b)])
            touched_.push_back(b);
        const State other = elems_[static_cast<std::size_t>(boundary)];
        std::swap(elems_[static_cast<std::size_t>(boundary)], elems_[static_cast<std::size_t>(at)]);
        pos_[static_cast<std::size_t>(other)] = at;
        pos_[static_cast<std::size_t>(p)] = boundary;
        ++boundary;
    }

    int n_;
    int k_;
    bool loaded_ = false;
    std::vector<int> inv_offset_;   // per symbol, n+1 offsets into inv_source_
    std::vector<State> inv_source_; // per symbol, predecessors grouped by target
    std::vector<State> elems_;      // states grouped by block
    std::vector<int> pos_;          // index of each state in elems_
    std::vector<int> block_;
    std::vector<int> first_;
    std::vector<int> end_;
    std::vector<int> marked_end_;
    std::vector<char> pending_; // (block, symbol) is on the worklist
    std::vector<std::pair<int, int>> worklist_;
    std::vector<int> touched_;
    std::vector<State> scratch_;
    int blocks_ = 0;
};

/// Minimal equivalent automaton, in canonical form (initial 0, breadth-first
/// numbering) with the finals carried over.
inline Dfa hopcroft_minimize(const Dfa& dfa)
{
    if (!is_initially_connected(dfa))
        throw std::invalid_argument("minimization expects an initially-connected automaton");
    HopcroftPartitioner part(dfa);
    const int classes = part.refine(dfa.finals());
    const int k = dfa.symbols();
    std::vector<State> delta(static_cast<std::size_t>(classes) * k, -1);
    std::vector<bool> finals(static_cast<std::size_t>(classes), false);
    for (State q = 0; q < dfa.states(); ++q) {
        const int b = part.class_of(q);
        for (int c = 0; c < k; ++c)
            delta[static_cast<std::size_t>(b) * k + c] = part.class_of(dfa.next(q, c));
        finals[static_cast<std::size_t>(b)] = dfa.is_final(q);
    }
    Dfa quotient(classes, k, std::move(delta), part.class_of(dfa.initial()), std::move(finals));
    return canonicalize(quotient);
}

inline bool is_minimal(const Dfa& dfa)
{
    if (!is_initially_connected(dfa))
        throw std::invalid_argument("minimality is only decided for initially-connected automata");
    HopcroftPartitioner part(dfa);
    return part.refine(dfa.finals()) == dfa.states();
}

} // namespace icdfa

#endif
