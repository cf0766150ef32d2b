#include "icdfa/dfa.hpp"
#include "icdfa/icdfa_string.hpp"
#include "icdfa/random.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace icdfa;

namespace {

// States A, B, C, D = 0, 1, 2, 3; symbols a, b, c = 0, 1, 2.
Dfa four_state_example()
{
    return Dfa(4, 3,
               {
                   2, 1, 0, // A: a->C b->B c->A
                   3, 0, 1, // B: a->D b->A c->B
                   1, 3, 0, // C: a->B b->D c->A
                   2, 3, 1, // D: a->C b->D c->B
               },
               0);
}

std::vector<State> random_permutation(int n, RandomSource& rng)
{
    std::vector<State> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(p[static_cast<std::size_t>(i)], p[rng.below(static_cast<std::uint64_t>(i + 1))]);
    return p;
}

Dfa random_connected(int n, int k, RandomSource& rng)
{
    for (;;) {
        std::vector<State> delta(static_cast<std::size_t>(n * k));
        for (auto& t : delta)
            t = static_cast<State>(rng.below(static_cast<std::uint64_t>(n)));
        std::vector<bool> finals(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            finals[static_cast<std::size_t>(i)] = rng.below(2) == 1;
        Dfa d(n, k, delta, static_cast<State>(rng.below(static_cast<std::uint64_t>(n))), finals);
        if (is_initially_connected(d))
            return d;
    }
}

} // namespace

TEST(Dfa, RejectsIncompleteOrOutOfRangeTables)
{
    EXPECT_THROW(Dfa(2, 1, {0, 2}, 0), std::invalid_argument);
    EXPECT_THROW(Dfa(2, 1, {0}, 0), std::invalid_argument);
    EXPECT_THROW(Dfa(0, 1, {}, 0), std::invalid_argument);
    EXPECT_THROW(Dfa(1, 1, {0}, 1), std::invalid_argument);
}

TEST(Dfa, InitialConnectivity)
{
    EXPECT_TRUE(is_initially_connected(four_state_example()));
    EXPECT_TRUE(is_initially_connected(Dfa(1, 4, {0, 0, 0, 0}, 0)));
    EXPECT_FALSE(is_initially_connected(Dfa(2, 1, {0, 1}, 0)));
    // reachable only from a non-initial state
    EXPECT_FALSE(is_initially_connected(Dfa(3, 1, {0, 0, 1}, 0)));
}

TEST(Dfa, CanonicalFormOfFourStateExample)
{
    auto form = canonical_form(four_state_example());
    EXPECT_EQ(form.symbols, (std::vector<State>{1, 2, 0, 2, 3, 0, 3, 0, 2, 1, 3, 2}));
    // order A, C, B, D
    EXPECT_EQ(form.permutation, (std::vector<State>{0, 2, 1, 3}));
}

TEST(Dfa, CanonicalFormSmallCases)
{
    EXPECT_EQ(canonical_form(Dfa(1, 2, {0, 0}, 0)).symbols, (std::vector<State>{0, 0}));
    EXPECT_EQ(canonical_form(Dfa(2, 2, {1, 0, 1, 1}, 0)).symbols, (std::vector<State>{1, 0, 1, 1}));
    // initial state need not be 0 on input
    auto form = canonical_form(Dfa(2, 2, {0, 0, 0, 1}, 1));
    EXPECT_EQ(form.symbols, (std::vector<State>{1, 0, 1, 1}));
    EXPECT_EQ(form.permutation, (std::vector<State>{1, 0}));
    EXPECT_THROW(canonical_form(Dfa(2, 1, {0, 1}, 0)), std::invalid_argument);
}

TEST(Dfa, IsomorphismUnderRelabeling)
{
    const Dfa d = four_state_example().with_finals({true, false, false, true});
    EXPECT_TRUE(are_isomorphic(d, d));
    RandomSource rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        auto moved = relabel(d, random_permutation(4, rng));
        EXPECT_TRUE(are_isomorphic(d, moved));
        EXPECT_EQ(canonical_form(moved).symbols, canonical_form(d).symbols);
    }
    EXPECT_FALSE(are_isomorphic(Dfa(2, 2, {1, 0, 1, 1}, 0), Dfa(2, 2, {1, 1, 0, 0}, 0)));
    // same structure, finals not carried onto each other
    EXPECT_FALSE(are_isomorphic(d, d.with_finals({false, true, true, false})));
    EXPECT_THROW(are_isomorphic(d, Dfa(2, 1, {0, 1}, 0)), std::invalid_argument);
}

TEST(Dfa, IsomorphismIsAnEquivalenceOnRandomInstances)
{
    RandomSource rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng.below(5));
        const int k = 1 + static_cast<int>(rng.below(3));
        Dfa a = random_connected(n, k, rng);
        Dfa b = relabel(a, random_permutation(n, rng));
        Dfa c = relabel(b, random_permutation(n, rng));
        Dfa other = random_connected(n, k, rng);
        EXPECT_TRUE(are_isomorphic(a, a));
        EXPECT_TRUE(are_isomorphic(a, b) && are_isomorphic(b, a));
        EXPECT_TRUE(are_isomorphic(a, c));
        EXPECT_EQ(are_isomorphic(a, other), are_isomorphic(other, a));
        EXPECT_EQ(are_isomorphic(a, other), are_isomorphic(c, other));
    }
}

TEST(Dfa, Complement)
{
    Dfa d(2, 1, {1, 0}, 0, {true, false});
    EXPECT_EQ(complement(d).finals(), (std::vector<bool>{false, true}));
    EXPECT_EQ(complement(complement(d)), d);
    Dfa e(3, 1, {1, 2, 0}, 0);
    EXPECT_EQ(complement(e).finals(), (std::vector<bool>{true, true, true}));
}

TEST(DfaText, WriteAndParse)
{
    const Dfa d = four_state_example().with_finals({true, false, true, false});
    const std::string text = to_text(d);
    EXPECT_EQ(text, "4 3\n2 1 0\n3 0 1\n1 3 0\n2 3 1\ninitial: 0\nfinals: 1010\n");
    EXPECT_EQ(parse_dfa(text), d);

    std::istringstream two(text + "\n" + text);
    EXPECT_TRUE(read_dfa(two).has_value());
    EXPECT_TRUE(read_dfa(two).has_value());
    EXPECT_FALSE(read_dfa(two).has_value());
}

TEST(DfaText, MalformedInputNamesTheOffendingToken)
{
    auto message = [](const std::string& text) {
        try {
            parse_dfa(text);
        } catch (const DfaParseError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message("2 1\n0\n7\ninitial: 0\nfinals: 00\n").find("'7'"), std::string::npos);
    EXPECT_NE(message("2 1\n0\nx\ninitial: 0\nfinals: 00\n").find("'x'"), std::string::npos);
    EXPECT_NE(message("2 1\n0\n1\ninitial: 0\nfinals: 0a\n").find("0a"), std::string::npos);
    EXPECT_NE(message("2 1\n0\n1\nstart: 0\nfinals: 00\n").find("initial:"), std::string::npos);
    EXPECT_NE(message("2 1\n0\n1\ninitial: 0\nfinals: 000\n").find("000"), std::string::npos);
    EXPECT_NE(message("2 1\n0 1\n1\ninitial: 0\nfinals: 00\n").find("extra"), std::string::npos);
    EXPECT_NE(message("2 1\n0\n").find("end of input"), std::string::npos);
}
