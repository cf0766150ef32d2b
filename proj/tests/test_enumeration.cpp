#include "icdfa/coding.hpp"
#include "icdfa/counting.hpp"
#include "icdfa/enumeration.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <unordered_set>

using namespace icdfa;

namespace {

std::vector<std::vector<int>> flag_trace(int k, int n)
{
    std::vector<std::vector<int>> out;
    std::optional<FlagSequence> f = first_flags(k, n);
    while (f) {
        out.push_back(f->positions());
        f = next_flags(*f);
    }
    return out;
}

std::vector<std::vector<State>> generated(int k, int n)
{
    std::vector<std::vector<State>> out;
    enumerate(k, n, [&](const IcdfaString& s) { out.push_back(s.symbols()); });
    return out;
}

} // namespace

TEST(FirstLast, Patterns)
{
    EXPECT_EQ(first_string(2, 2).symbols(), (std::vector<State>{0, 1, 0, 0}));
    EXPECT_EQ(first_string(2, 3).symbols(), (std::vector<State>{0, 1, 0, 2, 0, 0}));
    EXPECT_EQ(first_string(3, 1).symbols(), (std::vector<State>{0, 0, 0}));
    EXPECT_EQ(last_string(2, 2).symbols(), (std::vector<State>{1, 1, 1, 1}));
    EXPECT_EQ(last_string(2, 3).symbols(), (std::vector<State>{1, 2, 2, 2, 2, 2}));
    EXPECT_EQ(last_string(1, 1).symbols(), (std::vector<State>{0}));
    for (int k = 1; k <= 4; ++k)
        for (int n = 1; n <= 5; ++n) {
            EXPECT_TRUE(validate(k, n, first_string(k, n).symbols()).ok());
            EXPECT_TRUE(validate(k, n, last_string(k, n).symbols()).ok());
        }
}

TEST(NextFlags, Traces)
{
    EXPECT_EQ(flag_trace(2, 3), (std::vector<std::vector<int>>{{1, 3}, {1, 2}, {0, 3}, {0, 2}, {0, 1}}));
    EXPECT_EQ(flag_trace(2, 2), (std::vector<std::vector<int>>{{1}, {0}}));
    EXPECT_EQ(flag_trace(3, 4).size(), 55U);
    EXPECT_EQ(flag_trace(4, 1).size(), 1U);
}

TEST(NextFlags, VisitsEveryFlagSequenceInDescendingOrder)
{
    for (int k = 1; k <= 4; ++k)
        for (int n = 1; n <= 6; ++n)
            EXPECT_EQ(flag_trace(k, n), oracle::all_flag_sequences(k, n)) << k << "," << n;
}

TEST(NextIcdfa, FullOrderAtTwoStates)
{
    const std::vector<std::vector<State>> expected = {
        {0, 1, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 1}, {1, 0, 0, 0}, {1, 0, 0, 1},
        {1, 0, 1, 0}, {1, 0, 1, 1}, {1, 1, 0, 0}, {1, 1, 0, 1}, {1, 1, 1, 0}, {1, 1, 1, 1},
    };
    EXPECT_EQ(generated(2, 2), expected);
}

TEST(NextIcdfa, CarriesAcrossFlagBlocks)
{
    auto next = next_icdfa(IcdfaString(2, 2, {0, 1, 1, 1}));
    ASSERT_TRUE(next);
    EXPECT_EQ(next->symbols(), (std::vector<State>{1, 0, 0, 0}));
    EXPECT_FALSE(next_icdfa(last_string(2, 2)));
    EXPECT_FALSE(next_icdfa(last_string(3, 1)));
}

TEST(NextIcdfa, MatchesSortedBruteForceOrder)
{
    for (auto [k, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {2, 4}, {1, 5}, {4, 2}})
        EXPECT_EQ(generated(k, n), oracle::all_strings_in_order(k, n)) << k << "," << n;
}

TEST(NextIcdfa, LastOfEachBlockFillsGapsWithTheirLabel)
{
    // the string just before a flag change has s_l = j on (f_j, f_{j+1})
    Generator g(3, 3);
    auto prev = g.current();
    while (g.advance()) {
        auto cur = g.current();
        if (flags_of(cur) != flags_of(prev)) {
            auto f = flags_of(prev);
            for (int j = 0; j <= 2; ++j)
                for (int l = f.at(j) + 1; l < f.at(j + 1); ++l)
                    EXPECT_EQ(prev[static_cast<std::size_t>(l)], j);
        }
        prev = cur;
    }
    EXPECT_EQ(prev, last_string(3, 3));
}

TEST(Enumerate, CountsAndUniqueness)
{
    EXPECT_EQ(enumerate(2, 3), 216U);
    EXPECT_EQ(enumerate(3, 3), 7965U);
    EXPECT_EQ(enumerate(5, 2), 992U);
    EXPECT_EQ(enumerate(2, 5), 160675U);

    std::set<std::vector<State>> seen;
    std::vector<State> previous;
    bool ordered = true;
    enumerate(3, 3, [&](const IcdfaString& s) {
        EXPECT_TRUE(validate(3, 3, s.symbols()).ok());
        EXPECT_TRUE(seen.insert(s.symbols()).second);
        if (!previous.empty() && flags_of(s).positions() == oracle::first_occurrences(3, previous))
            ordered = ordered && previous < s.symbols();
        previous = s.symbols();
    });
    EXPECT_TRUE(ordered);
    EXPECT_EQ(seen.size(), 7965U);
}

TEST(Enumerate, VisitorCanStopEarly)
{
    int visited = 0;
    auto count = enumerate(2, 4, [&](const IcdfaString&) { return ++visited < 10; });
    EXPECT_EQ(count, 10U);
    EXPECT_EQ(visited, 10);
}

TEST(Slices, BalancedCover)
{
    auto s = make_slices(2, 3, 216, 4);
    ASSERT_EQ(s.size(), 4U);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(s[i].size(), 54);
        EXPECT_EQ(s[i].index, i);
    }
    EXPECT_EQ(s.front().start, 0);
    EXPECT_EQ(s.back().end, 216);

    auto whole = make_slices(2, 2, 12, 1);
    ASSERT_EQ(whole.size(), 1U);
    EXPECT_EQ(whole[0].start, 0);
    EXPECT_EQ(whole[0].end, 12);

    auto uneven = make_slices(2, 4, 5248, 7);
    BigCount covered = 0;
    for (const auto& sl : uneven) {
        EXPECT_EQ(sl.start, covered);
        EXPECT_TRUE(sl.size() == 749 || sl.size() == 750);
        covered = sl.end;
    }
    EXPECT_EQ(covered, 5248);

    auto many = make_slices(2, 2, 12, 50);
    EXPECT_EQ(many.size(), 12U);
    for (const auto& sl : many)
        EXPECT_EQ(sl.size(), 1);
    EXPECT_THROW(make_slices(2, 2, 12, 0), std::invalid_argument);
}

TEST(Slices, UnionOfSliceEnumerationsIsTheFullEnumeration)
{
    auto table = build_table(2, 4);
    auto full = generated(2, 4);
    for (std::uint64_t parts : {1ULL, 3ULL, 7ULL, 64ULL}) {
        std::vector<std::vector<State>> joined;
        for (const auto& sl : make_slices(2, 4, table.total(), parts))
            enumerate_range(table, sl.start, sl.end, [&](const IcdfaString& s) { joined.push_back(s.symbols()); });
        EXPECT_EQ(joined, full) << parts;
    }
}

TEST(Slices, ManifestRoundTrip)
{
    auto slices = make_slices(3, 3, 7965, 8);
    std::stringstream buf;
    write_manifest(buf, 7965, slices);
    EXPECT_EQ(buf.str().substr(0, 11), "3 3 7965 8\n");
    auto m = read_manifest(buf);
    EXPECT_EQ(m.k, 3);
    EXPECT_EQ(m.n, 3);
    EXPECT_EQ(m.total, 7965);
    EXPECT_EQ(m.slices, slices);

    std::stringstream gap("2 2 12 2\n0 0 5\n1 6 12\n");
    EXPECT_THROW(read_manifest(gap), std::runtime_error);
    std::stringstream short_cover("2 2 12 1\n0 0 11\n");
    EXPECT_THROW(read_manifest(short_cover), std::runtime_error);
}
