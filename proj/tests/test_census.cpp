#include "icdfa/census.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace icdfa;

namespace {

// Minimal automata counted directly: every structure, every final-state set,
// table-filling minimization.
BigCount brute_force_f(int k, int n)
{
    BigCount f = 0;
    enumerate(k, n, [&](const IcdfaString& s) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            std::vector<bool> finals(static_cast<std::size_t>(n));
            for (int q = 0; q < n; ++q)
                finals[static_cast<std::size_t>(q)] = ((mask >> q) & 1U) != 0;
            if (oracle::brute_force_minimize(to_dfa(s, finals)).states() == n)
                ++f;
        }
    });
    return f;
}

} // namespace

TEST(Census, AgreesWithBruteForce)
{
    for (auto [k, n] : {std::pair{2, 1}, {2, 2}, {2, 3}, {3, 2}, {1, 4}, {3, 3}})
        EXPECT_EQ(census(k, n).minimal, brute_force_f(k, n)) << k << "," << n;
}

TEST(Census, KnownValues)
{
    EXPECT_EQ(census(2, 2).minimal, 24);
    EXPECT_EQ(census(2, 3).minimal, 1028);
    EXPECT_EQ(census(2, 4, 4).minimal, 56014);
    EXPECT_EQ(census(3, 3, 3).minimal, 41928);
    EXPECT_EQ(census(4, 2).minimal, 480);
    EXPECT_EQ(census(3, 2).minimal, 112);
    EXPECT_EQ(census(5, 1).minimal, 2);
}

TEST(Census, IndependentOfPartsAndWorkers)
{
    const BigCount expected = census(2, 4).minimal;
    for (std::uint64_t parts : {1ULL, 2ULL, 7ULL, 100ULL})
        for (unsigned workers : {1U, 3U}) {
            auto r = census(2, 4, parts, workers);
            EXPECT_EQ(r.minimal, expected) << parts << " " << workers;
            EXPECT_EQ(r.slices.size(), parts);
            for (std::size_t i = 0; i < r.slices.size(); ++i)
                EXPECT_EQ(r.slices[i].slice, i);
        }
}

TEST(Census, ReportText)
{
    auto r = census(3, 3, 2);
    auto text = r.to_text();
    EXPECT_NE(text.find("structures: 7965\n"), std::string::npos);
    EXPECT_NE(text.find("icdfas: 63720\n"), std::string::npos);
    EXPECT_NE(text.find("f: 41928\n"), std::string::npos);
    EXPECT_NE(text.find("minimal_pct: 65\n"), std::string::npos);
    EXPECT_NE(text.find("slices: 2\n"), std::string::npos);
    EXPECT_EQ(census(2, 2).minimal_percent(), 50);
    EXPECT_EQ(census(2, 3).minimal_percent(), 59);

    auto csv = r.per_slice_csv();
    EXPECT_EQ(csv.substr(0, 22), "slice_id,minimal_rate\n");
    EXPECT_NE(csv.find("\n1,0."), std::string::npos);
}

TEST(Census, CheckpointRoundTripAndResume)
{
    auto table = build_table(2, 4);
    std::stringstream log;
    CensusOptions first;
    first.parts = 5;
    first.checkpoint = &log;
    auto full = census(table, first);
    EXPECT_EQ(full.minimal, 56014);

    auto done = read_checkpoint(log);
    ASSERT_EQ(done.size(), 5U);
    // resume from three finished slices; the remaining two are recomputed
    done.erase(done.begin() + 1);
    done.pop_back();
    std::stringstream more;
    CensusOptions resume;
    resume.parts = 5;
    resume.completed = done;
    resume.checkpoint = &more;
    auto resumed = census(table, resume);
    EXPECT_EQ(resumed.minimal, 56014);
    EXPECT_EQ(read_checkpoint(more).size(), 2U);

    // a checkpoint from a different slicing is refused
    CensusOptions wrong;
    wrong.parts = 4;
    wrong.completed = done;
    EXPECT_THROW(census(table, wrong), std::invalid_argument);

    std::stringstream bad("0 12 x\n");
    EXPECT_THROW(read_checkpoint(bad), std::runtime_error);
}

TEST(Census, LanguagesUpToN)
{
    std::vector<BigCount> f2 = {2, 24, 1028};
    EXPECT_EQ(g_of(1, f2), 2);
    EXPECT_EQ(g_of(2, f2), 26);
    EXPECT_EQ(g_of(3, f2), 1054);
    EXPECT_THROW(g_of(4, f2), std::invalid_argument);
    EXPECT_EQ(census(2, 1).minimal, 2);
}

TEST(Density, MatchesTheExactFraction)
{
    // f(2,3) / (216 * 8) = 0.5949...
    RandomSource rng(6);
    auto est = estimate_minimal_density(build_table(2, 3), 100000, rng);
    EXPECT_NEAR(est.fraction, 1028.0 / 1728.0, 0.01);
    EXPECT_GT(est.half_width, 0.0);
    EXPECT_LT(est.half_width, 0.01);
}
