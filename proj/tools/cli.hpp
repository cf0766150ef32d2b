#ifndef ICDFA_TOOLS_CLI_HPP
#define ICDFA_TOOLS_CLI_HPP

// The `icdfa` command line. run() is kept separate from main() so tests can
// drive it with in-memory streams.
//
// Exit codes: 0 success, 1 chi-square test failed, 2 usage or validation
// error, 3 runtime failure (I/O, failed census slice).

#include "icdfa/icdfa.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace icdfa::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_test_failed = 1;
inline constexpr int exit_usage = 2;
inline constexpr int exit_runtime = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Shape {
    int k = 0;
    int n = 0;
};

namespace detail {

inline void add_shape(CLI::App* cmd, Shape& shape)
{
    cmd->add_option("--k", shape.k, "alphabet size")->required();
    cmd->add_option("--n", shape.n, "number of states")->required();
}

inline void check_shape(const Shape& s)
{
    if (s.k < 1)
        throw UsageError("--k must be >= 1, got " + std::to_string(s.k));
    if (s.n < 1)
        throw UsageError("--n must be >= 1, got " + std::to_string(s.n));
    if (static_cast<long long>(s.k) * s.n > 1'000'000)
        throw UsageError("k*n = " + std::to_string(static_cast<long long>(s.k) * s.n) + " is too large");
}

inline BigCount parse_number(const std::string& flag, const std::string& text)
{
    try {
        return parse_decimal(text);
    } catch (const std::invalid_argument&) {
        throw UsageError(flag + ": '" + text + "' is not a non-negative decimal integer");
    }
}

inline std::string trim(const std::string& s)
{
    auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos)
        return {};
    auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Canonical strings of initially-connected DFAs: counting, enumeration, coding, sampling, census"};
    app.require_subcommand(1);
    std::string table_cache;
    app.add_option("--table-cache", table_cache, "directory for cached count tables");

    Shape shape;

    auto* count = app.add_subcommand("count", "number of structures B(k,n)");
    detail::add_shape(count, shape);
    std::string method = "table";
    count->add_option("--method", method, "table | sum | enumerate")
        ->check(CLI::IsMember({"table", "sum", "enumerate"}));

    auto* enumerate_cmd = app.add_subcommand("enumerate", "stream canonical strings in generation order");
    detail::add_shape(enumerate_cmd, shape);
    std::string from_text, to_text_arg;
    enumerate_cmd->add_option("--from", from_text, "first rank (inclusive)");
    enumerate_cmd->add_option("--to", to_text_arg, "last rank (exclusive)");

    auto* rank_cmd = app.add_subcommand("rank", "rank of each canonical string read from stdin");
    detail::add_shape(rank_cmd, shape);

    auto* unrank_cmd = app.add_subcommand("unrank", "canonical string with the given rank");
    detail::add_shape(unrank_cmd, shape);
    std::string index_text;
    unrank_cmd->add_option("--index", index_text, "rank in [0, B)")->required();

    auto* sample_cmd = app.add_subcommand("sample", "uniform random structures or automata");
    detail::add_shape(sample_cmd, shape);
    std::uint64_t sample_count = 1;
    std::uint64_t seed = 0;
    bool with_finals = false;
    sample_cmd->add_option("--count", sample_count, "number of samples");
    sample_cmd->add_option("--seed", seed, "random seed");
    sample_cmd->add_flag("--with-finals", with_finals, "emit full automata in the DFA text format");

    auto* census_cmd = app.add_subcommand("census", "exhaustive count of minimal automata");
    detail::add_shape(census_cmd, shape);
    std::uint64_t parts = 1;
    unsigned workers = 1;
    std::string resume_path, checkpoint_path, csv_path;
    bool with_g = false;
    census_cmd->add_option("--parts", parts, "number of slices");
    census_cmd->add_option("--workers", workers, "concurrent workers");
    census_cmd->add_option("--resume", resume_path, "checkpoint file to resume from and append to");
    census_cmd->add_option("--checkpoint", checkpoint_path, "checkpoint file to (re)write");
    census_cmd->add_option("--per-slice-csv", csv_path, "write slice_id,minimal_rate rows here");
    census_cmd->add_flag("--with-g", with_g, "also count f for 1..n-1 and report g");

    auto* slices_cmd = app.add_subcommand("slices", "write a slice manifest");
    detail::add_shape(slices_cmd, shape);
    slices_cmd->add_option("--parts", parts, "number of slices");

    auto* density_cmd = app.add_subcommand("density", "sampled fraction of minimal automata");
    detail::add_shape(density_cmd, shape);
    std::uint64_t samples = 100000;
    density_cmd->add_option("--samples", samples, "number of samples");
    density_cmd->add_option("--seed", seed, "random seed");

    auto* minimize_cmd = app.add_subcommand("minimize", "minimize automata from a DFA text file");
    std::string in_path;
    minimize_cmd->add_option("--in", in_path, "DFA text file ('-' for stdin)")->required();

    auto* chi2_cmd = app.add_subcommand("chi2", "chi-square uniformity test of the sampler");
    detail::add_shape(chi2_cmd, shape);
    double significance = 0.01;
    chi2_cmd->add_option("--samples", samples, "number of samples");
    chi2_cmd->add_option("--significance", significance, "significance level");
    chi2_cmd->add_option("--seed", seed, "random seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return exit_ok;
        }
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    auto table_for = [&](const Shape& s) { return load_or_build_table(s.k, s.n, table_cache); };

    try {
        if (*count) {
            detail::check_shape(shape);
            if (method == "table")
                out << table_for(shape).total() << '\n';
            else if (method == "sum")
                out << b_nested_sum(shape.k, shape.n) << '\n';
            else
                out << enumerate(shape.k, shape.n) << '\n';
        } else if (*enumerate_cmd) {
            detail::check_shape(shape);
            auto table = table_for(shape);
            BigCount from = from_text.empty() ? BigCount(0) : detail::parse_number("--from", from_text);
            BigCount to = to_text_arg.empty() ? table.total() : detail::parse_number("--to", to_text_arg);
            if (from > to || to > table.total())
                throw UsageError("rank range [" + from.str() + ", " + to.str() + ") is outside [0, "
                                 + table.total().str() + ")");
            enumerate_range(table, from, to, [&](const IcdfaString& s) { out << to_text(s) << '\n'; });
        } else if (*rank_cmd) {
            detail::check_shape(shape);
            auto table = table_for(shape);
            std::string line;
            while (std::getline(in, line)) {
                line = detail::trim(line);
                if (line.empty())
                    continue;
                IcdfaString s = [&] {
                    try {
                        return parse_icdfa_string(line);
                    } catch (const StringParseError& e) {
                        throw UsageError(e.what());
                    }
                }();
                if (s.symbols_count() != shape.k || s.states() != shape.n)
                    throw UsageError("string '" + line + "' does not have k=" + std::to_string(shape.k)
                                     + " n=" + std::to_string(shape.n));
                out << rank(s, table) << '\n';
            }
        } else if (*unrank_cmd) {
            detail::check_shape(shape);
            auto table = table_for(shape);
            BigCount m = detail::parse_number("--index", index_text);
            if (m >= table.total())
                throw UsageError("--index " + index_text + " is not below B = " + table.total().str());
            out << to_text(unrank(m, table)) << '\n';
        } else if (*sample_cmd) {
            detail::check_shape(shape);
            auto table = table_for(shape);
            RandomSource rng(seed);
            for (std::uint64_t i = 0; i < sample_count; ++i) {
                if (with_finals)
                    write_dfa(out, sample_dfa(table, rng));
                else
                    out << to_text(sample_structure(table, rng)) << '\n';
            }
        } else if (*census_cmd) {
            detail::check_shape(shape);
            if (shape.n > census_max_states)
                throw UsageError("census supports n <= " + std::to_string(census_max_states));
            if (parts < 1 || workers < 1)
                throw UsageError("--parts and --workers must be >= 1");
            if (!resume_path.empty() && !checkpoint_path.empty())
                throw UsageError("--resume and --checkpoint are mutually exclusive");
            CensusOptions options;
            options.parts = parts;
            options.workers = workers;
            std::ofstream checkpoint;
            if (!resume_path.empty()) {
                if (std::ifstream prior(resume_path); prior)
                    options.completed = read_checkpoint(prior);
                checkpoint.open(resume_path, std::ios::app);
            } else if (!checkpoint_path.empty()) {
                checkpoint.open(checkpoint_path, std::ios::trunc);
            }
            if (!resume_path.empty() || !checkpoint_path.empty()) {
                if (!checkpoint)
                    throw std::runtime_error("cannot open checkpoint file");
                options.checkpoint = &checkpoint;
            }
            auto report = census(table_for(shape), std::move(options));
            if (with_g) {
                std::vector<BigCount> f;
                for (int i = 1; i < shape.n; ++i) {
                    CensusOptions smaller;
                    smaller.parts = workers;
                    smaller.workers = workers;
                    f.push_back(census(table_for(Shape{shape.k, i}), std::move(smaller)).minimal);
                }
                f.push_back(report.minimal);
                report.languages = g_of(shape.n, f);
            }
            out << report.to_text();
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << report.per_slice_csv();
                if (!csv)
                    throw std::runtime_error("cannot write " + csv_path);
            }
        } else if (*slices_cmd) {
            detail::check_shape(shape);
            if (parts < 1)
                throw UsageError("--parts must be >= 1");
            auto table = table_for(shape);
            write_manifest(out, table.total(), make_slices(shape.k, shape.n, table.total(), parts));
        } else if (*density_cmd) {
            detail::check_shape(shape);
            if (samples < 1)
                throw UsageError("--samples must be >= 1");
            auto table = table_for(shape);
            RandomSource rng(seed);
            auto est = estimate_minimal_density(table, samples, rng);
            out.precision(6);
            out << "k: " << shape.k << '\n'
                << "n: " << shape.n << '\n'
                << "samples: " << est.samples << '\n'
                << "minimal: " << est.minimal << '\n'
                << "fraction: " << std::fixed << est.fraction << '\n'
                << "half_width_99: " << est.half_width << '\n';
        } else if (*minimize_cmd) {
            std::ifstream file;
            std::istream* src = &in;
            if (in_path != "-") {
                file.open(in_path);
                if (!file)
                    throw UsageError("cannot open --in file '" + in_path + "'");
                src = &file;
            }
            std::size_t records = 0;
            for (;;) {
                std::optional<Dfa> dfa;
                try {
                    dfa = read_dfa(*src);
                } catch (const DfaParseError& e) {
                    throw UsageError(in_path + ": " + e.what());
                } catch (const std::invalid_argument& e) {
                    throw UsageError(in_path + ": " + e.what());
                }
                if (!dfa)
                    break;
                ++records;
                if (!is_initially_connected(*dfa))
                    throw UsageError(in_path + ": automaton " + std::to_string(records)
                                     + " is not initially connected");
                write_dfa(out, hopcroft_minimize(*dfa));
            }
            if (records == 0)
                throw UsageError(in_path + ": no automaton found");
        } else if (*chi2_cmd) {
            detail::check_shape(shape);
            if (samples < 1)
                throw UsageError("--samples must be >= 1");
            if (!(significance > 0.0 && significance < 1.0))
                throw UsageError("--significance must lie in (0, 1)");
            auto table = table_for(shape);
            if (table.total() > chi_square_max_cells || table.total() < 2)
                throw UsageError("chi2 needs 2 <= B(k,n) <= " + std::to_string(chi_square_max_cells));
            RandomSource rng(seed);
            auto report = chi_square_test(table, samples, significance, rng);
            out << report.to_line() << '\n';
            return report.pass ? exit_ok : exit_test_failed;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_runtime;
    }
    return exit_ok;
}

inline int run(int argc, char** argv, std::istream& in, std::ostream& out, std::ostream& err)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return run(args, in, out, err);
}

} // namespace icdfa::cli

#endif
