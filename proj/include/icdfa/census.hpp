#ifndef ICDFA_CENSUS_HPP
#define ICDFA_CENSUS_HPP

// Counting minimal automata by exhaustive, slice-parallel minimality tests.
//
// A complete initially-connected DFA is minimal iff its complement is, so per
// structure only the 2^(n-1) final-state sets containing state 0 are tested
// and each minimal hit counts twice.

#include "icdfa/coding.hpp"
#include "icdfa/counting.hpp"
#include "icdfa/enumeration.hpp"
#include "icdfa/minimize.hpp"
#include "icdfa/random.hpp"
#include "icdfa/sampling.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace icdfa {

struct SliceResult {
    std::size_t slice = 0;
    std::uint64_t structures = 0;
    BigCount minimal;
    double seconds = 0.0;

    /// Fraction of the slice's ICDFAs (structures x 2^n) that are minimal.
    double minimal_rate(int n) const
    {
        if (structures == 0)
            return 0.0;
        return static_cast<double>(minimal) / (static_cast<double>(structures) * std::ldexp(1.0, n));
    }
};

/// Largest n the census handles (final-state sets are 64-bit masks, and
/// anything near this bound is far out of exhaustive reach anyway).
inline constexpr int census_max_states = 32;

inline SliceResult census_slice(const Slice& slice, const CountTable& table)
{
    const int k = table.symbols();
    const int n = table.states();
    if (slice.k != k || slice.n != n)
        throw std::invalid_argument("slice and count table disagree on (k, n)");
    if (n > census_max_states)
        throw std::invalid_argument("census supports at most " + std::to_string(census_max_states) + " states");
    const auto t0 = std::chrono::steady_clock::now();

    SliceResult out;
    out.slice = slice.index;
    HopcroftPartitioner part(n, k);
    const std::uint64_t half = n >= 2 ? (std::uint64_t{1} << (n - 1)) : 0;
    std::uint64_t minimal = 0;
    out.structures = enumerate_range(table, slice.start, slice.end, [&](const IcdfaString& s) {
        if (n == 1) {
            minimal += 2; // both final-state choices of the single state
            return;
        }
        part.load(s.symbols());
        for (std::uint64_t rest = 0; rest < half; ++rest)
            if (part.refine_mask(1U | (rest << 1)) == n)
                minimal += 2;
    });
    out.minimal = minimal;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

/// Checkpoint line: "slice_id structures minimal_count seconds".
inline std::string checkpoint_line(const SliceResult& r)
{
    std::ostringstream out;
    out << r.slice << ' ' << r.structures << ' ' << r.minimal << ' ' << r.seconds;
    return out.str();
}

inline std::vector<SliceResult> read_checkpoint(std::istream& in)
{
    std::vector<SliceResult> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        SliceResult r;
        std::string minimal;
        if (!(ls >> r.slice >> r.structures >> minimal >> r.seconds))
            throw std::runtime_error("bad checkpoint line '" + line + "'");
        r.minimal = parse_decimal(minimal);
        out.push_back(std::move(r));
    }
    return out;
}

class CensusError : public std::runtime_error {
public:
    CensusError(std::size_t slice, const std::string& what)
        : std::runtime_error("slice " + std::to_string(slice) + " failed: " + what), slice_(slice)
    {
    }
    std::size_t slice() const noexcept { return slice_; }

private:
    std::size_t slice_;
};

struct CensusOptions {
    std::uint64_t parts = 1;
    unsigned workers = 1;
    /// Append each completed slice here as it finishes.
    std::ostream* checkpoint = nullptr;
    /// Slices already done (from a checkpoint); they are not recomputed.
    std::vector<SliceResult> completed;
};

struct CensusReport {
    int k = 0;
    int n = 0;
    BigCount structures;
    BigCount icdfas;
    BigCount minimal; // f_k(n)
    std::optional<BigCount> languages; // g_k(n), when f_k(1..n-1) were supplied
    std::vector<SliceResult> slices;   // ordered by slice id

    double minimal_fraction() const
    {
        return icdfas == 0 ? 0.0 : static_cast<double>(minimal) / static_cast<double>(icdfas);
    }

    /// Integer percentage, truncated.
    BigCount minimal_percent() const { return icdfas == 0 ? BigCount(0) : BigCount(minimal * 100 / icdfas); }

    std::string to_text() const
    {
        std::ostringstream out;
        out.precision(6);
        out << "k: " << k << '\n'
            << "n: " << n << '\n'
            << "structures: " << structures << '\n'
            << "icdfas: " << icdfas << '\n'
            << "f: " << minimal << '\n'
            << "minimal_pct: " << minimal_percent() << '\n'
            << "minimal_fraction: " << std::fixed << minimal_fraction() << '\n';
        if (languages)
            out << "g: " << *languages << '\n';
        out << "slices: " << slices.size() << '\n';
        return out.str();
    }

    /// "slice_id,minimal_rate" rows with a header.
    std::string per_slice_csv() const
    {
        std::ostringstream out;
        out.precision(8);
        out << "slice_id,minimal_rate\n";
        for (const auto& s : slices)
            out << s.slice << ',' << std::fixed << s.minimal_rate(n) << '\n';
        return out.str();
    }
};

/// Runs census_slice over make_slices(k, n, parts) on a pool of worker
/// threads. The totals are a sum over slices, so they do not depend on the
/// number of parts, the number of workers, or completion order.
inline CensusReport census(const CountTable& table, CensusOptions options)
{
    const int k = table.symbols();
    const int n = table.states();
    if (options.workers < 1)
        throw std::invalid_argument("census needs at least one worker");
    const auto slices = make_slices(k, n, table.total(), options.parts);

    std::vector<std::optional<SliceResult>> results(slices.size());
    for (auto& done : options.completed) {
        if (done.slice >= slices.size())
            throw std::invalid_argument("checkpoint names slice " + std::to_string(done.slice) + " of only "
                                        + std::to_string(slices.size()));
        if (BigCount(done.structures) != slices[done.slice].size())
            throw std::invalid_argument("checkpoint slice " + std::to_string(done.slice)
                                        + " does not match this slicing (different k, n or parts?)");
        results[done.slice] = done;
    }

    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < slices.size(); ++i)
        if (!results[i])
            todo.push_back(i);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex lock;
    std::exception_ptr error;
    auto work = [&] {
        for (;;) {
            if (failed.load())
                return;
            const std::size_t t = next.fetch_add(1);
            if (t >= todo.size())
                return;
            const std::size_t id = todo[t];
            try {
                SliceResult r = census_slice(slices[id], table);
                std::lock_guard<std::mutex> guard(lock);
                if (options.checkpoint) {
                    *options.checkpoint << checkpoint_line(r) << '\n';
                    options.checkpoint->flush();
                }
                results[id] = std::move(r);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> guard(lock);
                if (!error)
                    error = std::make_exception_ptr(CensusError(id, e.what()));
                failed = true;
                return;
            }
        }
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(options.workers, std::max<std::size_t>(todo.size(), 1)));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    if (error)
        std::rethrow_exception(error);

    CensusReport report;
    report.k = k;
    report.n = n;
    report.structures = table.total();
    report.icdfas = table.total() << n;
    report.minimal = 0;
    for (auto& r : results) {
        report.minimal += r->minimal;
        report.slices.push_back(std::move(*r));
    }
    return report;
}

inline CensusReport census(int k, int n, std::uint64_t parts = 1, unsigned workers = 1)
{
    CensusOptions options;
    options.parts = parts;
    options.workers = workers;
    return census(build_table(k, n), std::move(options));
}

/// g_k(n) = f_k(1) + ... + f_k(n); f_values[i] holds f_k(i+1).
inline BigCount g_of(int n, const std::vector<BigCount>& f_values)
{
    if (n < 1)
        throw std::invalid_argument("g_of needs n >= 1");
    if (f_values.size() < static_cast<std::size_t>(n))
        throw std::invalid_argument("g_of needs f_k(1..n), got only " + std::to_string(f_values.size()) + " values");
    BigCount g = 0;
    for (int i = 0; i < n; ++i)
        g += f_values[static_cast<std::size_t>(i)];
    return g;
}

struct DensityEstimate {
    std::uint64_t samples = 0;
    std::uint64_t minimal = 0;
    double fraction = 0.0;
    /// Half-width of the 99% normal-approximation confidence interval.
    double half_width = 0.0;
};

/// Fraction of minimal automata among `samples` uniform ICDFAs (structure and
/// final states both uniform).
inline DensityEstimate estimate_minimal_density(const CountTable& table, std::uint64_t samples, RandomSource& rng)
{
    if (samples < 1)
        throw std::invalid_argument("density estimate needs at least one sample");
    const int n = table.states();
    const int k = table.symbols();
    HopcroftPartitioner part(n, k);
    DensityEstimate est;
    est.samples = samples;
    for (std::uint64_t i = 0; i < samples; ++i) {
        auto s = sample_structure(table, rng);
        auto finals = sample_finals(n, rng);
        part.load(s.symbols());
        if (part.refine(finals) == n)
            ++est.minimal;
    }
    est.fraction = static_cast<double>(est.minimal) / static_cast<double>(samples);
    const double z = normal_quantile(0.995);
    est.half_width = z * std::sqrt(est.fraction * (1.0 - est.fraction) / static_cast<double>(samples));
    return est;
}

} // namespace icdfa

#endif
