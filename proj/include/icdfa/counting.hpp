#ifndef ICDFA_COUNTING_HPP
#define ICDFA_COUNTING_HPP

#include "icdfa/bigcount.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace icdfa {

inline BigCount binomial(std::uint64_t n, std::uint64_t r)
{
    if (r > n)
        return 0;
    r = std::min(r, n - r);
    BigCount acc = 1;
    for (std::uint64_t i = 1; i <= r; ++i) {
        acc *= n - r + i;
        acc /= i; // exact: acc is binomial(n - r + i, i) here
    }
    return acc;
}

/// Number of flag sequences for (k, n), equal to the number of k-ary trees
/// with n internal nodes: binomial(kn, n) / ((k-1)n + 1).
inline BigCount fuss_catalan(int k, int n)
{
    if (k < 1 || n < 1)
        throw std::invalid_argument("fuss_catalan needs k >= 1 and n >= 1");
    BigCount num = binomial(static_cast<std::uint64_t>(k) * n, static_cast<std::uint64_t>(n));
    BigCount den = BigCount(static_cast<std::uint64_t>(k - 1) * n + 1);
    BigCount q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0)
        throw std::logic_error("Fuss-Catalan division left a remainder");
    return q;
}

/// Budget on flag sequences visited by b_nested_sum.
inline constexpr std::uint64_t nested_sum_limit = 5'000'000;

/// Number of canonical strings by direct summation over flag sequences:
/// sum over flags of prod_{i=2..n} i^(f_i - f_{i-1} - 1), with f_n = kn.
/// Exponential in n; refuses inputs with more than nested_sum_limit flag sequences.
inline BigCount b_nested_sum(int k, int n)
{
    if (k < 1 || n < 1)
        throw std::invalid_argument("b_nested_sum needs k >= 1 and n >= 1");
    if (n == 1)
        return 1;
    if (fuss_catalan(k, n) > nested_sum_limit)
        throw std::length_error("b_nested_sum: (k, n) exceeds the nested-sum work bound");

    // powers[i][e] = i^e, for the gap radices 2..n that occur
    const int len = k * n;
    std::vector<std::vector<BigCount>> powers(static_cast<std::size_t>(n) + 1);
    for (int i = 2; i <= n; ++i) {
        auto& row = powers[static_cast<std::size_t>(i)];
        row.resize(static_cast<std::size_t>(len) + 1);
        row[0] = 1;
        for (int e = 1; e <= len; ++e)
            row[static_cast<std::size_t>(e)] = row[static_cast<std::size_t>(e - 1)] * i;
    }

    BigCount total = 0;
    // place flag j (1-based) somewhere in (prev, kj - 1]
    std::function<void(int, int, const BigCount&)> place = [&](int j, int prev, const BigCount& weight) {
        if (j == n) {
            // tail gap between f_{n-1} and f_n = kn has radix n
            total += weight * powers[static_cast<std::size_t>(n)][static_cast<std::size_t>(len - prev - 1)];
            return;
        }
        for (int f = prev + 1; f <= k * j - 1; ++f) {
            // gap between f_{j-1} and f_j has radix j (radix 1 before f_1)
            if (j == 1)
                place(j + 1, f, weight);
            else
                place(j + 1, f, weight * powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(f - prev - 1)]);
        }
    };
    place(1, -1, BigCount(1));
    return total;
}

/// N(m, j): the number of ways to complete a canonical string to the right of
/// position j, given that label m makes its first appearance at j. Defined for
/// m in [1, n-1] and j in [m-1, mk-1]. The completions are independent of what
/// lies to the left of j.
class CountTable {
public:
    int symbols() const noexcept { return k_; }
    int states() const noexcept { return n_; }

    /// Number of canonical strings for (k, n).
    const BigCount& total() const noexcept { return total_; }

    bool contains(int m, int j) const noexcept
    {
        return m >= 1 && m <= n_ - 1 && j >= m - 1 && j <= m * k_ - 1;
    }

    const BigCount& at(int m, int j) const
    {
        if (!contains(m, j))
            throw std::out_of_range("N(" + std::to_string(m) + ", " + std::to_string(j) + ") is outside the table");
        return rows_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - (m - 1))];
    }

    friend CountTable build_table(int k, int n);
    friend CountTable read_table(std::istream& in);

private:
    CountTable(int k, int n) : k_(k), n_(n)
    {
        if (n_ >= 2) {
            rows_.resize(static_cast<std::size_t>(n_ - 1));
            for (int m = 1; m <= n_ - 1; ++m)
                rows_[static_cast<std::size_t>(m - 1)].resize(static_cast<std::size_t>(m * k_ - m + 1));
        }
    }

    BigCount& slot(int m, int j) { return rows_[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - (m - 1))]; }

    void finish()
    {
        total_ = 0;
        if (n_ == 1) {
            total_ = 1;
            return;
        }
        for (int l = 0; l <= k_ - 1; ++l)
            total_ += at(1, l);
    }

    int k_;
    int n_;
    std::vector<std::vector<BigCount>> rows_;
    BigCount total_;
};

/// Fills N bottom-up. The last row is N(n-1, j) = n^(nk-1-j); each other row
/// is seeded at its right end by
///   N(m, mk-1) = sum_{i=0}^{k-1} (m+1)^i N(m+1, mk+i)
/// and extended leftwards with N(m, j) = (m+1) N(m, j+1) + N(m+1, j+1).
inline CountTable build_table(int k, int n)
{
    if (k < 1 || n < 1)
        throw std::invalid_argument("build_table needs k >= 1 and n >= 1");
    CountTable t(k, n);
    if (n >= 2) {
        const int last = n - 1;
        BigCount p = 1; // n^(nk-1-j), growing as j decreases
        for (int j = n * k - 1; j >= last - 1; --j) {
            if (j <= last * k - 1)
                t.slot(last, j) = p;
            p *= n;
        }
        for (int m = n - 2; m >= 1; --m) {
            BigCount seed = 0;
            BigCount radix_power = 1;
            for (int i = 0; i <= k - 1; ++i) {
                seed += radix_power * t.at(m + 1, m * k + i);
                radix_power *= m + 1;
            }
            t.slot(m, m * k - 1) = seed;
            for (int j = m * k - 2; j >= m - 1; --j)
                t.slot(m, j) = (m + 1) * t.at(m, j + 1) + t.at(m + 1, j + 1);
        }
    }
    t.finish();
    return t;
}

inline BigCount b_count(int k, int n)
{
    return build_table(k, n).total();
}

/// Structures times the 2^n choices of final states.
inline BigCount icdfa_count(int k, int n)
{
    return b_count(k, n) << n;
}

// Cache file:
//   icdfa-count-table v1
//   k n
//   m j N(m,j)      (one row per entry, decimal)

inline constexpr const char* table_magic = "icdfa-count-table v1";

inline void write_table(std::ostream& out, const CountTable& t)
{
    out << table_magic << '\n' << t.symbols() << ' ' << t.states() << '\n';
    for (int m = 1; m <= t.states() - 1; ++m)
        for (int j = m - 1; j <= m * t.symbols() - 1; ++j)
            out << m << ' ' << j << ' ' << t.at(m, j) << '\n';
}

inline CountTable read_table(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != table_magic)
        throw std::runtime_error("not a count table file (bad magic line)");
    int k = 0, n = 0;
    if (!std::getline(in, line))
        throw std::runtime_error("count table file truncated before header");
    {
        std::istringstream hs(line);
        if (!(hs >> k >> n) || k < 1 || n < 1)
            throw std::runtime_error("bad count table header '" + line + "'");
    }
    CountTable t(k, n);
    std::size_t expected = 0;
    for (int m = 1; m <= n - 1; ++m)
        expected += static_cast<std::size_t>(m * k - m + 1);
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    for (int m = 1; m <= n - 1; ++m)
        seen[static_cast<std::size_t>(m - 1)].assign(static_cast<std::size_t>(m * k - m + 1), false);
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream rs(line);
        int m = 0, j = 0;
        std::string digits;
        if (!(rs >> m >> j >> digits) || !t.contains(m, j))
            throw std::runtime_error("bad count table row '" + line + "'");
        auto flag = seen[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(j - (m - 1))];
        if (flag)
            throw std::runtime_error("duplicate count table row '" + line + "'");
        flag = true;
        t.slot(m, j) = parse_decimal(digits);
        ++rows;
    }
    if (rows != expected)
        throw std::runtime_error("count table file has " + std::to_string(rows) + " rows, expected "
                                 + std::to_string(expected));
    t.finish();
    return t;
}

/// Loads the (k, n) table from cache_dir if present, otherwise builds it and
/// writes it there. An empty directory path disables caching.
inline CountTable load_or_build_table(int k, int n, const std::filesystem::path& cache_dir)
{
    if (cache_dir.empty())
        return build_table(k, n);
    auto file = cache_dir / ("table_k" + std::to_string(k) + "_n" + std::to_string(n) + ".txt");
    if (std::ifstream in(file); in) {
        auto t = read_table(in);
        if (t.symbols() != k || t.states() != n)
            throw std::runtime_error("cache file " + file.string() + " holds a different (k, n)");
        return t;
    }
    auto t = build_table(k, n);
    std::filesystem::create_directories(cache_dir);
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        write_table(out, t);
        if (!out)
            throw std::runtime_error("cannot write count table cache " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
    return t;
}

} // namespace icdfa

#endif
