#ifndef ICDFA_SAMPLING_HPP
#define ICDFA_SAMPLING_HPP

// Uniform random generation of canonical strings, left to right. Flag m is
// placed at position i >= l (l = previous flag + 1) with weight
// m^(i-l) * N(m, i): the digits between the previous flag and i take m values
// each, and N(m, i) counts what can follow. Non-flag positions are then
// uniform over their gap's label range.

#include "icdfa/coding.hpp"
#include "icdfa/counting.hpp"
#include "icdfa/icdfa_string.hpp"
#include "icdfa/random.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace icdfa {

/// Weights m^(i-l) N(m, i) for i = l .. mk-1; element 0 is position l.
inline std::vector<BigCount> flag_weights(int m, int l, const CountTable& table)
{
    const int k = table.symbols();
    if (m < 1 || m > table.states() - 1)
        throw std::out_of_range("flag label out of range");
    if (l < m - 1 || l > m * k - 1)
        throw std::out_of_range("no admissible position for flag " + std::to_string(m) + " from " + std::to_string(l));
    std::vector<BigCount> w;
    w.reserve(static_cast<std::size_t>(m * k - l));
    BigCount radix_power = 1;
    for (int i = l; i <= m * k - 1; ++i) {
        w.push_back(radix_power * table.at(m, i));
        radix_power *= m;
    }
    return w;
}

inline int sample_flag(int m, int l, const CountTable& table, RandomSource& rng)
{
    auto weights = flag_weights(m, l, table);
    BigCount total = 0;
    for (const auto& w : weights)
        total += w;
    BigCount r = rng.below(total);
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (r < weights[i])
            return l + static_cast<int>(i);
        r -= weights[i];
    }
    throw std::logic_error("sample_flag: draw exceeded the weight total");
}

inline IcdfaString sample_structure(const CountTable& table, RandomSource& rng)
{
    const int k = table.symbols();
    const int n = table.states();
    std::vector<State> s(static_cast<std::size_t>(k) * n, 0);
    int prev = -1;
    for (int i = 1; i <= n - 1; ++i) {
        int f = sample_flag(i, prev + 1, table, rng);
        for (int j = prev + 1; j < f; ++j)
            s[static_cast<std::size_t>(j)] = static_cast<State>(rng.below(static_cast<std::uint64_t>(i)));
        s[static_cast<std::size_t>(f)] = i;
        prev = f;
    }
    for (int j = prev + 1; j < k * n; ++j)
        s[static_cast<std::size_t>(j)] = static_cast<State>(rng.below(static_cast<std::uint64_t>(n)));
    return make_unchecked(k, n, std::move(s));
}

/// Uniform over the 2^n subsets of states.
inline std::vector<bool> sample_finals(int n, RandomSource& rng)
{
    std::vector<bool> finals(static_cast<std::size_t>(n));
    std::uint64_t word = 0;
    for (int i = 0; i < n; ++i) {
        if (i % 64 == 0)
            word = rng();
        finals[static_cast<std::size_t>(i)] = (word >> (i % 64)) & 1U;
    }
    return finals;
}

inline Dfa sample_dfa(const CountTable& table, RandomSource& rng)
{
    auto s = sample_structure(table, rng);
    return to_dfa(s, sample_finals(table.states(), rng));
}

/// Standard normal quantile: x with P(Z <= x) = p. Rational approximation
/// (relative error ~1e-9) polished by one Halley step against erfc.
inline double normal_quantile(double p)
{
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("normal_quantile needs p in (0, 1)");
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double low = 0.02425;
    double x = 0.0;
    if (p < low) {
        double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - low) {
        double q = p - 0.5;
        double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q
            / (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5])
            / ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(x * x / 2.0);
    return x - u / (1.0 + x * u / 2.0);
}

/// Upper-tail standard normal quantile for a significance level (2.3263... at 0.01).
inline double upper_quantile(double significance)
{
    return normal_quantile(1.0 - significance);
}

/// Acceptance limit v + 2 sqrt(v x_p) + (3/4) x_p^2 - 2/3 for an explicit x_p.
inline double chi_square_limit_for_quantile(double v, double x_p)
{
    if (v < 1.0)
        throw std::domain_error("chi-square limit needs v >= 1");
    return v + 2.0 * std::sqrt(v * x_p) + 0.75 * x_p * x_p - 2.0 / 3.0;
}

inline double chi_square_limit(double v, double significance)
{
    if (!(significance > 0.0 && significance < 1.0))
        throw std::domain_error("significance must lie in (0, 1)");
    return chi_square_limit_for_quantile(v, upper_quantile(significance));
}

struct ChiSquareReport {
    std::uint64_t cells = 0;
    std::uint64_t samples = 0;
    double statistic = 0.0;
    double limit = 0.0;
    double v = 0.0;
    double x_p = 0.0;
    double significance = 0.0;
    bool pass = false;

    std::string to_line() const
    {
        std::ostringstream out;
        out.precision(12);
        out << "cells=" << cells << " samples=" << samples << " v=" << static_cast<std::uint64_t>(v) << " x_p=" << x_p
            << " significance=" << significance << " statistic=" << statistic << " limit=" << limit
            << " result=" << (pass ? "pass" : "fail");
        return out.str();
    }
};

/// Largest space chi_square_test will hold one counter per string for.
inline constexpr std::uint64_t chi_square_max_cells = std::uint64_t{1} << 27;

/// Goodness of fit of `sampler` (a callable returning IcdfaString) against the
/// uniform distribution over all B(k, n) strings, bucketed by rank.
template <class Sampler>
ChiSquareReport chi_square_test(const CountTable& table, std::uint64_t samples, double significance, Sampler&& sampler)
{
    if (samples == 0)
        throw std::invalid_argument("chi-square test needs at least one sample");
    if (table.total() > chi_square_max_cells)
        throw std::length_error("chi-square test: B(k, n) = " + table.total().str() + " is too many cells to tally");
    if (table.total() < 2)
        throw std::invalid_argument("chi-square test needs at least two cells");
    const auto cells = static_cast<std::uint64_t>(table.total());
    std::vector<std::uint32_t> tally(cells, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        const IcdfaString s = sampler();
        ++tally[static_cast<std::uint64_t>(rank(s, table))];
    }
    const long double expected = static_cast<long double>(samples) / static_cast<long double>(cells);
    long double stat = 0.0L;
    for (std::uint32_t observed : tally) {
        long double d = static_cast<long double>(observed) - expected;
        stat += d * d / expected;
    }
    ChiSquareReport r;
    r.cells = cells;
    r.samples = samples;
    r.statistic = static_cast<double>(stat);
    r.v = static_cast<double>(cells - 1);
    r.significance = significance;
    r.x_p = upper_quantile(significance);
    r.limit = chi_square_limit_for_quantile(r.v, r.x_p);
    r.pass = r.statistic < r.limit;
    return r;
}

inline ChiSquareReport chi_square_test(const CountTable& table, std::uint64_t samples, double significance,
                                       RandomSource& rng)
{
    return chi_square_test(table, samples, significance, [&] { return sample_structure(table, rng); });
}

} // namespace icdfa

#endif
