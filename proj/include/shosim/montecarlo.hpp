#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "shosim/random.hpp"

namespace shosim {

/// Samples per independently seeded block. Block b always draws from
/// make_substream(seed, b), so results do not depend on the worker count.
inline constexpr std::size_t samples_per_block = 1024;

/// First and second moments of a vector-valued sample, plus plain tallies
/// that only need a mean.
struct SampleMoments {
    std::size_t count = 0;
    std::vector<double> sum;   // per value
    std::vector<double> cross; // row-major value x value products
    std::vector<double> tally; // per tally

    SampleMoments() = default;
    SampleMoments(std::size_t values, std::size_t tallies)
        : sum(values, 0.0), cross(values * values, 0.0), tally(tallies, 0.0)
    {}

    [[nodiscard]] std::size_t width() const noexcept { return sum.size(); }

    void add(std::span<const double> values, std::span<const double> tallies)
    {
        const std::size_t m = sum.size();
        ++count;
        for (std::size_t i = 0; i < m; ++i) {
            sum[i] += values[i];
            for (std::size_t j = 0; j < m; ++j) cross[i * m + j] += values[i] * values[j];
        }
        for (std::size_t i = 0; i < tally.size(); ++i) tally[i] += tallies[i];
    }

    void merge(const SampleMoments& other)
    {
        count += other.count;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other.sum[i];
        for (std::size_t i = 0; i < cross.size(); ++i) cross[i] += other.cross[i];
        for (std::size_t i = 0; i < tally.size(); ++i) tally[i] += other.tally[i];
    }

    [[nodiscard]] double mean(std::size_t i) const { return sum[i] / static_cast<double>(count); }
    [[nodiscard]] double tally_mean(std::size_t i) const { return tally[i] / static_cast<double>(count); }

    /// Unbiased sample covariance of values i and j.
    [[nodiscard]] double covariance(std::size_t i, std::size_t j) const
    {
        if (count < 2) return 0.0;
        const auto n = static_cast<double>(count);
        const double c = (cross[i * width() + j] - sum[i] * sum[j] / n) / (n - 1.0);
        return i == j ? std::max(c, 0.0) : c;
    }

    /// Standard error of a linear combination sum_k coef[k] * mean(k).
    [[nodiscard]] double combination_std_error(std::span<const double> coef) const
    {
        if (count < 2) return 0.0;
        double var = 0.0;
        for (std::size_t i = 0; i < coef.size(); ++i) {
            if (coef[i] == 0.0) continue;
            for (std::size_t j = 0; j < coef.size(); ++j) {
                if (coef[j] != 0.0) var += coef[i] * coef[j] * covariance(i, j);
            }
        }
        return std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
    }

    [[nodiscard]] double std_error(std::size_t i) const
    {
        if (count < 2) return 0.0;
        return std::sqrt(covariance(i, i) / static_cast<double>(count));
    }
};

namespace detail {

inline SampleMoments reduce_pairwise(std::vector<SampleMoments>& blocks, std::size_t lo, std::size_t hi)
{
    if (hi - lo == 1) return blocks[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    SampleMoments left = reduce_pairwise(blocks, lo, mid);
    left.merge(reduce_pairwise(blocks, mid, hi));
    return left;
}

} // namespace detail

/// Runs `n_samples` draws of `sample(rng, values, tallies)` split into fixed
/// blocks, optionally across `threads` workers, and reduces the per-block
/// moments in a fixed binary-tree order. Output is a pure function of
/// (seed, n_samples) for any thread count.
template <class SampleFn>
SampleMoments run_blocks(std::uint64_t seed, std::size_t n_samples, std::size_t n_values,
                         std::size_t n_tallies, unsigned threads, SampleFn&& sample)
{
    if (n_samples < 1) {
        throw std::invalid_argument("run_blocks: n_samples must be >= 1");
    }
    const std::size_t n_blocks = (n_samples + samples_per_block - 1) / samples_per_block;
    std::vector<SampleMoments> blocks(n_blocks);

    const auto run_block = [&](std::size_t b) {
        RandomStream rng = make_substream(seed, b);
        SampleMoments acc(n_values, n_tallies);
        std::vector<double> values(n_values);
        std::vector<double> tallies(n_tallies);
        const std::size_t begin = b * samples_per_block;
        const std::size_t end = std::min(n_samples, begin + samples_per_block);
        for (std::size_t s = begin; s < end; ++s) {
            std::fill(values.begin(), values.end(), 0.0);
            std::fill(tallies.begin(), tallies.end(), 0.0);
            sample(rng, std::span<double>(values), std::span<double>(tallies));
            acc.add(values, tallies);
        }
        blocks[b] = std::move(acc);
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_blocks)));
    if (workers == 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t b = next++; b < n_blocks; b = next++) {
                    try {
                        run_block(b);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next = n_blocks;
                    }
                }
            });
        }
        pool.clear();
        if (failure) std::rethrow_exception(failure);
    }
    return detail::reduce_pairwise(blocks, 0, n_blocks);
}

} // namespace shosim
