#pragma once

#include <cstdint>
#include <random>

namespace shosim {

/// Random stream handed to every stochastic operation. Streams are never
/// shared between workers; each one is derived from (seed, index).
using RandomStream = std::mt19937_64;

namespace detail {

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Deterministic substream for block `index` of a run seeded with `seed`.
inline RandomStream make_substream(std::uint64_t seed, std::uint64_t index)
{
    const std::uint64_t a = detail::mix64(seed);
    const std::uint64_t b = detail::mix64(a ^ detail::mix64(index + 0x632be59bd9b4e019ULL));
    std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    return RandomStream{seq};
}

} // namespace shosim
