// Copyright 2026 The orthoreflect Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace orthoreflect {

/// SplitMix64 output mixer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Counter-based stream: the k-th output is mix64(key + k * gamma). Streams
/// are keyed by (seed, stream index), so trial i draws the same numbers no
/// matter which thread runs it or in what order.
///
/// Satisfies UniformRandomBitGenerator. Variates are produced by inverse
/// transform so results are identical across standard libraries.
class CounterRng {
public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix64(mix64(seed) ^ mix64(stream * kGamma + 0x2545F4914F6CDD1DULL)))
    {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    constexpr result_type operator()() noexcept { return mix64(key_ + (++counter_) * kGamma); }

    /// Uniform on the open interval (0, 1).
    double uniform_open() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Exponential with the given rate; strictly positive.
    double exponential(double rate) noexcept { return -std::log(uniform_open()) / rate; }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace orthoreflect
