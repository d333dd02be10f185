#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

#include "actuation/core.hpp"

namespace actuation {

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Hash a root seed and a sequence of counters into a stream key.
constexpr std::uint64_t derive_key(std::uint64_t root, std::initializer_list<std::uint64_t> parts) noexcept {
    std::uint64_t h = mix64(root);
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p + 0x632be59bd9b4e019ULL));
    return h;
}

/// Counter-based generator: output k is mix64(key + k * gamma), so every
/// draw is a pure function of (key, k) and streams never share state.
/// Satisfies UniformRandomBitGenerator.
class CounterRng {
public:
    using result_type = std::uint64_t;

    constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        ++counter_;
        return mix64(key_ + counter_ * 0x9e3779b97f4a7c15ULL);
    }

    /// Uniform on [0, 1) with 53 random bits.
    constexpr double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    constexpr std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Standard normal draws from a counter stream.
class NormalSource {
public:
    explicit NormalSource(CounterRng rng) noexcept : rng_(rng) {}

    double operator()() { return dist_(rng_); }

private:
    CounterRng rng_;
    std::normal_distribution<double> dist_;
};

/// Uniform index in [0, n) by multiply-shift.
inline std::size_t uniform_index(CounterRng& rng, std::size_t n) noexcept {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::size_t>((static_cast<u128>(rng()) * n) >> 64);
}

/// Purposes of the independent streams a simulation draws from.
enum class Stream : std::uint64_t {
    init = 1,
    contact = 2,
    teacher = 3,
    production = 4,
    weights = 5,
    replicate = 6,
};

/// Per-group root seed. Group A uses the run seed itself, so a single-group
/// run seeded with `group_stream_seed(s, Group::B)` reproduces group B's
/// streams of a two-group run seeded with s.
constexpr std::uint64_t group_stream_seed(std::uint64_t seed, Group g) noexcept {
    return g == Group::A ? seed : mix64(seed ^ 0x5bd1e9955bd1e995ULL);
}

/// Stream for one agent slot (index within its group) at one generation.
constexpr CounterRng agent_stream(std::uint64_t seed, Group g, std::uint64_t generation, std::uint64_t index,
                                  Stream purpose) noexcept {
    return CounterRng(derive_key(group_stream_seed(seed, g),
                                 {generation, index, static_cast<std::uint64_t>(purpose)}));
}

/// Population-wide stream for one generation (used at the generation barrier).
constexpr CounterRng generation_stream(std::uint64_t seed, std::uint64_t generation, Stream purpose) noexcept {
    return CounterRng(derive_key(seed, {generation, ~std::uint64_t{0}, static_cast<std::uint64_t>(purpose)}));
}

}  // namespace actuation
