#pragma once

#include <cstdint>
#include <limits>

namespace exchlab {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based random stream.
 *
 * Draw i of stream (root_seed, stream_id) is
 *
 *     mix64(key + (i + 1) * 0x9e3779b97f4a7c15),
 *     key = mix64(root_seed ^ mix64(stream_id + 0x632be59bd9b4e019))
 *
 * so every output is a pure function of (root_seed, stream_id, i). Distinct
 * stream ids produce distinct keys through two rounds of the SplitMix64
 * finalizer; this is the splitting function used for per-replica substreams.
 *
 * Satisfies UniformRandomBitGenerator.
 */
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t root_seed, std::uint64_t stream_id = 0) noexcept;

    std::uint64_t next_u64() noexcept;
    result_type operator()() noexcept { return next_u64(); }
    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    /// Uniform on [0, 1) with 53 random bits. One draw.
    double uniform01() noexcept;

    /// Uniform integer in [0, range) by 128-bit multiply-shift. One draw,
    /// never rejects. Bias is at most range / 2^64. range must be positive.
    std::uint64_t bounded(std::uint64_t range) noexcept;

    /// Independent child stream (same root seed, derived stream id).
    RngStream substream(std::uint64_t child) const noexcept;

    std::uint64_t root_seed() const noexcept { return root_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    /// Number of 64-bit words drawn so far.
    std::uint64_t draws() const noexcept { return counter_; }

private:
    std::uint64_t root_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Stream id for replica `replica` of experiment cell `cell`.
std::uint64_t replica_stream_id(std::uint64_t cell, std::uint64_t replica) noexcept;

} // namespace exchlab

#include <cstddef>
#include <span>

namespace exchlab {

/// Index drawn with probability proportional to `weights` (non-negative,
/// positive total). Inverse CDF on one uniform draw.
std::size_t draw_discrete(std::span<const double> weights, RngStream& rng);

} // namespace exchlab
