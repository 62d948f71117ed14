#include "exchlab/rng.hpp"

namespace exchlab {

namespace {
__extension__ typedef unsigned __int128 uint128;
}

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0x632be59bd9b4e019ULL;
} // namespace

RngStream::RngStream(std::uint64_t root_seed, std::uint64_t stream_id) noexcept
    : root_seed_(root_seed), stream_id_(stream_id),
      key_(mix64(root_seed ^ mix64(stream_id + kStreamSalt)))
{
}

std::uint64_t RngStream::next_u64() noexcept
{
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform01() noexcept
{
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RngStream::bounded(std::uint64_t range) noexcept
{
    const uint128 wide = static_cast<uint128>(next_u64()) * range;
    return static_cast<std::uint64_t>(wide >> 64);
}

RngStream RngStream::substream(std::uint64_t child) const noexcept
{
    return RngStream(root_seed_, mix64(stream_id_ ^ mix64(child + kGolden)));
}

std::uint64_t replica_stream_id(std::uint64_t cell, std::uint64_t replica) noexcept
{
    return mix64(mix64(cell + kStreamSalt) ^ replica);
}

} // namespace exchlab

#include "exchlab/error.hpp"

namespace exchlab {

std::size_t draw_discrete(std::span<const double> weights, RngStream& rng)
{
    double total = 0.0;
    std::size_t last_positive = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] < 0.0)
            throw InvalidArgument("draw_discrete: negative weight");
        if (weights[i] > 0.0) {
            total += weights[i];
            last_positive = i;
        }
    }
    if (last_positive == weights.size())
        throw InvalidArgument("draw_discrete: weights have no positive mass");
    const double u = rng.uniform01() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        acc += weights[i];
        if (weights[i] > 0.0 && u < acc)
            return i;
    }
    return last_positive;
}

} // namespace exchlab
