#pragma once

#include <cstdint>
#include <optional>

namespace spurious {

/// Counter-free random stream addressed by (seed, stream_id).
///
/// The uniform engine is PCG64 (PCG-XSL-RR 128/64, O'Neill 2014). The seed
/// and the stream id are expanded through SplitMix64 into the 128-bit state
/// and the 128-bit odd increment, so every stream id selects a distinct
/// PCG sequence. Normal variates use the Marsaglia polar method; the second
/// variate of each accepted pair is cached and returned by the next call.
///
/// Two RngStream objects built from the same (seed, stream_id) produce the
/// same sequence bit for bit on any platform with IEEE doubles and a
/// correctly rounded std::log/std::sqrt.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Next raw 64-bit output.
    std::uint64_t next_u64() noexcept;

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform() noexcept;

    /// Standard normal draw (polar method).
    double standard_normal() noexcept;

private:
    __extension__ using u128 = unsigned __int128;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    u128 state_ = 0;
    u128 inc_ = 0;
    std::optional<double> spare_;
};

/// Free-function form used throughout the simulation code.
inline double standard_normal(RngStream& rng) noexcept { return rng.standard_normal(); }

/// SplitMix64 finaliser; exposed for deriving sub-seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace spurious
