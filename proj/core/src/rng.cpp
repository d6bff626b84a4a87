#include "spurious/rng.hpp"

#include <cmath>

namespace spurious {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr u128 make_u128(std::uint64_t hi, std::uint64_t lo) { return (static_cast<u128>(hi) << 64) | lo; }

// Default PCG 128-bit LCG multiplier.
constexpr u128 kMultiplier =
    make_u128(2549297995355413924ULL, 4865540595714422341ULL);

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    const std::uint64_t s0 = splitmix64(seed);
    const std::uint64_t s1 = splitmix64(s0 ^ stream_id);
    const std::uint64_t q0 = splitmix64(stream_id ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t q1 = splitmix64(q0 ^ seed);
    const u128 init_state = make_u128(s0, s1);
    const u128 init_seq = make_u128(q0, q1);

    // pcg_setseq_128_srandom_r
    state_ = 0;
    inc_ = (init_seq << 1) | 1u;
    next_u64();
    state_ += init_state;
    next_u64();
}

std::uint64_t RngStream::next_u64() noexcept {
    const u128 old = state_;
    state_ = old * kMultiplier + inc_;
    // XSL-RR output
    const auto xored = static_cast<std::uint64_t>(old >> 64) ^ static_cast<std::uint64_t>(old);
    const auto rot = static_cast<unsigned>(old >> 122);
    return (xored >> rot) | (xored << ((64u - rot) & 63u));
}

double RngStream::uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::standard_normal() noexcept {
    if (spare_) {
        const double v = *spare_;
        spare_.reset();
        return v;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    return u * f;
}

}  // namespace spurious
