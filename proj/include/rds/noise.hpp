#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace rds {

/// One noise draw xi = 2^-exponent, exponent >= 2.
///
/// Only the dyadic exponent is stored; the value itself is never formed
/// here because it underflows for exponents past 1074.
struct NoiseAtom {
    std::int64_t exponent = 2;

    constexpr NoiseAtom() = default;
    /// Throws std::invalid_argument if k < 2.
    explicit NoiseAtom(std::int64_t k);

    friend constexpr auto operator<=>(const NoiseAtom&, const NoiseAtom&) = default;
};

/// Inverse-CDF map for the dyadic law: k = floor(1/u) + 1.
///
/// With u uniform on (0, 1] this gives P(k >= j) = 1/(j-1) for j >= 2,
/// i.e. P(xi = 2^-k) = 1/(k(k-1)). Throws std::domain_error for u outside
/// (0, 1] and std::out_of_range when u < 2^-62 (exponent beyond int64).
std::int64_t sample_exponent(double u);

/// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Top 53 bits of a word as a uniform on (0, 1]. Never returns 0.
constexpr double unit_interval_open_closed(std::uint64_t bits) noexcept
{
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Counter-based draw of the atom at `index` on the path keyed by `seed`.
/// Pure: the same (seed, index) always yields the same atom.
NoiseAtom noise_at(std::uint64_t seed, std::int64_t index) noexcept;

/// Seed of the independent path used by Monte Carlo sample `sample`.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t sample) noexcept;

/// Two-sided noise sequence omega = (xi_m), m in Z.
///
/// A path reads the counter-based stream of its seed through an affine
/// index map `m -> origin + m` (or `origin - m` once time-reversed). Shifts
/// only move the origin, so theta_r is exact and O(1). A path may also
/// carry a script: a finite run of fixed exponents that overrides the
/// seeded stream on the raw indices it covers.
class NoisePath {
public:
    NoisePath() = default;
    explicit NoisePath(std::uint64_t seed) noexcept : seed_(seed) {}

    /// Path whose raw indices first_index, first_index+1, ... read the given
    /// exponents; all other indices fall back to the seeded stream.
    static NoisePath scripted(std::uint64_t seed, std::int64_t first_index,
                              std::span<const std::int64_t> exponents);

    [[nodiscard]] NoiseAtom at(std::int64_t m) const;

    /// theta_r: `shift(r).at(m) == at(m + r)`.
    [[nodiscard]] NoisePath shift(std::int64_t r) const noexcept;

    /// Reflection `reversed().at(m) == at(1 - m)`; an involution. Pairs the
    /// forward steps 1..n with the backward steps 0, -1, ..., 1-n.
    [[nodiscard]] NoisePath reversed() const noexcept;

    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

    friend bool operator==(const NoisePath&, const NoisePath&) = default;

private:
    std::uint64_t seed_ = 0;
    std::int64_t origin_ = 0;
    bool reflected_ = false;
    std::int64_t script_first_ = 0;
    std::shared_ptr<const std::vector<std::int64_t>> script_;
};

inline NoisePath shift(const NoisePath& path, std::int64_t r) noexcept { return path.shift(r); }

}  // namespace rds
