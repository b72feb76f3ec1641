#include "rds/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rds {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kPathSalt = 0x6a09e667f3bcc909ULL;
constexpr std::uint64_t kSampleSalt = 0xbb67ae8584caa73bULL;
constexpr std::uint64_t kSampleStride = 0xd1b54a32d192ed03ULL;

}  // namespace

NoiseAtom::NoiseAtom(std::int64_t k) : exponent(k)
{
    if (k < 2) {
        throw std::invalid_argument("NoiseAtom: exponent must be >= 2, got " + std::to_string(k));
    }
}

std::int64_t sample_exponent(double u)
{
    if (!(u > 0.0 && u <= 1.0)) {
        throw std::domain_error("sample_exponent: u must lie in (0, 1]");
    }
    if (u < 0x1.0p-62) {
        throw std::out_of_range("sample_exponent: u below 2^-62 exceeds the exponent range");
    }
    return static_cast<std::int64_t>(std::floor(1.0 / u)) + 1;
}

NoiseAtom noise_at(std::uint64_t seed, std::int64_t index) noexcept
{
    const std::uint64_t key = mix64(seed ^ kPathSalt);
    const std::uint64_t bits = mix64(key + static_cast<std::uint64_t>(index) * kGolden);
    NoiseAtom atom;
    // u >= 2^-53, so the exponent always fits.
    atom.exponent = static_cast<std::int64_t>(1.0 / unit_interval_open_closed(bits)) + 1;
    return atom;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t sample) noexcept
{
    return mix64(mix64(seed + kSampleSalt) ^ (sample * kSampleStride + kGolden));
}

NoisePath NoisePath::scripted(std::uint64_t seed, std::int64_t first_index,
                              std::span<const std::int64_t> exponents)
{
    for (auto k : exponents) {
        (void)NoiseAtom(k);  // validates
    }
    NoisePath path(seed);
    path.script_first_ = first_index;
    path.script_ = std::make_shared<const std::vector<std::int64_t>>(exponents.begin(), exponents.end());
    return path;
}

NoiseAtom NoisePath::at(std::int64_t m) const
{
    const std::int64_t raw = reflected_ ? origin_ - m : origin_ + m;
    if (script_) {
        const std::int64_t rel = raw - script_first_;
        if (rel >= 0 && rel < static_cast<std::int64_t>(script_->size())) {
            NoiseAtom atom;
            atom.exponent = (*script_)[static_cast<std::size_t>(rel)];
            return atom;
        }
    }
    return noise_at(seed_, raw);
}

NoisePath NoisePath::shift(std::int64_t r) const noexcept
{
    NoisePath out = *this;
    out.origin_ = reflected_ ? origin_ - r : origin_ + r;
    return out;
}

NoisePath NoisePath::reversed() const noexcept
{
    // at'(m) = at(1 - m)
    NoisePath out = *this;
    out.reflected_ = !reflected_;
    out.origin_ = reflected_ ? origin_ - 1 : origin_ + 1;
    return out;
}

}  // namespace rds
