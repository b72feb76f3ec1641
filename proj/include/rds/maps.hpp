#pragma once

#include <cstdint>
#include <numbers>
#include <string_view>

#include "rds/ext_real.hpp"
#include "rds/noise.hpp"

namespace rds {

/// The two map families: G (expanding off a shrinking window around 0)
/// and its inverse F.
enum class Family : std::uint8_t { G, F };

constexpr Family inverse(Family f) noexcept { return f == Family::G ? Family::F : Family::G; }
std::string_view to_string(Family f) noexcept;
/// Accepts "G"/"F" (case-insensitive). Throws std::invalid_argument.
Family parse_family(std::string_view text);

/// Escape threshold for G orbits. Once |z| >= 1, |g(z)| >= 2|z| for every
/// atom, so crossing this level means divergence.
inline constexpr double kEscapeThreshold = 1e12;

/// A slope that is an exact power of two, kept as its base-2 exponent so
/// log|D| stays exact when 2^k overflows a double.
struct Slope {
    std::int64_t log2 = 0;

    [[nodiscard]] double value() const noexcept;
    [[nodiscard]] double log() const noexcept
    {
        return static_cast<double>(log2) * std::numbers::ln2;
    }
    friend constexpr bool operator==(const Slope&, const Slope&) = default;
};

/// xi as a double; 0 once the exponent passes the subnormal range.
double atom_value(NoiseAtom xi) noexcept;

/// g(z, xi): z/2 on |z| <= 2 xi, z/xi + xi - 2 above, z/xi - xi + 2 below.
///
/// Division by xi is an exact binary-exponent shift. Results with
/// |g| >= escape_threshold come back escaped with the sign of z; pass
/// +inf to disable the threshold (values past the double range still
/// escape). Escaped inputs are returned unchanged.
ExtReal g_eval(const ExtReal& z, NoiseAtom xi, double escape_threshold = kEscapeThreshold);
ExtReal g_eval(double z, NoiseAtom xi, double escape_threshold = kEscapeThreshold);

/// 1/2 on |z| <= 2 xi (kinks belong to the inner branch), 2^k outside.
/// Throws std::domain_error on escaped input.
Slope g_derivative(const ExtReal& z, NoiseAtom xi);
Slope g_derivative(double z, NoiseAtom xi);

/// f = g^-1: 2y on |y| <= xi, xi (y + 2 - xi) above, xi (y - 2 + xi) below.
/// The ExtReal form never underflows; the double form may round to 0.
ExtReal f_eval(const ExtReal& y, NoiseAtom xi);
double f_eval(double y, NoiseAtom xi);

/// 2 on |y| <= xi, 2^-k outside. Throws std::domain_error on escaped input.
Slope f_derivative(const ExtReal& y, NoiseAtom xi);
Slope f_derivative(double y, NoiseAtom xi);

ExtReal apply(Family family, const ExtReal& z, NoiseAtom xi);
Slope derivative(Family family, const ExtReal& z, NoiseAtom xi);

/// Size of g(., xi) on [-1, 1]: sup|g| = g(1, xi) (may be +inf as a double)
/// and log sup|Dg| = k ln 2.
struct C1Seminorms {
    double sup_abs = 0.0;
    double sup_deriv_log = 0.0;
};
C1Seminorms c1_seminorms(NoiseAtom xi) noexcept;

}  // namespace rds
