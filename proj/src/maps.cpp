#include "rds/maps.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rds {

namespace {

// 2 - xi, exact for k <= 52 and rounded to 2 beyond.
double two_minus_xi(NoiseAtom xi) noexcept
{
    return 2.0 - atom_value(xi);
}

void require_finite(const ExtReal& z, const char* what)
{
    if (z.is_escaped()) {
        throw std::domain_error(std::string(what) + ": derivative undefined at an escaped state");
    }
}

}  // namespace

std::string_view to_string(Family f) noexcept
{
    return f == Family::G ? "G" : "F";
}

Family parse_family(std::string_view text)
{
    if (text.size() == 1) {
        const char c = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
        if (c == 'G') return Family::G;
        if (c == 'F') return Family::F;
    }
    throw std::invalid_argument("unknown map family '" + std::string(text) + "' (expected G or F)");
}

double Slope::value() const noexcept
{
    return std::ldexp(1.0, static_cast<int>(std::clamp<std::int64_t>(log2, -4000, 4000)));
}

double atom_value(NoiseAtom xi) noexcept
{
    return std::ldexp(1.0, static_cast<int>(-std::min<std::int64_t>(xi.exponent, 4000)));
}

ExtReal g_eval(const ExtReal& z, NoiseAtom xi, double escape_threshold)
{
    if (z.is_escaped() || z.is_zero()) {
        return z;
    }
    const std::int64_t k = xi.exponent;
    if (z.compare_abs_pow2(1 - k) != std::strong_ordering::greater) {
        return z.scaled(-1);
    }
    // |z| 2^k = |m| 2^(e+k) with |m| in [0.5, 1).
    const std::int64_t shift = z.exponent() + k;
    if (shift > 1024) {
        return ExtReal::escaped(z.sign());
    }
    const double scaled = std::ldexp(std::fabs(z.significand()), static_cast<int>(shift));
    const double magnitude = scaled - two_minus_xi(xi);
    if (!(magnitude < escape_threshold)) {
        return ExtReal::escaped(z.sign());
    }
    return ExtReal::finite(z.sign() < 0 ? -magnitude : magnitude);
}

ExtReal g_eval(double z, NoiseAtom xi, double escape_threshold)
{
    return g_eval(ExtReal::finite(z), xi, escape_threshold);
}

Slope g_derivative(const ExtReal& z, NoiseAtom xi)
{
    require_finite(z, "g_derivative");
    if (z.compare_abs_pow2(1 - xi.exponent) != std::strong_ordering::greater) {
        return Slope{-1};
    }
    return Slope{xi.exponent};
}

Slope g_derivative(double z, NoiseAtom xi)
{
    return g_derivative(ExtReal::finite(z), xi);
}

ExtReal f_eval(const ExtReal& y, NoiseAtom xi)
{
    if (y.is_escaped() || y.is_zero()) {
        return y;
    }
    const std::int64_t k = xi.exponent;
    if (y.compare_abs_pow2(-k) != std::strong_ordering::greater) {
        return y.scaled(1);
    }
    if (y.exponent() > 1024) {
        // |y| dwarfs 2 - xi.
        return y.scaled(-k);
    }
    const double sum = std::fabs(y.to_double()) + two_minus_xi(xi);
    return ExtReal::from_scaled(y.sign() < 0 ? -sum : sum, -k);
}

double f_eval(double y, NoiseAtom xi)
{
    return f_eval(ExtReal::finite(y), xi).to_double();
}

Slope f_derivative(const ExtReal& y, NoiseAtom xi)
{
    require_finite(y, "f_derivative");
    if (y.compare_abs_pow2(-xi.exponent) != std::strong_ordering::greater) {
        return Slope{1};
    }
    return Slope{-xi.exponent};
}

Slope f_derivative(double y, NoiseAtom xi)
{
    return f_derivative(ExtReal::finite(y), xi);
}

ExtReal apply(Family family, const ExtReal& z, NoiseAtom xi)
{
    return family == Family::G ? g_eval(z, xi) : f_eval(z, xi);
}

Slope derivative(Family family, const ExtReal& z, NoiseAtom xi)
{
    return family == Family::G ? g_derivative(z, xi) : f_derivative(z, xi);
}

C1Seminorms c1_seminorms(NoiseAtom xi) noexcept
{
    // 2 xi <= 1/2 < 1, so the outer branch attains both sups at z = 1.
    C1Seminorms out;
    const ExtReal top = g_eval(ExtReal::finite(1.0), xi, std::numeric_limits<double>::infinity());
    out.sup_abs = top.to_double();
    out.sup_deriv_log = Slope{xi.exponent}.log();
    return out;
}

}  // namespace rds
