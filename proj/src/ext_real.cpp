#include "rds/ext_real.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace rds {

namespace {

// ldexp takes an int; anything past this is already 0 or inf.
int clamp_shift(std::int64_t shift) noexcept
{
    return static_cast<int>(std::clamp<std::int64_t>(shift, -4000, 4000));
}

}  // namespace

ExtReal ExtReal::finite(double value)
{
    if (!std::isfinite(value)) {
        throw std::invalid_argument("ExtReal::finite: value must be finite");
    }
    return from_scaled(value, 0);
}

ExtReal ExtReal::from_scaled(double mantissa, std::int64_t exponent)
{
    ExtReal out;
    if (mantissa == 0.0) {
        return out;
    }
    int e = 0;
    const double sig = std::frexp(mantissa, &e);
    const std::int64_t total = exponent + e;
    if (total < kMinExponent) {
        return out;
    }
    if (total > kMaxExponent) {
        return escaped(sig > 0 ? 1 : -1);
    }
    out.significand_ = sig;
    out.exponent_ = total;
    return out;
}

ExtReal ExtReal::escaped(int sign)
{
    ExtReal out;
    out.escaped_ = true;
    out.significand_ = sign < 0 ? -1.0 : 1.0;
    return out;
}

int ExtReal::sign() const noexcept
{
    if (significand_ > 0.0) return 1;
    if (significand_ < 0.0) return -1;
    return 0;
}

double ExtReal::to_double() const noexcept
{
    if (escaped_) {
        return significand_ * std::numeric_limits<double>::infinity();
    }
    return std::ldexp(significand_, clamp_shift(exponent_));
}

double ExtReal::log_abs() const noexcept
{
    if (escaped_) return std::numeric_limits<double>::infinity();
    if (significand_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::fabs(significand_)) + static_cast<double>(exponent_) * std::numbers::ln2;
}

ExtReal ExtReal::scaled(std::int64_t shift) const noexcept
{
    if (escaped_ || significand_ == 0.0) {
        return *this;
    }
    ExtReal out = *this;
    const std::int64_t total = exponent_ + shift;
    if (total < kMinExponent) {
        return ExtReal{};
    }
    if (total > kMaxExponent) {
        return escaped(sign());
    }
    out.exponent_ = total;
    return out;
}

ExtReal ExtReal::abs() const noexcept
{
    ExtReal out = *this;
    out.significand_ = std::fabs(significand_);
    return out;
}

ExtReal ExtReal::operator-() const noexcept
{
    ExtReal out = *this;
    if (significand_ != 0.0) {
        out.significand_ = -significand_;
    }
    return out;
}

std::strong_ordering ExtReal::compare_abs_pow2(std::int64_t power) const noexcept
{
    if (escaped_) return std::strong_ordering::greater;
    if (significand_ == 0.0) return std::strong_ordering::less;
    // |x| = m * 2^e with m in [0.5, 1), so 2^(e-1) <= |x| < 2^e.
    if (exponent_ - 1 > power) return std::strong_ordering::greater;
    if (exponent_ <= power) return std::strong_ordering::less;
    return std::fabs(significand_) == 0.5 ? std::strong_ordering::equal
                                          : std::strong_ordering::greater;
}

std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) noexcept
{
    auto rank = [](const ExtReal& x) {
        if (x.escaped_) return x.significand_ < 0 ? -2 : 2;
        return x.sign();
    };
    const int ra = rank(a);
    const int rb = rank(b);
    if (ra != rb) return ra <=> rb;
    if (a.escaped_ || ra == 0) return std::strong_ordering::equal;
    // Same sign, both finite and nonzero.
    std::strong_ordering mag = a.exponent_ <=> b.exponent_;
    if (mag == std::strong_ordering::equal) {
        const double ma = std::fabs(a.significand_);
        const double mb = std::fabs(b.significand_);
        mag = ma < mb ? std::strong_ordering::less
            : ma > mb ? std::strong_ordering::greater
                      : std::strong_ordering::equal;
    }
    if (ra > 0) return mag;
    return 0 <=> mag;
}

std::string ExtReal::to_string() const
{
    if (escaped_) {
        return significand_ < 0 ? "-escaped" : "escaped";
    }
    if (exponent_ >= -1020 && exponent_ <= 1024) {
        char buf[64];
        auto res = std::to_chars(buf, buf + sizeof(buf), to_double());
        return std::string(buf, res.ptr);
    }
    // Outside double range: print as mantissa*2^exponent.
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), significand_);
    return std::string(buf, res.ptr) + "p" + std::to_string(exponent_);
}

ExtReal subtract(const ExtReal& a, const ExtReal& b)
{
    if (a.is_escaped() && b.is_escaped()) {
        if (a.sign() == b.sign()) {
            throw std::domain_error("subtract: difference of two escaped values with equal sign");
        }
        return a;
    }
    if (a.is_escaped()) return a;
    if (b.is_escaped()) return -b;
    if (b.is_zero()) return a;
    if (a.is_zero()) return -b;
    const std::int64_t top = std::max(a.exponent(), b.exponent());
    const double da = std::ldexp(a.significand(), clamp_shift(a.exponent() - top));
    const double db = std::ldexp(b.significand(), clamp_shift(b.exponent() - top));
    return ExtReal::from_scaled(da - db, top);
}

double log_abs_difference(const ExtReal& a, const ExtReal& b)
{
    if (a == b) return -std::numeric_limits<double>::infinity();
    if (a.is_escaped() || b.is_escaped()) return std::numeric_limits<double>::infinity();
    return subtract(a, b).log_abs();
}

bool nearly_equal(const ExtReal& a, const ExtReal& b, double rel_tol)
{
    if (a == b) return true;
    if (a.is_escaped() || b.is_escaped()) return false;
    const double scale = std::max({0.0, a.log_abs(), b.log_abs()});
    return log_abs_difference(a, b) <= std::log(rel_tol) + scale;
}

}  // namespace rds
