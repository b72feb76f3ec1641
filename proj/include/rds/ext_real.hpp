#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace rds {

/// State value on the extended real line.
///
/// A finite value is stored as `significand * 2^exponent` with the
/// significand in [0.5, 1) (or exactly 0) and a 64-bit binary exponent, so
/// repeated halving or multiplication by 2^-k never underflows. An escaped
/// value records only its sign; it stands for a trajectory that has left
/// every bounded region.
class ExtReal {
public:
    /// Binary exponents below this flush the value to zero.
    static constexpr std::int64_t kMinExponent = -(std::int64_t{1} << 62);
    /// Binary exponents above this saturate to an escaped value.
    static constexpr std::int64_t kMaxExponent = std::int64_t{1} << 62;

    constexpr ExtReal() = default;

    /// Wraps a finite double. Throws std::invalid_argument for inf/nan.
    static ExtReal finite(double value);
    /// Builds `mantissa * 2^exponent`, renormalizing.
    static ExtReal from_scaled(double mantissa, std::int64_t exponent);
    static ExtReal escaped(int sign);

    [[nodiscard]] bool is_escaped() const noexcept { return escaped_; }
    [[nodiscard]] bool is_finite() const noexcept { return !escaped_; }
    [[nodiscard]] bool is_zero() const noexcept { return !escaped_ && significand_ == 0.0; }
    [[nodiscard]] int sign() const noexcept;

    [[nodiscard]] double significand() const noexcept { return significand_; }
    [[nodiscard]] std::int64_t exponent() const noexcept { return exponent_; }

    /// Nearest double; escaped values map to +-inf, tiny values may underflow to 0.
    [[nodiscard]] double to_double() const noexcept;
    /// Natural log of |x|: -inf for zero, +inf for escaped values.
    [[nodiscard]] double log_abs() const noexcept;

    /// Multiplies by 2^shift exactly.
    [[nodiscard]] ExtReal scaled(std::int64_t shift) const noexcept;
    [[nodiscard]] ExtReal abs() const noexcept;
    ExtReal operator-() const noexcept;

    /// Three-way comparison of |x| against 2^power, exact. Escaped values
    /// compare greater than every power of two.
    [[nodiscard]] std::strong_ordering compare_abs_pow2(std::int64_t power) const noexcept;

    friend bool operator==(const ExtReal&, const ExtReal&) noexcept = default;
    friend std::strong_ordering operator<=>(const ExtReal& a, const ExtReal& b) noexcept;

    /// Decimal text, or "escaped" / "-escaped".
    [[nodiscard]] std::string to_string() const;

private:
    double significand_ = 0.0;
    std::int64_t exponent_ = 0;
    bool escaped_ = false;
};

/// a - b. An escaped operand dominates a finite one; two escaped operands
/// of the same sign throw std::domain_error.
ExtReal subtract(const ExtReal& a, const ExtReal& b);

/// Natural log of |a - b|. Identical values give -inf; any other pair
/// involving an escaped value gives +inf.
double log_abs_difference(const ExtReal& a, const ExtReal& b);

/// |a - b| <= rel_tol * max(1, |a|, |b|), with escaped values equal only to
/// escaped values of the same sign.
bool nearly_equal(const ExtReal& a, const ExtReal& b, double rel_tol);

}  // namespace rds
