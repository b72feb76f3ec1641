#include "rds/oracle.hpp"

#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace rds {

namespace {

std::int64_t mul_checked(std::int64_t a, std::int64_t b)
{
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("Rational: numerator/denominator overflow");
    }
    return out;
}

void require_k(std::int64_t k, const char* what)
{
    if (k < 2) {
        throw std::invalid_argument(std::string(what) + ": k must be >= 2");
    }
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den)
{
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
}

std::string Rational::to_string() const
{
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator*(const Rational& a, const Rational& b)
{
    // Cross-reduce first to keep intermediates small.
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    return Rational(mul_checked(a.num_ / g1, b.num_ / g2), mul_checked(a.den_ / g2, b.den_ / g1));
}

Rational operator+(const Rational& a, const Rational& b)
{
    const std::int64_t g = std::gcd(a.den_, b.den_);
    const std::int64_t den = mul_checked(a.den_ / g, b.den_);
    std::int64_t num = 0;
    if (__builtin_add_overflow(mul_checked(a.num_, b.den_ / g), mul_checked(b.num_, a.den_ / g), &num)) {
        throw std::overflow_error("Rational: numerator overflow");
    }
    return Rational(num, den);
}

Rational operator-(const Rational& a, const Rational& b)
{
    return a + Rational(-b.num_, b.den_);
}

Rational survival_bound(std::int64_t k, std::int64_t n)
{
    require_k(k, "survival_bound");
    if (n < 0) {
        throw std::invalid_argument("survival_bound: n must be >= 0");
    }
    return Rational(k, k + n);
}

double exact_exponent(Family family) noexcept
{
    return family == Family::G ? -std::numbers::ln2 : std::numbers::ln2;
}

double truncated_log_moment(std::optional<std::int64_t> truncation)
{
    if (!truncation) {
        return std::numeric_limits<double>::infinity();
    }
    require_k(*truncation, "truncated_log_moment");
    // Smallest terms first.
    double harmonic = 0.0;
    for (std::int64_t j = *truncation - 1; j >= 1; --j) {
        harmonic += 1.0 / static_cast<double>(j);
    }
    return std::numbers::ln2 * harmonic;
}

Rational tail_probability(std::int64_t k)
{
    require_k(k, "tail_probability");
    return Rational(1, k - 1);
}

Rational atom_mass(std::int64_t k)
{
    require_k(k, "atom_mass");
    return Rational(1, mul_checked(k, k - 1));
}

}  // namespace rds
