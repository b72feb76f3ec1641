#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rds/maps.hpp"

/// Closed-form reference values for the two example systems. Everything
/// here is deterministic; bounds and probabilities are exact rationals.
namespace rds {

/// Reduced fraction with positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    /// Throws std::invalid_argument on a zero denominator.
    Rational(std::int64_t num, std::int64_t den);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] double value() const noexcept
    {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    [[nodiscard]] std::string to_string() const;

    /// Throws std::overflow_error if the reduced result leaves int64.
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator+(const Rational& a, const Rational& b);
    friend constexpr bool operator==(const Rational&, const Rational&) = default;

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// k/(k+n): the bound on P(|Z_n| < 1) for G orbits with |Z_0| > 2^-k.
Rational survival_bound(std::int64_t k, std::int64_t n);

/// Lyapunov exponent at the fixed point 0: -ln 2 for G, +ln 2 for F.
double exact_exponent(Family family) noexcept;

/// ln 2 * H_{K0-1} = E[ln(1/xi) 1{k <= K0}]; +inf when no truncation is given.
double truncated_log_moment(std::optional<std::int64_t> truncation);

/// P(exponent >= k) = 1/(k-1).
Rational tail_probability(std::int64_t k);

/// P(exponent == k) = 1/(k(k-1)).
Rational atom_mass(std::int64_t k);

}  // namespace rds
