#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rds/oracle.hpp"

using rds::Rational;

TEST_CASE("Rational basics")
{
    CHECK(Rational(4, 1004) == Rational(1, 251));
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0, 1));
    CHECK(Rational(4, 1004).to_string() == "1/251");
    CHECK(Rational(1, 3) * Rational(3, 4) == Rational(1, 4));
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 3) - Rational(1, 2) == Rational(-1, 6));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    const Rational big(std::int64_t{1} << 40, 3);
    CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("survival bound examples")
{
    CHECK(rds::survival_bound(4, 0) == Rational(1, 1));
    CHECK(rds::survival_bound(4, 1000) == Rational(4, 1004));
    CHECK(rds::survival_bound(4, 10) == Rational(2, 7));
    CHECK_THROWS_AS(rds::survival_bound(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(rds::survival_bound(4, -1), std::invalid_argument);
}

TEST_CASE("survival bound equals the telescoping product term by term")
{
    for (std::int64_t k = 2; k <= 10; ++k) {
        Rational product(1, 1);
        for (std::int64_t m = 1; m <= 10000; ++m) {
            product = product * Rational(k + m - 1, k + m);
            if (!(product == rds::survival_bound(k, m))) {
                FAIL("mismatch at k=" << k << " n=" << m);
            }
        }
    }
}

TEST_CASE("survival bound is the product of conditional tail ratios")
{
    // P(exponent >= j + 1 | exponent >= j) = tail(j + 1) / tail(j) = (j - 1)/j.
    for (std::int64_t k = 2; k <= 10; ++k) {
        Rational product(1, 1);
        for (std::int64_t j = k + 1; j <= k + 200; ++j) {
            product = product * (rds::tail_probability(j + 1) * Rational(j - 1, 1));
        }
        CHECK(product == rds::survival_bound(k, 200));
    }
}

TEST_CASE("exact exponents")
{
    CHECK(rds::exact_exponent(rds::Family::G) == -0.6931471805599453);
    CHECK(rds::exact_exponent(rds::Family::F) == 0.6931471805599453);
    CHECK(rds::exact_exponent(rds::Family::G) + rds::exact_exponent(rds::Family::F) == 0.0);
}

TEST_CASE("truncated log moment")
{
    CHECK(rds::truncated_log_moment(2) == std::numbers::ln2);
    // ln 2 * H_19, H_19 = 275295799/77597520 (exact fraction, evaluated independently).
    CHECK(rds::truncated_log_moment(20) == doctest::Approx(2.45910574070985015).epsilon(1e-15));
    CHECK(rds::truncated_log_moment(std::nullopt) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(rds::truncated_log_moment(1), std::invalid_argument);
}

TEST_CASE("truncated log moment grows without bound")
{
    std::vector<std::int64_t> grid;
    for (std::int64_t k = 2; k <= 300; ++k) grid.push_back(k);
    for (double k = 450; k < 1e6; k *= 1.5) grid.push_back(static_cast<std::int64_t>(k));
    grid.push_back(999999);
    grid.push_back(1000000);

    long double brute = 0.0L;
    std::int64_t summed_to = 1;  // brute = H_{summed_to - 1}
    double prev = 0.0;
    for (auto k0 : grid) {
        for (; summed_to < k0; ++summed_to) brute += 1.0L / static_cast<long double>(summed_to);
        const double v = rds::truncated_log_moment(k0);
        CAPTURE(k0);
        REQUIRE(v > prev);
        REQUIRE(v == doctest::Approx(static_cast<double>(std::numbers::ln2_v<long double> * brute)).epsilon(1e-13));
        prev = v;
    }
    // ln 2 (ln K0 + gamma) is the asymptote; it passes any fixed level.
    CHECK(prev > std::numbers::ln2 * std::log(999999.0));
}

TEST_CASE("tail probabilities and atom masses")
{
    CHECK(rds::tail_probability(2) == Rational(1, 1));
    CHECK(rds::tail_probability(11) == Rational(1, 10));
    CHECK(rds::atom_mass(2) == Rational(1, 2));
    CHECK_THROWS_AS(rds::tail_probability(1), std::invalid_argument);
    CHECK_THROWS_AS(rds::atom_mass(0), std::invalid_argument);
    Rational partial(0, 1);
    for (std::int64_t k = 2; k <= 10000; ++k) {
        REQUIRE(rds::tail_probability(k) - rds::tail_probability(k + 1) == rds::atom_mass(k));
        partial = partial + rds::atom_mass(k);
        REQUIRE(partial == Rational(k - 1, k));
    }
    CHECK(1.0 - partial.value() == doctest::Approx(1e-4));
}
