#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "rds/ext_real.hpp"

using rds::ExtReal;

TEST_CASE("finite values round-trip through to_double")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> e(-300.0, 300.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = std::pow(10.0, e(rng)) * ((rng() & 1U) ? 1.0 : -1.0);
        const ExtReal z = ExtReal::finite(x);
        CHECK(z.to_double() == x);
        CHECK(z.sign() == (x > 0 ? 1 : -1));
        CHECK(std::fabs(z.significand()) >= 0.5);
        CHECK(std::fabs(z.significand()) < 1.0);
    }
    CHECK(ExtReal::finite(0.0).is_zero());
    CHECK(ExtReal::finite(0.0).sign() == 0);
    CHECK(ExtReal::finite(4.9e-324).to_double() == 4.9e-324);
}

TEST_CASE("non-finite doubles are rejected")
{
    CHECK_THROWS_AS(ExtReal::finite(std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(ExtReal::finite(std::nan("")), std::invalid_argument);
}

TEST_CASE("scaling past the double range is exact and reversible")
{
    const ExtReal one = ExtReal::finite(1.0);
    const ExtReal tiny = one.scaled(-100000);
    CHECK_FALSE(tiny.is_zero());
    CHECK(tiny.to_double() == 0.0);
    CHECK(tiny.scaled(100000) == one);
    CHECK(tiny.log_abs() == doctest::Approx(-100000 * std::log(2.0)));

    const ExtReal huge = ExtReal::finite(-3.0).scaled(5000);
    CHECK(huge.to_double() == -std::numeric_limits<double>::infinity());
    CHECK(huge.scaled(-5000).to_double() == -3.0);
    CHECK(huge.is_finite());
}

TEST_CASE("from_scaled normalizes, flushes and saturates")
{
    const ExtReal a = ExtReal::from_scaled(6.0, 3);
    CHECK(a.to_double() == 48.0);
    CHECK(a.significand() == 0.75);
    CHECK(a.exponent() == 6);
    CHECK(ExtReal::from_scaled(0.0, 12).is_zero());
    CHECK(ExtReal::from_scaled(1.0, ExtReal::kMinExponent - 10).is_zero());
    const ExtReal sat = ExtReal::from_scaled(-1.0, ExtReal::kMaxExponent + 10);
    CHECK(sat.is_escaped());
    CHECK(sat.sign() == -1);
}

TEST_CASE("compare_abs_pow2 is exact at the boundary")
{
    const ExtReal q = ExtReal::finite(0.25);
    CHECK(q.compare_abs_pow2(-2) == std::strong_ordering::equal);
    CHECK(q.compare_abs_pow2(-1) == std::strong_ordering::less);
    CHECK(q.compare_abs_pow2(-3) == std::strong_ordering::greater);
    CHECK((-q).compare_abs_pow2(-2) == std::strong_ordering::equal);
    const ExtReal above = ExtReal::finite(std::nextafter(0.25, 1.0));
    const ExtReal below = ExtReal::finite(std::nextafter(0.25, 0.0));
    CHECK(above.compare_abs_pow2(-2) == std::strong_ordering::greater);
    CHECK(below.compare_abs_pow2(-2) == std::strong_ordering::less);
    CHECK(ExtReal::finite(0.0).compare_abs_pow2(-5000) == std::strong_ordering::less);
    CHECK(ExtReal::escaped(-1).compare_abs_pow2(5000) == std::strong_ordering::greater);
    CHECK(ExtReal::finite(1.0).scaled(-3000).compare_abs_pow2(-3000) == std::strong_ordering::equal);
}

TEST_CASE("ordering places escaped values at the ends")
{
    const ExtReal lo = ExtReal::escaped(-1);
    const ExtReal hi = ExtReal::escaped(1);
    const ExtReal big = ExtReal::finite(1e300).scaled(100000);
    CHECK(lo < -big);
    CHECK(-big < ExtReal::finite(-1.0));
    CHECK(ExtReal::finite(-1.0) < ExtReal::finite(0.0));
    CHECK(ExtReal::finite(0.0) < ExtReal::finite(1.0).scaled(-5000));
    CHECK(big < hi);
    CHECK(-hi == lo);
    CHECK(lo.sign() == -1);
    CHECK(hi.to_double() == std::numeric_limits<double>::infinity());
}

TEST_CASE("subtract and log_abs_difference")
{
    const ExtReal a = ExtReal::finite(3.0);
    const ExtReal b = ExtReal::finite(1.0).scaled(-2000);
    CHECK(rds::subtract(a, ExtReal::finite(1.0)).to_double() == 2.0);
    CHECK(rds::subtract(b, b).is_zero());
    CHECK(rds::log_abs_difference(b, ExtReal::finite(0.0)) == doctest::Approx(-2000 * std::log(2.0)));
    CHECK(rds::log_abs_difference(a, a) == -std::numeric_limits<double>::infinity());
    CHECK(rds::subtract(ExtReal::escaped(1), a) == ExtReal::escaped(1));
    CHECK(rds::subtract(a, ExtReal::escaped(1)) == ExtReal::escaped(-1));
    CHECK(rds::subtract(ExtReal::escaped(1), ExtReal::escaped(-1)) == ExtReal::escaped(1));
    CHECK_THROWS_AS(rds::subtract(ExtReal::escaped(1), ExtReal::escaped(1)), std::domain_error);
    CHECK(rds::log_abs_difference(ExtReal::escaped(1), a) == std::numeric_limits<double>::infinity());
}

TEST_CASE("nearly_equal uses max(1, |a|, |b|) as the scale")
{
    CHECK(rds::nearly_equal(ExtReal::finite(1e6), ExtReal::finite(1e6 + 1e-4), 1e-9));
    CHECK_FALSE(rds::nearly_equal(ExtReal::finite(1e6), ExtReal::finite(1e6 + 1e-2), 1e-9));
    CHECK(rds::nearly_equal(ExtReal::finite(1e-12), ExtReal::finite(0.0), 1e-9));
    CHECK_FALSE(rds::nearly_equal(ExtReal::finite(1e-8), ExtReal::finite(0.0), 1e-9));
    CHECK(rds::nearly_equal(ExtReal::escaped(1), ExtReal::escaped(1), 1e-9));
    CHECK_FALSE(rds::nearly_equal(ExtReal::escaped(1), ExtReal::finite(1e300), 1e-9));
}

TEST_CASE("to_string")
{
    CHECK(ExtReal::finite(0.5).to_string() == "0.5");
    CHECK(ExtReal::finite(-2.25).to_string() == "-2.25");
    CHECK(ExtReal::escaped(1).to_string() == "escaped");
    CHECK(ExtReal::escaped(-1).to_string() == "-escaped");
    CHECK(ExtReal::finite(1.0).scaled(-5000).to_string() == "0.5p-4999");
}
