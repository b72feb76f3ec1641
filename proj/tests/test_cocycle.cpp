#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "rds/cocycle.hpp"

using rds::ExtReal;
using rds::Family;
using rds::NoiseAtom;
using rds::NoisePath;

TEST_CASE("the fixed point orbit")
{
    const NoisePath path(4);
    for (Family fam : {Family::G, Family::F}) {
        const auto orbit = rds::forward_orbit(fam, path, 0.0, 200);
        CHECK(orbit.steps() == 200);
        for (const auto& z : orbit.states) CHECK(z.is_zero());
        CHECK(orbit.log2_deriv_sum == (fam == Family::G ? -200 : 200));
        CHECK_FALSE(orbit.escaped_at.has_value());
    }
    CHECK(rds::forward_orbit(Family::G, path, 0.0, 10).log_deriv_sum() ==
          doctest::Approx(10 * std::log(0.5)));
}

TEST_CASE("zero steps is the identity")
{
    const NoisePath path(4);
    const auto orbit = rds::forward_orbit(Family::G, path, 0.37, 0);
    REQUIRE(orbit.states.size() == 1);
    CHECK(orbit.states[0].to_double() == 0.37);
    CHECK(orbit.log2_deriv_sum == 0);
    CHECK(rds::pullback_state(Family::F, path, 0.37, 0).to_double() == 0.37);
    CHECK_THROWS_AS(rds::forward_orbit(Family::G, path, 0.1, -1), std::invalid_argument);
    CHECK_THROWS_AS(rds::pullback_state(Family::G, path, 0.1, -1), std::invalid_argument);
}

TEST_CASE("G orbits from 1 at least double every step until escape")
{
    for (std::uint64_t s = 0; s < 200; ++s) {
        const NoisePath path(rds::sample_seed(31, s));
        const auto orbit = rds::forward_orbit(Family::G, path, 1.0, 60);
        for (std::size_t m = 0; m < orbit.states.size(); ++m) {
            const ExtReal& z = orbit.states[m];
            if (z.is_escaped()) {
                CHECK(z.sign() == 1);
                REQUIRE(orbit.escaped_at.has_value());
                CHECK(static_cast<std::int64_t>(m) >= *orbit.escaped_at);
                continue;
            }
            CHECK(z.compare_abs_pow2(static_cast<std::int64_t>(m)) != std::strong_ordering::less);
        }
        // 2^40 > 10^12, so escape happens by step 40.
        REQUIRE(orbit.escaped_at.has_value());
        CHECK(*orbit.escaped_at <= 40);
    }
}

TEST_CASE("escaped orbits stay escaped and stop accumulating slopes")
{
    const std::vector<std::int64_t> ks{2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2};
    const NoisePath path = NoisePath::scripted(0, 1, ks);
    const auto orbit = rds::forward_orbit(Family::G, path, -1.0, 23);
    REQUIRE(orbit.escaped_at.has_value());
    for (auto m = *orbit.escaped_at; m <= 23; ++m) {
        CHECK(orbit.states[static_cast<std::size_t>(m)] == ExtReal::escaped(-1));
    }
    CHECK(orbit.log2_deriv_sum == 2 * *orbit.escaped_at);
}

TEST_CASE("pullback reads indices -n+1 .. 0")
{
    const NoisePath path(17);
    for (std::int64_t n : {1, 2, 5, 30}) {
        ExtReal z = ExtReal::finite(0.3);
        for (std::int64_t i = -n + 1; i <= 0; ++i) {
            z = rds::f_eval(z, path.at(i));
        }
        CHECK(rds::pullback_state(Family::F, path, 0.3, n) == z);
        const auto orbit = rds::forward_orbit(Family::F, path.shift(-n), 0.3, n);
        CHECK(orbit.states.back() == z);
    }
    CHECK(rds::pullback_state(Family::G, path, 0.0, 40).is_zero());
    CHECK(rds::pullback_state(Family::F, path, 0.0, 40).is_zero());
}

TEST_CASE("cocycle law on random cases")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> len(0, 60);
    std::uniform_real_distribution<double> e(-6.0, 2.0);
    for (int i = 0; i < 10000; ++i) {
        const NoisePath path(rng());
        const double z0 = std::pow(10.0, e(rng)) * ((rng() & 1U) ? 1 : -1);
        const auto s = len(rng);
        const auto t = len(rng);
        const Family fam = (i & 1) ? Family::G : Family::F;
        REQUIRE(rds::cocycle_check(fam, path, z0, s, t));
        REQUIRE(rds::cocycle_check(fam, path, z0, 0, t));
        REQUIRE(rds::cocycle_check(fam, path, z0, s, 0));
    }
    CHECK_THROWS_AS(rds::cocycle_check(Family::G, NoisePath(1), 0.1, -1, 2), std::invalid_argument);
}

TEST_CASE("cocycle unrolled for s = t = 1")
{
    const NoisePath path(8);
    const ExtReal two_step = rds::g_eval(rds::g_eval(1.0, path.at(1)), path.at(2));
    CHECK(rds::forward_state(Family::G, path, ExtReal::finite(1.0), 2) == two_step);
    CHECK(rds::cocycle_check(Family::G, path, 1.0, 1, 1));
}

TEST_CASE("skew product iteration reproduces the forward orbit")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const NoisePath path(seed);
        for (Family fam : {Family::G, Family::F}) {
            const auto orbit = rds::forward_orbit(fam, path, 0.02, 50);
            NoisePath p = path;
            ExtReal z = ExtReal::finite(0.02);
            for (int m = 1; m <= 50; ++m) {
                auto [next_path, next_z] = rds::skew_step(fam, p, z);
                CHECK(next_path.at(0) == p.at(1));
                p = next_path;
                z = next_z;
                REQUIRE(z == orbit.states[static_cast<std::size_t>(m)]);
            }
        }
    }
    CHECK(rds::skew_step(Family::G, NoisePath(1), ExtReal()).second.is_zero());
}

TEST_CASE("f compositions invert g compositions in reverse order")
{
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<std::int64_t> len(1, 30);
    std::uniform_real_distribution<double> e(-6.0, 1.0);
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
        const NoisePath path(rng());
        const auto n = len(rng);
        const double x = std::pow(10.0, e(rng)) * ((rng() & 1U) ? 1 : -1);
        ExtReal y = ExtReal::finite(x);
        for (std::int64_t m = 1; m <= n && !y.is_escaped(); ++m) {
            y = rds::g_eval(y, path.at(m), kInf);
        }
        if (y.is_escaped()) continue;
        // Backward steps use atoms at 0, -1, ..., 1-n; shifting by n lines
        // them up with n, n-1, ..., 1.
        const ExtReal back = rds::backward_orbit(Family::G, path.shift(n), y, n).back();
        REQUIRE(rds::nearly_equal(back, ExtReal::finite(x), 1e-9));
        ++checked;
    }
    CHECK(checked > 1000);
}

TEST_CASE("order is transported by forward and pullback maps")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 2000; ++i) {
        const NoisePath path(rng());
        double a = u(rng);
        double b = u(rng);
        if (a > b) std::swap(a, b);
        for (Family fam : {Family::G, Family::F}) {
            const ExtReal fa = rds::forward_state(fam, path, ExtReal::finite(a), 25);
            const ExtReal fb = rds::forward_state(fam, path, ExtReal::finite(b), 25);
            REQUIRE(fa <= fb);
            REQUIRE(rds::pullback_state(fam, path, a, 25) <= rds::pullback_state(fam, path, b, 25));
        }
    }
}

TEST_CASE("backward orbit of the fixed point")
{
    const auto xs = rds::backward_orbit(Family::F, NoisePath(2), 0.0, 100);
    CHECK(xs.size() == 101);
    for (const auto& x : xs) CHECK(x.is_zero());
    CHECK_THROWS_AS(rds::backward_orbit(Family::G, NoisePath(2), 0.1, -3), std::invalid_argument);
}
